#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "tdma/instance.hpp"
#include "tdma/matching.hpp"
#include "tdma/schedule.hpp"

namespace tdma {

enum class Algorithm { Mga, Imga, Gwa, Apbs };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Mga, Algorithm::Imga, Algorithm::Gwa, Algorithm::Apbs};

std::string_view algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Whether the frame structure an algorithm emits depends on d. Only A-PBS rounds by d + 1.
bool depends_on_setup_delay(Algorithm algorithm);

/// Raised when an algorithm produces a schedule that breaks its own contract.
class AlgorithmError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// How each traffic cell is cut into pieces no larger than `chunk`.
struct SplitPlan {
    /// ceil(W / delta).
    Weight chunk = 0;
    /// Row-major per cell; empty for zero cells.
    std::vector<std::vector<Weight>> pieces;
    std::size_t receivers = 0;

    [[nodiscard]] const std::vector<Weight>& pieces_of(std::size_t sender, std::size_t receiver) const {
        return pieces[sender * receivers + receiver];
    }
};

struct AlgorithmResult {
    Schedule schedule;
    Weight cost = 0;
    std::size_t frames = 0;
    InstanceStats stats;
};

/// Full chunks first, then the remainder (omitted when zero).
std::pair<MultiGraph, SplitPlan> split_edges(const TrafficInstance& instance);

/// Split, regularize once, peel perfect matchings until no edge is left.
AlgorithmResult mga(const TrafficInstance& instance);

/// Per round: regularize the residual graph, weight-sorted prefix matching, send min(residual, chunk) per matched edge.
AlgorithmResult imga(const TrafficInstance& instance);

/// Delta weight-sorted prefix matchings of the regularized unsplit graph; every edge is sent whole.
AlgorithmResult gwa(const TrafficInstance& instance);

/// Preempts to multiples of d + 1 and peels unit matchings; consecutive identical frames are merged.
AlgorithmResult apbs(const TrafficInstance& instance);

AlgorithmResult run_algorithm(Algorithm algorithm, const TrafficInstance& instance);

}  // namespace tdma
