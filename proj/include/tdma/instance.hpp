#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tdma {

/// Transmission times and the setup delay are exact integers in abstract time units.
using Weight = std::int64_t;

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Traffic between n senders and m receivers plus the per-frame setup delay d.
 *
 * Cell (i, j) is the time needed to move all data from sender i to receiver j.
 * Zero cells are absent edges. Immutable after construction.
 */
class TrafficInstance {
  public:
    /// `weights` is row-major n*m. Throws std::invalid_argument on a broken invariant.
    TrafficInstance(std::size_t senders, std::size_t receivers, std::vector<Weight> weights, Weight setup_delay);

    static TrafficInstance from_rows(const std::vector<std::vector<Weight>>& rows, Weight setup_delay);

    [[nodiscard]] std::size_t senders() const { return senders_; }
    [[nodiscard]] std::size_t receivers() const { return receivers_; }
    [[nodiscard]] Weight setup_delay() const { return setup_delay_; }
    [[nodiscard]] Weight weight(std::size_t sender, std::size_t receiver) const {
        return weights_[sender * receivers_ + receiver];
    }
    [[nodiscard]] std::span<const Weight> weights() const { return weights_; }
    [[nodiscard]] std::vector<std::vector<Weight>> rows() const;

    /// Number of strictly positive cells.
    [[nodiscard]] std::size_t edge_count() const;

    [[nodiscard]] TrafficInstance with_setup_delay(Weight setup_delay) const;

    friend bool operator==(const TrafficInstance&, const TrafficInstance&) = default;

  private:
    std::size_t senders_;
    std::size_t receivers_;
    std::vector<Weight> weights_;
    Weight setup_delay_;
};

struct InstanceStats {
    /// Maximum number of positive cells on any row or column.
    std::int64_t delta = 0;
    /// Maximum row or column sum.
    Weight workload = 0;
    /// workload + d * delta.
    Weight lower_bound = 0;

    friend bool operator==(const InstanceStats&, const InstanceStats&) = default;
};

InstanceStats compute_stats(const TrafficInstance& instance);

/// Lower bound for an arbitrary nonnegative residual matrix (may be all zero).
Weight residual_lower_bound(std::span<const Weight> cells, std::size_t senders, std::size_t receivers,
                            Weight setup_delay);

/// Header line `n m d`, then n rows of m integers. Throws ParseError.
TrafficInstance parse_instance(std::string_view text);
std::string format_instance(const TrafficInstance& instance);

TrafficInstance read_instance_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace tdma
