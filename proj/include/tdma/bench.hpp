#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdma/algorithms.hpp"
#include "tdma/instance.hpp"
#include "tdma/oracle.hpp"

namespace tdma {

/// Random traffic: each cell present with probability `density`, weight uniform in [weight_min, weight_max].
struct GenConfig {
    std::size_t senders = 50;
    std::size_t receivers = 50;
    Weight weight_min = 1;
    Weight weight_max = 200;
    double density = 1.0;
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on a bad config. Deterministic per seed.
TrafficInstance generate(const GenConfig& config, Weight setup_delay = 0);

struct RatioRecord {
    Algorithm algorithm = Algorithm::Mga;
    std::size_t instance = 0;
    Weight d = 0;
    Weight cost = 0;
    Weight lower_bound = 0;
    std::optional<Weight> oracle_cost;

    [[nodiscard]] double ratio() const { return static_cast<double>(cost) / static_cast<double>(lower_bound); }
};

struct AggregateRecord {
    Algorithm algorithm = Algorithm::Mga;
    Weight d = 0;
    double mean_ratio = 0.0;
    /// Worst record as an exact fraction.
    Weight max_cost = 0;
    Weight max_lower_bound = 1;

    [[nodiscard]] double max_ratio() const {
        return static_cast<double>(max_cost) / static_cast<double>(max_lower_bound);
    }
};

struct ExperimentOptions {
    /// Also solve each instance exactly and check LB <= optimum <= cost.
    bool with_oracle = false;
    OracleLimits oracle_limits;
};

struct ExperimentResult {
    /// Ordered by (d, instance, algorithm in the requested order).
    std::vector<RatioRecord> records;
    /// Ordered by (algorithm in the requested order, d).
    std::vector<AggregateRecord> aggregates;
};

/// Carries the (algorithm, seed, d) triple of the run that failed.
class ExperimentError : public std::runtime_error {
  public:
    ExperimentError(Algorithm algorithm, std::uint64_t seed, Weight d, const std::string& what);

    [[nodiscard]] Algorithm algorithm() const { return algorithm_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] Weight d() const { return d_; }

  private:
    Algorithm algorithm_;
    std::uint64_t seed_;
    Weight d_;
};

/**
 * Runs every algorithm on `trials` generated instances for every d.
 *
 * Instance i uses seed `generator.seed + i`. Algorithms whose frames do not
 * depend on d are scheduled once per instance and re-costed per d. Every
 * schedule is validated against its instance.
 */
ExperimentResult run_experiment(const GenConfig& generator, std::span<const Weight> d_values,
                                std::span<const Algorithm> algorithms, std::size_t trials,
                                const ExperimentOptions& options = {});

std::vector<AggregateRecord> aggregate(std::span<const RatioRecord> records, std::span<const Algorithm> algorithms);

/**
 * Instance where every perfect matching holds exactly one heavy message.
 *
 * Rows r_0..r_{k-1} and columns c_0..c_{k-1} carry the heavy diagonal (r_j, c_j).
 * Each r_j also sends `light` to columns v_0..v_{k-2}; rows u_0..u_{k-2} send
 * `light` to every c_j. The graph is k-regular with W = heavy + (k-1) * light,
 * and since the u rows can only use c columns, only one heavy edge fits per frame.
 */
TrafficInstance adversarial_family(std::size_t delta, Weight heavy, Weight light, Weight setup_delay = 0);

/// cost / lower_bound rounded half-up to 6 decimals, from exact integers.
std::string format_ratio(Weight cost, Weight lower_bound);

/// Header `algorithm,instance,d,cost,lower_bound,ratio`, LF line endings.
std::string records_csv(std::span<const RatioRecord> records);
/// Header `algorithm,d,mean_ratio,max_ratio`, LF line endings.
std::string aggregates_csv(std::span<const AggregateRecord> aggregates);

}  // namespace tdma
