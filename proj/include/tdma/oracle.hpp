#pragma once

#include <cstddef>
#include <stdexcept>

#include "tdma/instance.hpp"
#include "tdma/schedule.hpp"

namespace tdma {

/// Size guard for the exhaustive search. Checked before searching.
struct OracleLimits {
    std::size_t max_nodes = 3;
    Weight max_total_weight = 24;
    /// Depth cap. Every frame sends at least one unit, so this never binds while it is >= the total weight.
    std::size_t max_frames = 24;
};

class OracleLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    Weight cost = 0;
    Schedule schedule;
};

/**
 * Exact minimum makespan over all preemptive schedules with integer amounts.
 *
 * Depth-first branch and bound over residual matrices. Each step picks a maximal
 * matching of the positive residual cells and a duration t, and sends
 * min(t, residual) on every matched pair. Branches whose paid cost plus the
 * residual lower bound cannot beat the incumbent are cut; a transposition table
 * skips residuals already reached at no greater cost.
 *
 * Throws OracleLimitError if the instance exceeds `limits`.
 */
OracleResult optimal_cost(const TrafficInstance& instance, const OracleLimits& limits = {});

}  // namespace tdma
