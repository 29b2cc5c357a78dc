#include <doctest.h>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "tdma/algorithms.hpp"
#include "tdma/oracle.hpp"

using namespace tdma;

namespace {

// Memoized DP over residual matrices that lets every matched pair send any
// amount in [1, residual]. A looser move set than the oracle's, same optimum.
class FreeAmountSolver {
  public:
    explicit FreeAmountSolver(const TrafficInstance& inst)
        : n_(inst.senders()), m_(inst.receivers()), d_(inst.setup_delay()) {}

    Weight solve(std::vector<Weight> residual) {
        if (std::all_of(residual.begin(), residual.end(), [](Weight w) { return w == 0; })) {
            return 0;
        }
        if (const auto it = memo_.find(residual); it != memo_.end()) {
            return it->second;
        }
        Weight best = std::numeric_limits<Weight>::max();
        std::vector<std::size_t> cells;
        std::vector<bool> col_used(m_, false);
        enumerate(residual, 0, cells, col_used, best);
        memo_[residual] = best;
        return best;
    }

  private:
    void enumerate(std::vector<Weight>& residual, std::size_t row, std::vector<std::size_t>& cells,
                   std::vector<bool>& col_used, Weight& best) {
        if (row == n_) {
            if (!cells.empty()) {
                std::vector<Weight> amounts(cells.size(), 1);
                assign(residual, cells, amounts, 0, best);
            }
            return;
        }
        enumerate(residual, row + 1, cells, col_used, best);
        for (std::size_t j = 0; j < m_; ++j) {
            if (!col_used[j] && residual[row * m_ + j] > 0) {
                col_used[j] = true;
                cells.push_back(row * m_ + j);
                enumerate(residual, row + 1, cells, col_used, best);
                cells.pop_back();
                col_used[j] = false;
            }
        }
    }

    void assign(std::vector<Weight>& residual, const std::vector<std::size_t>& cells, std::vector<Weight>& amounts,
                std::size_t k, Weight& best) {
        if (k == cells.size()) {
            auto next = residual;
            for (std::size_t e = 0; e < cells.size(); ++e) {
                next[cells[e]] -= amounts[e];
            }
            const auto duration = *std::max_element(amounts.begin(), amounts.end());
            best = std::min(best, duration + d_ + solve(std::move(next)));
            return;
        }
        for (Weight a = 1; a <= residual[cells[k]]; ++a) {
            amounts[k] = a;
            assign(residual, cells, amounts, k + 1, best);
        }
    }

    std::size_t n_;
    std::size_t m_;
    Weight d_;
    std::map<std::vector<Weight>, Weight> memo_;
};

Weight free_amount_optimum(const TrafficInstance& inst) {
    return FreeAmountSolver(inst).solve({inst.weights().begin(), inst.weights().end()});
}

// Redraws until the total weight is within the default oracle limit.
TrafficInstance small_instance(std::mt19937_64& rng, Weight max_weight, Weight d) {
    for (;;) {
        auto inst = testing::random_instance(rng, 1, 3, max_weight, d);
        const auto w = inst.weights();
        if (std::accumulate(w.begin(), w.end(), Weight{0}) <= OracleLimits{}.max_total_weight) {
            return inst;
        }
    }
}

}  // namespace

TEST_CASE("oracle on forced instances") {
    for (Weight w : {1, 4, 6}) {
        for (Weight d : {0, 3}) {
            CHECK(optimal_cost(TrafficInstance::from_rows({{w}}, d)).cost == w + d);
            CHECK(optimal_cost(TrafficInstance::from_rows({{w, w}, {w, w}}, d)).cost == 2 * w + 2 * d);
        }
    }
}

TEST_CASE("oracle schedules validate and match their cost") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = small_instance(rng, 4, trial % 4);
        const auto result = optimal_cost(inst);
        CHECK(validate(result.schedule, inst).passed());
        CHECK(makespan(result.schedule, inst.setup_delay()) == result.cost);
    }
}

TEST_CASE("oracle agrees with an unrestricted-amount search") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 80; ++trial) {
        const auto inst = testing::random_instance(rng, 1, 2, 3, trial % 3);
        CHECK(optimal_cost(inst).cost == free_amount_optimum(inst));
    }
    const auto wide = TrafficInstance::from_rows({{2, 1, 0}, {1, 0, 2}}, 1);
    CHECK(optimal_cost(wide).cost == free_amount_optimum(wide));
}

TEST_CASE("oracle sits between LB and every heuristic") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = small_instance(rng, 5, trial % 6);
        const auto opt = optimal_cost(inst).cost;
        CHECK(opt >= compute_stats(inst).lower_bound);
        for (const auto a : kAllAlgorithms) {
            CHECK(opt <= run_algorithm(a, inst).cost);
        }
    }
}

TEST_CASE("oracle cost doubles when weights and delay double") {
    std::mt19937_64 rng(53);
    const OracleLimits roomy{3, 48, 48};
    for (int trial = 0; trial < 25; ++trial) {
        const auto inst = testing::random_instance(rng, 1, 2, 4, trial % 3);
        std::vector<Weight> doubled(inst.weights().begin(), inst.weights().end());
        for (auto& c : doubled) {
            c *= 2;
        }
        const TrafficInstance big(inst.senders(), inst.receivers(), doubled, 2 * inst.setup_delay());
        CHECK(optimal_cost(big, roomy).cost == 2 * optimal_cost(inst).cost);
    }
}

TEST_CASE("oracle on the 3x3 example with raised limits") {
    const OracleLimits roomy{3, 100, 100};
    const auto result = optimal_cost(testing::example_3x3(), roomy);
    CHECK(result.cost == 42);
    CHECK(validate(result.schedule, testing::example_3x3()).passed());
}

TEST_CASE("oracle refuses oversized inputs") {
    CHECK_THROWS_AS(optimal_cost(testing::example_3x3()), OracleLimitError);
    CHECK_THROWS_AS(optimal_cost(TrafficInstance::from_rows({{1, 1, 1, 1}}, 0)), OracleLimitError);
    CHECK_NOTHROW(optimal_cost(TrafficInstance::from_rows({{8, 8}, {8, 0}}, 0)));
}
