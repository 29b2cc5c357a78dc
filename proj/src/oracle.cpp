#include "tdma/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

namespace tdma {

namespace {

struct ResidualHash {
    std::size_t operator()(const std::vector<Weight>& cells) const {
        std::size_t h = 1469598103934665603ULL;
        for (const auto w : cells) {
            h = (h ^ static_cast<std::size_t>(w)) * 1099511628211ULL;
        }
        return h;
    }
};

class Search {
  public:
    Search(const TrafficInstance& instance, const OracleLimits& limits)
        : n_(instance.senders()), m_(instance.receivers()), delay_(instance.setup_delay()),
          max_frames_(limits.max_frames) {
        // Incumbent: every positive cell in its own frame.
        best_cost_ = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < m_; ++j) {
                if (const auto w = instance.weight(i, j); w > 0) {
                    best_.frames.push_back(Frame{{Entry{i, j, w}}});
                    best_cost_ += w + delay_;
                }
            }
        }
    }

    OracleResult run(std::vector<Weight> residual) {
        explore(residual, 0);
        return {best_cost_, best_};
    }

  private:
    void explore(std::vector<Weight>& residual, Weight paid) {
        if (std::all_of(residual.begin(), residual.end(), [](Weight w) { return w == 0; })) {
            if (paid < best_cost_) {
                best_cost_ = paid;
                best_ = path_;
            }
            return;
        }
        if (path_.frames.size() >= max_frames_) {
            return;
        }
        if (paid + residual_lower_bound(residual, n_, m_, delay_) >= best_cost_) {
            return;
        }
        if (const auto it = seen_.find(residual); it != seen_.end() && it->second <= paid) {
            return;
        }
        seen_[residual] = paid;

        for (const auto& matching : maximal_matchings(residual)) {
            Weight longest = 0;
            for (const auto cell : matching) {
                longest = std::max(longest, residual[cell]);
            }
            for (Weight t = longest; t >= 1; --t) {
                Frame frame;
                for (const auto cell : matching) {
                    const auto amount = std::min(t, residual[cell]);
                    residual[cell] -= amount;
                    frame.entries.push_back({cell / m_, cell % m_, amount});
                }
                path_.frames.push_back(std::move(frame));
                explore(residual, paid + t + delay_);
                for (const auto& e : path_.frames.back().entries) {
                    residual[e.sender * m_ + e.receiver] += e.amount;
                }
                path_.frames.pop_back();
            }
        }
    }

    std::vector<std::vector<std::size_t>> maximal_matchings(const std::vector<Weight>& residual) const {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> chosen;
        std::vector<bool> row_used(n_, false);
        std::vector<bool> col_used(m_, false);
        std::function<void(std::size_t)> recurse = [&](std::size_t i) {
            if (i == n_) {
                for (std::size_t r = 0; r < n_; ++r) {
                    for (std::size_t c = 0; c < m_; ++c) {
                        if (!row_used[r] && !col_used[c] && residual[r * m_ + c] > 0) {
                            return;
                        }
                    }
                }
                if (!chosen.empty()) {
                    out.push_back(chosen);
                }
                return;
            }
            for (std::size_t j = 0; j < m_; ++j) {
                if (!col_used[j] && residual[i * m_ + j] > 0) {
                    col_used[j] = row_used[i] = true;
                    chosen.push_back(i * m_ + j);
                    recurse(i + 1);
                    chosen.pop_back();
                    col_used[j] = row_used[i] = false;
                }
            }
            recurse(i + 1);
        };
        recurse(0);
        return out;
    }

    std::size_t n_;
    std::size_t m_;
    Weight delay_;
    std::size_t max_frames_;
    Weight best_cost_ = 0;
    Schedule best_;
    Schedule path_;
    std::unordered_map<std::vector<Weight>, Weight, ResidualHash> seen_;
};

}  // namespace

OracleResult optimal_cost(const TrafficInstance& instance, const OracleLimits& limits) {
    if (instance.senders() > limits.max_nodes || instance.receivers() > limits.max_nodes) {
        throw OracleLimitError("instance is " + std::to_string(instance.senders()) + "x" +
                               std::to_string(instance.receivers()) + ", oracle limit is " +
                               std::to_string(limits.max_nodes) + " nodes per side");
    }
    const auto total = std::accumulate(instance.weights().begin(), instance.weights().end(), Weight{0});
    if (total > limits.max_total_weight) {
        throw OracleLimitError("total weight " + std::to_string(total) + " exceeds oracle limit " +
                               std::to_string(limits.max_total_weight));
    }
    return Search(instance, limits).run({instance.weights().begin(), instance.weights().end()});
}

}  // namespace tdma
