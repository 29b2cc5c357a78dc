#include "tdma/algorithms.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace tdma {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

Weight ceil_div(Weight a, Weight b) { return (a + b - 1) / b; }

Frame frame_from_matching(const MultiGraph& graph, std::span<const std::size_t> matching) {
    Frame frame;
    for (const auto e : matching) {
        const auto& edge = graph.edges[e];
        if (!edge.is_padding() && edge.weight > 0) {
            frame.entries.push_back({edge.origin->sender, edge.origin->receiver, edge.weight});
        }
    }
    std::sort(frame.entries.begin(), frame.entries.end());
    return frame;
}

AlgorithmResult finish(std::string_view name, const TrafficInstance& instance, const InstanceStats& stats,
                       Schedule schedule) {
    const auto report = validate(schedule, instance);
    if (!report.passed()) {
        throw AlgorithmError(std::string(name) + " produced an infeasible schedule: " +
                             report.violations.front().describe());
    }
    AlgorithmResult result;
    result.cost = makespan(schedule, instance.setup_delay());
    result.frames = schedule.frame_count();
    result.schedule = std::move(schedule);
    result.stats = stats;
    return result;
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Mga:
            return "mga";
        case Algorithm::Imga:
            return "imga";
        case Algorithm::Gwa:
            return "gwa";
        case Algorithm::Apbs:
            return "apbs";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (const auto a : kAllAlgorithms) {
        if (algorithm_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

bool depends_on_setup_delay(Algorithm algorithm) { return algorithm == Algorithm::Apbs; }

std::pair<MultiGraph, SplitPlan> split_edges(const TrafficInstance& instance) {
    const auto stats = compute_stats(instance);
    SplitPlan plan;
    plan.chunk = ceil_div(stats.workload, stats.delta);
    plan.receivers = instance.receivers();
    plan.pieces.resize(instance.senders() * instance.receivers());

    MultiGraph graph{instance.senders(), instance.receivers(), {}};
    for (std::size_t i = 0; i < instance.senders(); ++i) {
        for (std::size_t j = 0; j < instance.receivers(); ++j) {
            const auto w = instance.weight(i, j);
            if (w == 0) {
                continue;
            }
            auto& pieces = plan.pieces[i * instance.receivers() + j];
            for (Weight k = 0; k < w / plan.chunk; ++k) {
                pieces.push_back(plan.chunk);
            }
            if (w % plan.chunk != 0) {
                pieces.push_back(w % plan.chunk);
            }
            for (std::size_t k = 0; k < pieces.size(); ++k) {
                graph.edges.push_back({i, j, pieces[k], EdgeOrigin{i, j}, k});
            }
        }
    }
    return {std::move(graph), std::move(plan)};
}

AlgorithmResult mga(const TrafficInstance& instance) {
    const auto stats = compute_stats(instance);
    auto graph = regularize(split_edges(instance).first);

    Schedule schedule;
    while (!graph.edges.empty()) {
        const auto matching = perfect_matching(graph);
        if (auto frame = frame_from_matching(graph, matching); !frame.entries.empty()) {
            schedule.frames.push_back(std::move(frame));
        }
        graph = remove_edges(graph, matching);
    }

    auto result = finish("mga", instance, stats, std::move(schedule));
    if (result.cost > (stats.delta + 1) * stats.lower_bound) {
        throw AlgorithmError("mga cost " + std::to_string(result.cost) + " exceeds (delta+1)*LB");
    }
    return result;
}

AlgorithmResult imga(const TrafficInstance& instance) {
    const auto stats = compute_stats(instance);
    const auto chunk = ceil_div(stats.workload, stats.delta);
    const auto n = instance.senders();
    const auto m = instance.receivers();
    std::vector<Weight> residual(instance.weights().begin(), instance.weights().end());

    Schedule schedule;
    while (std::any_of(residual.begin(), residual.end(), [](Weight w) { return w > 0; })) {
        MultiGraph current{n, m, {}};
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (const auto w = residual[i * m + j]; w > 0) {
                    current.edges.push_back({i, j, w, EdgeOrigin{i, j}, 0});
                }
            }
        }
        const auto regular = regularize(current);
        const auto matching = sorted_prefix_matching(regular);

        Frame frame;
        for (const auto e : matching) {
            const auto& edge = regular.edges[e];
            if (edge.is_padding()) {
                continue;
            }
            auto& left = residual[edge.origin->sender * m + edge.origin->receiver];
            const auto amount = std::min(left, chunk);
            left -= amount;
            frame.entries.push_back({edge.origin->sender, edge.origin->receiver, amount});
        }
        if (frame.entries.empty()) {
            throw AlgorithmError("imga matched only padding edges");
        }
        std::sort(frame.entries.begin(), frame.entries.end());
        schedule.frames.push_back(std::move(frame));
    }
    return finish("imga", instance, stats, std::move(schedule));
}

AlgorithmResult gwa(const TrafficInstance& instance) {
    const auto stats = compute_stats(instance);
    auto graph = regularize(graph_from_instance(instance));

    Schedule schedule;
    for (std::int64_t round = 0; round < stats.delta; ++round) {
        const auto matching = sorted_prefix_matching(graph);
        if (auto frame = frame_from_matching(graph, matching); !frame.entries.empty()) {
            schedule.frames.push_back(std::move(frame));
        }
        graph = remove_edges(graph, matching);
    }
    if (!graph.edges.empty()) {
        throw AlgorithmError("gwa left edges after delta matchings");
    }
    return finish("gwa", instance, stats, std::move(schedule));
}

namespace {

// Unit pieces of one node pair are interchangeable, so the unit multigraph is
// kept as per-pair counts: `real` units carry traffic, `pad` units come from
// regularization. A perfect matching is reused while every matched pair still
// has a unit of the kind it is using; that run of identical unit frames is
// emitted as one block.
class UnitPeeler {
  public:
    UnitPeeler(const TrafficInstance& instance)
        : n_(instance.senders()), m_(instance.receivers()), side_(std::max(n_, m_)),
          unit_(instance.setup_delay() + 1), real_(side_ * side_, 0), pad_(side_ * side_, 0),
          residual_(side_ * side_, 0), match_left_(side_, kNone), match_right_(side_, kNone), visited_(side_, 0) {
        std::vector<Weight> left_units(side_, 0);
        std::vector<Weight> right_units(side_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < m_; ++j) {
                const auto w = instance.weight(i, j);
                residual_[i * side_ + j] = w;
                real_[i * side_ + j] = ceil_div(w, unit_);
                left_units[i] += real_[i * side_ + j];
                right_units[j] += real_[i * side_ + j];
            }
        }
        const auto target = std::max(*std::max_element(left_units.begin(), left_units.end()),
                                     *std::max_element(right_units.begin(), right_units.end()));
        remaining_ = target * static_cast<Weight>(side_);
        std::size_t i = 0;
        std::size_t j = 0;
        while (true) {
            while (i < side_ && left_units[i] == target) {
                ++i;
            }
            while (j < side_ && right_units[j] == target) {
                ++j;
            }
            if (i == side_ || j == side_) {
                break;
            }
            const auto count = std::min(target - left_units[i], target - right_units[j]);
            pad_[i * side_ + j] += count;
            left_units[i] += count;
            right_units[j] += count;
        }
    }

    Schedule run() {
        Schedule blocks;
        while (remaining_ > 0) {
            for (std::size_t u = 0; u < side_; ++u) {
                if (match_left_[u] == kNone) {
                    ++stamp_;
                    if (!augment(u)) {
                        throw AlgorithmError("apbs unit multigraph lost its perfect matching");
                    }
                }
            }
            Weight copies = std::numeric_limits<Weight>::max();
            for (std::size_t u = 0; u < side_; ++u) {
                const auto cell = u * side_ + match_left_[u];
                copies = std::min(copies, real_[cell] > 0 ? real_[cell] : pad_[cell]);
            }
            Frame frame;
            for (std::size_t u = 0; u < side_; ++u) {
                const auto v = match_left_[u];
                const auto cell = u * side_ + v;
                if (real_[cell] > 0) {
                    const auto amount = std::min(residual_[cell], copies * unit_);
                    residual_[cell] -= amount;
                    real_[cell] -= copies;
                    frame.entries.push_back({u, v, amount});
                } else {
                    pad_[cell] -= copies;
                }
                if (real_[cell] + pad_[cell] == 0) {
                    match_left_[u] = kNone;
                    match_right_[v] = kNone;
                }
            }
            remaining_ -= copies * static_cast<Weight>(side_);
            if (!frame.entries.empty()) {
                blocks.frames.push_back(std::move(frame));
            }
        }
        return merge_identical_neighbours(std::move(blocks));
    }

  private:
    bool augment(std::size_t u) {
        for (std::size_t v = 0; v < side_; ++v) {
            const auto cell = u * side_ + v;
            if (real_[cell] + pad_[cell] == 0 || visited_[v] == stamp_) {
                continue;
            }
            visited_[v] = stamp_;
            if (match_right_[v] == kNone || augment(match_right_[v])) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        return false;
    }

    static bool same_pairs(const Frame& a, const Frame& b) {
        return std::equal(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
                          [](const Entry& x, const Entry& y) { return x.sender == y.sender && x.receiver == y.receiver; });
    }

    static Schedule merge_identical_neighbours(Schedule blocks) {
        Schedule merged;
        for (auto& frame : blocks.frames) {
            if (!merged.frames.empty() && same_pairs(merged.frames.back(), frame)) {
                auto& last = merged.frames.back();
                for (std::size_t k = 0; k < frame.entries.size(); ++k) {
                    last.entries[k].amount += frame.entries[k].amount;
                }
            } else {
                merged.frames.push_back(std::move(frame));
            }
        }
        return merged;
    }

    std::size_t n_;
    std::size_t m_;
    std::size_t side_;
    Weight unit_;
    std::vector<Weight> real_;
    std::vector<Weight> pad_;
    std::vector<Weight> residual_;
    std::vector<std::size_t> match_left_;
    std::vector<std::size_t> match_right_;
    std::vector<std::size_t> visited_;
    std::size_t stamp_ = 0;
    Weight remaining_ = 0;
};

}  // namespace

AlgorithmResult apbs(const TrafficInstance& instance) {
    const auto stats = compute_stats(instance);
    return finish("apbs", instance, stats, UnitPeeler(instance).run());
}

AlgorithmResult run_algorithm(Algorithm algorithm, const TrafficInstance& instance) {
    switch (algorithm) {
        case Algorithm::Mga:
            return mga(instance);
        case Algorithm::Imga:
            return imga(instance);
        case Algorithm::Gwa:
            return gwa(instance);
        case Algorithm::Apbs:
            return apbs(instance);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace tdma
