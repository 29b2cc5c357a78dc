#include "tdma/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tdma {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_regular(const MultiGraph& graph) {
    if (graph.edges.empty() || !graph.is_regular()) {
        throw std::invalid_argument("perfect matching requested on a non-regular multigraph");
    }
}

std::vector<std::size_t> matching_from_left(const std::vector<std::size_t>& match_left) {
    std::vector<std::size_t> out;
    out.reserve(match_left.size());
    for (const auto e : match_left) {
        if (e != kNone) {
            out.push_back(e);
        }
    }
    return out;
}

class KuhnMatcher {
  public:
    explicit KuhnMatcher(const MultiGraph& graph)
        : graph_(graph), adjacency_(graph.left_count), match_left_(graph.left_count, kNone),
          match_right_(graph.right_count, kNone), visited_(graph.right_count, 0) {
        for (std::size_t e = 0; e < graph.edges.size(); ++e) {
            adjacency_[graph.edges[e].left].push_back(e);
        }
        for (auto& list : adjacency_) {
            std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
                const auto& ea = graph_.edges[a];
                const auto& eb = graph_.edges[b];
                if (ea.right != eb.right) {
                    return ea.right < eb.right;
                }
                if (ea.weight != eb.weight) {
                    return ea.weight > eb.weight;
                }
                return ea.piece < eb.piece;
            });
        }
    }

    std::vector<std::size_t> run() {
        for (std::size_t u = 0; u < graph_.left_count; ++u) {
            ++stamp_;
            if (!augment(u)) {
                throw std::logic_error("regular multigraph without a perfect matching");
            }
        }
        return matching_from_left(match_left_);
    }

  private:
    bool augment(std::size_t u) {
        for (const auto e : adjacency_[u]) {
            const auto r = graph_.edges[e].right;
            if (visited_[r] == stamp_) {
                continue;
            }
            visited_[r] = stamp_;
            if (match_right_[r] == kNone || augment(graph_.edges[match_right_[r]].left)) {
                match_left_[u] = e;
                match_right_[r] = e;
                return true;
            }
        }
        return false;
    }

    const MultiGraph& graph_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::size_t> match_left_;
    std::vector<std::size_t> match_right_;
    std::vector<std::size_t> visited_;
    std::size_t stamp_ = 0;
};

// Keeps the set of left nodes reachable from free left nodes by alternating
// paths inside the prefix. A new edge can only complete an augmenting path if
// its left end is already reachable.
class PrefixMatcher {
  public:
    explicit PrefixMatcher(const MultiGraph& graph)
        : graph_(graph), adjacency_(graph.left_count), match_left_(graph.left_count, kNone),
          match_right_(graph.right_count, kNone), reachable_(graph.left_count, true), via_(graph.left_count, kNone) {
        queue_.reserve(graph.left_count);
    }

    void add(std::size_t e) {
        const auto u = graph_.edges[e].left;
        adjacency_[u].push_back(e);
        if (!reachable_[u]) {
            return;
        }
        queue_.clear();
        if (try_edge(u, e)) {
            return;
        }
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const auto y = queue_[head];
            for (const auto f : adjacency_[y]) {
                if (try_edge(y, f)) {
                    return;
                }
            }
        }
    }

    [[nodiscard]] bool perfect() const { return matched_ == graph_.left_count; }
    [[nodiscard]] std::vector<std::size_t> matching() const { return matching_from_left(match_left_); }

  private:
    // Explores f out of reachable node x. Returns true if it augmented.
    bool try_edge(std::size_t x, std::size_t f) {
        const auto r = graph_.edges[f].right;
        if (match_right_[r] == kNone) {
            augment(x, f);
            return true;
        }
        const auto y = graph_.edges[match_right_[r]].left;
        if (!reachable_[y]) {
            reachable_[y] = true;
            via_[y] = f;
            queue_.push_back(y);
        }
        return false;
    }

    void augment(std::size_t node, std::size_t edge) {
        while (true) {
            match_left_[node] = edge;
            match_right_[graph_.edges[edge].right] = edge;
            const auto back = via_[node];
            if (back == kNone) {
                break;
            }
            node = graph_.edges[back].left;
            edge = back;
        }
        ++matched_;
        rebuild_forest();
    }

    void rebuild_forest() {
        std::fill(reachable_.begin(), reachable_.end(), false);
        std::fill(via_.begin(), via_.end(), kNone);
        queue_.clear();
        for (std::size_t u = 0; u < graph_.left_count; ++u) {
            if (match_left_[u] == kNone) {
                reachable_[u] = true;
                queue_.push_back(u);
            }
        }
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const auto y = queue_[head];
            for (const auto f : adjacency_[y]) {
                const auto r = graph_.edges[f].right;
                if (match_right_[r] == kNone) {
                    throw std::logic_error("prefix matching is not maximum after augmentation");
                }
                const auto z = graph_.edges[match_right_[r]].left;
                if (!reachable_[z]) {
                    reachable_[z] = true;
                    via_[z] = f;
                    queue_.push_back(z);
                }
            }
        }
    }

    const MultiGraph& graph_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::size_t> match_left_;
    std::vector<std::size_t> match_right_;
    std::vector<bool> reachable_;
    std::vector<std::size_t> via_;
    std::vector<std::size_t> queue_;
    std::size_t matched_ = 0;
};

}  // namespace

std::vector<std::size_t> MultiGraph::left_degrees() const {
    std::vector<std::size_t> deg(left_count, 0);
    for (const auto& e : edges) {
        ++deg[e.left];
    }
    return deg;
}

std::vector<std::size_t> MultiGraph::right_degrees() const {
    std::vector<std::size_t> deg(right_count, 0);
    for (const auto& e : edges) {
        ++deg[e.right];
    }
    return deg;
}

std::size_t MultiGraph::max_degree() const {
    std::size_t best = 0;
    for (const auto d : left_degrees()) {
        best = std::max(best, d);
    }
    for (const auto d : right_degrees()) {
        best = std::max(best, d);
    }
    return best;
}

bool MultiGraph::is_regular() const {
    if (left_count != right_count) {
        return false;
    }
    const auto target = max_degree();
    const auto l = left_degrees();
    const auto r = right_degrees();
    return std::all_of(l.begin(), l.end(), [&](std::size_t d) { return d == target; }) &&
           std::all_of(r.begin(), r.end(), [&](std::size_t d) { return d == target; });
}

MultiGraph graph_from_instance(const TrafficInstance& instance) {
    MultiGraph graph{instance.senders(), instance.receivers(), {}};
    for (std::size_t i = 0; i < instance.senders(); ++i) {
        for (std::size_t j = 0; j < instance.receivers(); ++j) {
            if (const auto w = instance.weight(i, j); w > 0) {
                graph.edges.push_back({i, j, w, EdgeOrigin{i, j}, 0});
            }
        }
    }
    return graph;
}

bool edge_precedes(const MultiEdge& a, const MultiEdge& b) {
    if (a.weight != b.weight) {
        return a.weight > b.weight;
    }
    if (a.left != b.left) {
        return a.left < b.left;
    }
    if (a.right != b.right) {
        return a.right < b.right;
    }
    return a.piece < b.piece;
}

MultiGraph regularize(const MultiGraph& graph) {
    if (graph.edges.empty()) {
        throw std::invalid_argument("cannot regularize a graph without edges");
    }
    const auto side = std::max(graph.left_count, graph.right_count);
    const auto target = graph.max_degree();

    MultiGraph out{side, side, graph.edges};
    auto left_deficit = graph.left_degrees();
    auto right_deficit = graph.right_degrees();
    left_deficit.resize(side, 0);
    right_deficit.resize(side, 0);
    for (auto& d : left_deficit) {
        d = target - d;
    }
    for (auto& d : right_deficit) {
        d = target - d;
    }

    std::size_t padding = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
        while (i < side && left_deficit[i] == 0) {
            ++i;
        }
        while (j < side && right_deficit[j] == 0) {
            ++j;
        }
        if (i == side || j == side) {
            break;
        }
        const auto count = std::min(left_deficit[i], right_deficit[j]);
        for (std::size_t c = 0; c < count; ++c) {
            out.edges.push_back({i, j, 0, std::nullopt, padding++});
        }
        left_deficit[i] -= count;
        right_deficit[j] -= count;
    }
    return out;
}

MultiGraph remove_edges(const MultiGraph& graph, std::span<const std::size_t> indices) {
    std::vector<bool> drop(graph.edges.size(), false);
    for (const auto e : indices) {
        drop.at(e) = true;
    }
    MultiGraph out{graph.left_count, graph.right_count, {}};
    out.edges.reserve(graph.edges.size() - indices.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
        if (!drop[e]) {
            out.edges.push_back(graph.edges[e]);
        }
    }
    return out;
}

std::vector<std::size_t> perfect_matching(const MultiGraph& graph) {
    require_regular(graph);
    return KuhnMatcher(graph).run();
}

std::vector<std::size_t> sorted_prefix_matching(const MultiGraph& graph, const PrefixObserver& observer) {
    require_regular(graph);
    std::vector<std::size_t> order(graph.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return edge_precedes(graph.edges[a], graph.edges[b]); });

    PrefixMatcher matcher(graph);
    for (std::size_t k = 0; k < order.size(); ++k) {
        matcher.add(order[k]);
        if (observer) {
            const auto current = matcher.matching();
            observer(k + 1, current);
        }
        if (matcher.perfect()) {
            return matcher.matching();
        }
    }
    throw std::logic_error("sorted prefix matching did not become perfect");
}

}  // namespace tdma
