#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tdma/instance.hpp"

namespace tdma {

/// The original traffic cell an edge piece was cut from.
struct EdgeOrigin {
    std::size_t sender = 0;
    std::size_t receiver = 0;

    friend bool operator==(const EdgeOrigin&, const EdgeOrigin&) = default;
};

struct MultiEdge {
    std::size_t left = 0;
    std::size_t right = 0;
    Weight weight = 0;
    /// Empty for zero-weight edges added by regularize().
    std::optional<EdgeOrigin> origin;
    /// Position of this piece within its origin edge; a running counter for padding.
    std::size_t piece = 0;

    [[nodiscard]] bool is_padding() const { return !origin.has_value(); }

    friend bool operator==(const MultiEdge&, const MultiEdge&) = default;
};

/// Bipartite multigraph. Parallel edges stay distinct.
struct MultiGraph {
    std::size_t left_count = 0;
    std::size_t right_count = 0;
    std::vector<MultiEdge> edges;

    [[nodiscard]] std::vector<std::size_t> left_degrees() const;
    [[nodiscard]] std::vector<std::size_t> right_degrees() const;
    [[nodiscard]] std::size_t max_degree() const;
    /// Both sides have the same node count and every node has the same degree.
    [[nodiscard]] bool is_regular() const;

    friend bool operator==(const MultiGraph&, const MultiGraph&) = default;
};

/// Simple graph of the positive cells; left = senders, right = receivers, weight = cell value.
MultiGraph graph_from_instance(const TrafficInstance& instance);

/// Strict weak order used for every tie-break: weight desc, left asc, right asc, piece asc.
bool edge_precedes(const MultiEdge& a, const MultiEdge& b);

/**
 * Pads both sides to the same node count and adds zero-weight padding edges
 * until every node has degree equal to the input's max degree.
 * Deficient left and right nodes are paired in ascending id order.
 * Original edges keep their positions; padding is appended.
 * Throws std::invalid_argument on an empty edge set.
 */
MultiGraph regularize(const MultiGraph& graph);

/// Copy of `graph` without the edges at `indices`.
MultiGraph remove_edges(const MultiGraph& graph, std::span<const std::size_t> indices);

/**
 * Perfect matching of a regular bipartite multigraph by augmenting paths.
 * Left nodes are processed in ascending id; neighbours are tried by ascending
 * right id, then heavier parallel edge first.
 * Returns edge indices ordered by left node.
 * Throws std::invalid_argument if the graph is not regular.
 */
std::vector<std::size_t> perfect_matching(const MultiGraph& graph);

/// Called after each prefix step with (prefix length, current matching as edge indices).
using PrefixObserver = std::function<void(std::size_t, std::span<const std::size_t>)>;

/**
 * Weight-sorted prefix matching.
 *
 * Edges are taken in edge_precedes() order. Each new edge joins the prefix and an
 * augmenting path for the current matching is searched within the prefix; the
 * matching stays maximum on every prefix, so only paths through the new edge can
 * exist. Stops once the matching is perfect.
 * Returns edge indices ordered by left node.
 * Throws std::invalid_argument if the graph is not regular.
 */
std::vector<std::size_t> sorted_prefix_matching(const MultiGraph& graph, const PrefixObserver& observer = {});

}  // namespace tdma
