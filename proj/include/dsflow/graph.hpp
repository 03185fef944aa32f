// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dsflow/errors.hpp"
#include "dsflow/index_set.hpp"

namespace dsflow {

/// Dense node identifier in [0, node_count).
using NodeId = std::uint32_t;

struct Edge {
    NodeId pred;
    NodeId succ;

    auto operator<=>(const Edge&) const = default;
};

/// Immutable control-flow graph with a single start node and one or more
/// exit nodes. Construction validates the structural invariants:
///   - no self loops, no duplicate edges
///   - every node is reachable from the start node
///   - every node reaches at least one exit node
///   - exit nodes have no outgoing edges
class FlowGraph {
  public:
    static FlowGraph build(std::uint32_t node_count, std::vector<Edge> edges, NodeId start,
                           std::vector<NodeId> exits);

    std::uint32_t node_count() const { return node_count_; }
    NodeId start() const { return start_; }
    std::span<const NodeId> exits() const { return exits_; }
    bool is_exit(NodeId n) const;

    /// Edges sorted by (pred, succ); the index of an edge in this span is
    /// its stable edge id.
    std::span<const Edge> edges() const { return edges_; }
    std::uint32_t edge_count() const { return static_cast<std::uint32_t>(edges_.size()); }

    std::span<const NodeId> successors(NodeId n) const { return succ_[n]; }
    std::span<const NodeId> predecessors(NodeId n) const { return pred_[n]; }

    std::optional<std::uint32_t> edge_index(NodeId pred, NodeId succ) const;
    bool has_edge(NodeId pred, NodeId succ) const { return edge_index(pred, succ).has_value(); }

  private:
    FlowGraph() = default;

    std::uint32_t node_count_ = 0;
    NodeId start_ = 0;
    std::vector<NodeId> exits_;
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> succ_;
    std::vector<std::vector<NodeId>> pred_;
};

/// A visitation order over all nodes plus its inverse (rank) map.
struct NodeOrdering {
    std::vector<NodeId> sequence;
    std::vector<std::uint32_t> rank; // rank[n] = position of n in sequence

    static NodeOrdering from_sequence(std::vector<NodeId> seq);
};

/// Depth-first ordering of the graph: reverse of the DFS postorder from the
/// start node, visiting successors in ascending node id. rank(start) == 0.
NodeOrdering reverse_postorder(const FlowGraph& g);

/// Per-node dominator (or post-dominator) sets over the node universe.
struct DominanceMap {
    std::vector<IndexSet> sets;

    const IndexSet& of(NodeId n) const { return sets[n]; }
    bool dominates(NodeId dominator, NodeId n) const { return sets[n].contains(dominator); }
};

/// Iterative forward data-flow solution of the dominance equations:
/// Dom(start) = {start}, Dom(n) = {n} ∪ ⋂ over predecessors p of Dom(p).
/// Every node dominates itself.
DominanceMap dominators(const FlowGraph& g);

/// Post-dominators via the dominance equations on the edge-reversed graph,
/// rooted at a virtual node joining all exits. By convention a node does not
/// post-dominate itself, and the virtual node is never reported.
DominanceMap post_dominators(const FlowGraph& g);

/// Edge classification relative to a dominance map and a depth-first
/// ordering. A back edge (p, n) has n dominating p; a retreating edge has
/// rank(p) >= rank(n). Every back edge is retreating.
struct EdgeClassification {
    std::vector<Edge> back_edges;
    std::vector<Edge> retreating_edges;
};

EdgeClassification classify_edges(const FlowGraph& g, const NodeOrdering& order,
                                  const DominanceMap& dom);

} // namespace dsflow
