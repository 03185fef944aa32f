// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dsflow/graph.hpp"

#include <algorithm>
#include <string>

namespace dsflow {

namespace {

std::string edge_str(const Edge& e) {
    return "(" + std::to_string(e.pred) + "," + std::to_string(e.succ) + ")";
}

// Nodes reachable from the given seeds along the supplied adjacency.
IndexSet closure(std::uint32_t node_count, const std::vector<std::vector<NodeId>>& adj,
                 std::span<const NodeId> seeds) {
    IndexSet seen(node_count);
    std::vector<NodeId> stack(seeds.begin(), seeds.end());
    for (NodeId s : seeds)
        seen.insert(s);
    while (!stack.empty()) {
        const NodeId n = stack.back();
        stack.pop_back();
        for (NodeId m : adj[n]) {
            if (!seen.contains(m)) {
                seen.insert(m);
                stack.push_back(m);
            }
        }
    }
    return seen;
}

} // namespace

FlowGraph FlowGraph::build(std::uint32_t node_count, std::vector<Edge> edges, NodeId start,
                           std::vector<NodeId> exits) {
    if (node_count == 0)
        throw GraphError(GraphError::Kind::InvalidNode, "graph must have at least one node");
    if (start >= node_count)
        throw GraphError(GraphError::Kind::InvalidNode,
                         "start node " + std::to_string(start) + " out of range");
    if (exits.empty())
        throw GraphError(GraphError::Kind::EmptyExits, "graph must declare at least one exit node");
    for (NodeId e : exits)
        if (e >= node_count)
            throw GraphError(GraphError::Kind::InvalidNode,
                             "exit node " + std::to_string(e) + " out of range");

    std::sort(exits.begin(), exits.end());
    exits.erase(std::unique(exits.begin(), exits.end()), exits.end());

    for (const Edge& e : edges) {
        if (e.pred >= node_count || e.succ >= node_count)
            throw GraphError(GraphError::Kind::InvalidNode, "edge " + edge_str(e) + " out of range");
        if (e.pred == e.succ)
            throw GraphError(GraphError::Kind::SelfLoop, "self loop " + edge_str(e));
    }

    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
        throw GraphError(GraphError::Kind::DuplicateEdge, "duplicate edge " + edge_str(*dup));

    FlowGraph g;
    g.node_count_ = node_count;
    g.start_ = start;
    g.exits_ = std::move(exits);
    g.edges_ = std::move(edges);
    g.succ_.resize(node_count);
    g.pred_.resize(node_count);
    for (const Edge& e : g.edges_) {
        g.succ_[e.pred].push_back(e.succ);
        g.pred_[e.succ].push_back(e.pred);
    }
    for (auto& v : g.succ_)
        std::sort(v.begin(), v.end());
    for (auto& v : g.pred_)
        std::sort(v.begin(), v.end());

    for (NodeId e : g.exits_)
        if (!g.succ_[e].empty())
            throw GraphError(GraphError::Kind::ExitHasSuccessors,
                             "exit node " + std::to_string(e) + " has outgoing edges");

    const IndexSet from_start = closure(node_count, g.succ_, std::span<const NodeId>{&start, 1});
    for (NodeId n = 0; n < node_count; ++n)
        if (!from_start.contains(n))
            throw GraphError(GraphError::Kind::UnreachableNode,
                             "node " + std::to_string(n) + " unreachable from start");

    const IndexSet to_exit = closure(node_count, g.pred_, g.exits_);
    for (NodeId n = 0; n < node_count; ++n)
        if (!to_exit.contains(n))
            throw GraphError(GraphError::Kind::NoPathToExit,
                             "node " + std::to_string(n) + " has no path to an exit");

    return g;
}

bool FlowGraph::is_exit(NodeId n) const {
    return std::binary_search(exits_.begin(), exits_.end(), n);
}

std::optional<std::uint32_t> FlowGraph::edge_index(NodeId pred, NodeId succ) const {
    const Edge key{pred, succ};
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - edges_.begin());
}

NodeOrdering NodeOrdering::from_sequence(std::vector<NodeId> seq) {
    NodeOrdering o;
    o.rank.resize(seq.size());
    for (std::uint32_t i = 0; i < seq.size(); ++i)
        o.rank[seq[i]] = i;
    o.sequence = std::move(seq);
    return o;
}

NodeOrdering reverse_postorder(const FlowGraph& g) {
    const std::uint32_t n = g.node_count();
    std::vector<NodeId> postorder;
    postorder.reserve(n);
    IndexSet visited(n);

    // Iterative DFS; the frame keeps the index of the next successor so
    // finish times match the recursive formulation.
    struct Frame {
        NodeId node;
        std::size_t next;
    };
    std::vector<Frame> stack;
    stack.push_back({g.start(), 0});
    visited.insert(g.start());
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto succs = g.successors(f.node);
        if (f.next < succs.size()) {
            const NodeId m = succs[f.next++];
            if (!visited.contains(m)) {
                visited.insert(m);
                stack.push_back({m, 0});
            }
        } else {
            postorder.push_back(f.node);
            stack.pop_back();
        }
    }

    std::vector<NodeId> seq(postorder.rbegin(), postorder.rend());
    return NodeOrdering::from_sequence(std::move(seq));
}

namespace {

// Shared fixpoint for dominance over an arbitrary adjacency: root's set is
// {root}; every other set starts full and shrinks to {n} ∪ ⋂ Dom(p).
std::vector<IndexSet> dominance_fixpoint(std::uint32_t node_count,
                                         const std::vector<std::vector<NodeId>>& preds,
                                         std::span<const NodeId> order, NodeId root) {
    std::vector<IndexSet> dom(node_count, IndexSet::full(node_count));
    dom[root] = IndexSet(node_count);
    dom[root].insert(root);

    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId n : order) {
            if (n == root)
                continue;
            IndexSet next(node_count);
            bool first = true;
            for (NodeId p : preds[n]) {
                if (first) {
                    next = dom[p];
                    first = false;
                } else {
                    next &= dom[p];
                }
            }
            next.insert(n);
            if (next != dom[n]) {
                dom[n] = std::move(next);
                changed = true;
            }
        }
    }
    return dom;
}

} // namespace

DominanceMap dominators(const FlowGraph& g) {
    const auto order = reverse_postorder(g);
    std::vector<std::vector<NodeId>> preds(g.node_count());
    for (NodeId n = 0; n < g.node_count(); ++n)
        preds[n].assign(g.predecessors(n).begin(), g.predecessors(n).end());
    return DominanceMap{dominance_fixpoint(g.node_count(), preds, order.sequence, g.start())};
}

DominanceMap post_dominators(const FlowGraph& g) {
    // Reverse every edge and root the problem at a virtual node that fans
    // out to all exits. The virtual node is dropped from the result, and a
    // node is removed from its own set.
    const std::uint32_t n = g.node_count();
    const NodeId virtual_root = n;
    std::vector<std::vector<NodeId>> preds(n + 1); // preds in the reversed graph = succs in g
    for (const Edge& e : g.edges())
        preds[e.pred].push_back(e.succ);
    for (NodeId e : g.exits())
        preds[e].push_back(virtual_root);

    // Any order that touches all nodes works; iterate highest-first so the
    // reversed flow (exit towards start) tends to converge quickly.
    std::vector<NodeId> order(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i)
        order[i] = n - i;

    const auto full = dominance_fixpoint(n + 1, preds, order, virtual_root);

    DominanceMap out;
    out.sets.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
        IndexSet s(n);
        full[v].for_each([&](std::uint32_t m) {
            if (m < n && m != v)
                s.insert(m);
        });
        out.sets.push_back(std::move(s));
    }
    return out;
}

EdgeClassification classify_edges(const FlowGraph& g, const NodeOrdering& order,
                                  const DominanceMap& dom) {
    EdgeClassification c;
    for (const Edge& e : g.edges()) {
        if (dom.dominates(e.succ, e.pred))
            c.back_edges.push_back(e);
        if (order.rank[e.pred] >= order.rank[e.succ])
            c.retreating_edges.push_back(e);
    }
    return c;
}

} // namespace dsflow
