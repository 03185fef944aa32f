// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Shared test fixtures: the Max example graph, brute-force reference
// oracles over bounded path enumeration, and random instance generators.
// The brute-force routines are deliberately independent of the library's
// analysis code paths: they enumerate paths explicitly and intersect.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dsflow/dua.hpp"
#include "dsflow/graph.hpp"
#include "dsflow/transfer.hpp"

namespace dsflow::testing {

inline FlowGraph max_graph() {
    return FlowGraph::build(
        7, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 4}, {4, 1}, {2, 6}}, 0, {6});
}

inline DefUseAnnotations max_annotations() {
    DefUseAnnotations ann;
    for (const char* v : {"array", "i", "length", "max"})
        ann.add_def(0, v);
    ann.add_def(3, "rogue");
    ann.add_def(4, "i");
    ann.add_def(5, "max");
    ann.add_cuse(2, "max");
    ann.add_cuse(4, "i");
    for (const char* v : {"array", "i", "rogue"})
        ann.add_cuse(5, v);
    for (const Edge e : {Edge{1, 2}, Edge{1, 3}})
        for (const char* v : {"i", "length"})
            ann.add_puse(e, v);
    for (const Edge e : {Edge{3, 4}, Edge{3, 5}})
        for (const char* v : {"array", "i", "max"})
            ann.add_puse(e, v);
    return ann;
}

/// The 24 all-uses requirements of the Max example.
inline std::vector<std::string> max_all_uses_labels() {
    return {
        "(0, (3,5), array)", "(0, (3,4), array)", "(0, 5, array)",
        "(0, (1,3), length)", "(0, (1,2), length)", "(0, (1,3), i)",
        "(0, (1,2), i)", "(0, (3,5), i)", "(0, (3,4), i)",
        "(0, 4, i)", "(0, 5, i)", "(0, 2, max)",
        "(0, (3,5), max)", "(0, (3,4), max)", "(5, 2, max)",
        "(5, (3,5), max)", "(5, (3,4), max)", "(4, (1,3), i)",
        "(4, (1,2), i)", "(4, (3,5), i)", "(4, (3,4), i)",
        "(4, 4, i)", "(4, 5, i)", "(3, 5, rogue)",
    };
}

inline std::vector<std::string> labels_of(const DuaUniverse& u, const DuaSet& s) {
    std::vector<std::string> out;
    s.for_each([&](std::uint32_t i) { out.push_back(to_string(u[i])); });
    return out;
}

inline std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// ---------------------------------------------------------------------------
// Brute-force path oracles.

/// Intersection of the node sets of every path that starts at one of
/// `sources` and traverses no adjacency pair more than `edge_bound` times,
/// grouped by path end node. Unreached nodes keep the full universe.
inline std::vector<IndexSet> brute_path_intersections(
    const std::vector<std::vector<NodeId>>& adj, const std::vector<NodeId>& sources,
    std::uint32_t node_count, std::uint32_t edge_bound) {
    std::vector<IndexSet> acc(node_count, IndexSet::full(node_count));

    std::vector<std::vector<std::uint32_t>> uses(node_count);
    for (NodeId a = 0; a < node_count; ++a)
        uses[a].assign(adj[a].size(), 0);

    std::vector<std::uint32_t> on_path_count(node_count, 0);
    IndexSet on_path(node_count);

    const auto dfs = [&](const auto& self, NodeId n) -> void {
        acc[n] &= on_path;
        for (std::size_t k = 0; k < adj[n].size(); ++k) {
            if (uses[n][k] >= edge_bound)
                continue;
            const NodeId m = adj[n][k];
            ++uses[n][k];
            ++on_path_count[m];
            on_path.insert(m);
            self(self, m);
            --uses[n][k];
            if (--on_path_count[m] == 0)
                on_path.erase(m);
        }
    };

    for (NodeId s : sources) {
        ++on_path_count[s];
        on_path.insert(s);
        dfs(dfs, s);
        if (--on_path_count[s] == 0)
            on_path.erase(s);
    }
    return acc;
}

/// Dominators as the intersection of node sets over all bounded paths from
/// the start node.
inline std::vector<IndexSet> brute_dominators(const FlowGraph& g, std::uint32_t edge_bound = 2) {
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (NodeId n = 0; n < g.node_count(); ++n)
        adj[n].assign(g.successors(n).begin(), g.successors(n).end());
    return brute_path_intersections(adj, {g.start()}, g.node_count(), edge_bound);
}

/// Post-dominators (self excluded) as the intersection over all bounded
/// paths from the node to any exit, computed on the reversed graph.
inline std::vector<IndexSet> brute_post_dominators(const FlowGraph& g,
                                                   std::uint32_t edge_bound = 2) {
    std::vector<std::vector<NodeId>> radj(g.node_count());
    for (const Edge& e : g.edges())
        radj[e.succ].push_back(e.pred);
    std::vector<NodeId> sources(g.exits().begin(), g.exits().end());
    auto acc = brute_path_intersections(radj, sources, g.node_count(), edge_bound);
    for (NodeId n = 0; n < g.node_count(); ++n)
        acc[n].erase(n);
    return acc;
}

/// Whether a def-clear path witnesses the DUA: a nonempty path from the def
/// node to the use site along which no node strictly after the def and
/// strictly before the use redefines the variable.
inline bool brute_dua_exists(const FlowGraph& g, const DefUseAnnotations& ann, const Dua& dua,
                             std::uint32_t edge_bound = 2) {
    std::vector<std::uint32_t> edge_uses(g.edge_count(), 0);
    bool found = false;

    // live == the def is still live when leaving node n
    const auto dfs = [&](const auto& self, NodeId n) -> void {
        if (found)
            return;
        for (NodeId m : g.successors(n)) {
            const std::uint32_t ei = *g.edge_index(n, m);
            if (edge_uses[ei] >= edge_bound)
                continue;
            if (dua.is_edge_use() ? (dua.use_pred == n && dua.use_node == m)
                                  : dua.use_node == m) {
                found = true;
                return;
            }
            if (ann.defines(m, dua.var))
                continue; // def killed when passing through m
            ++edge_uses[ei];
            self(self, m);
            --edge_uses[ei];
        }
    };
    dfs(dfs, dua.def_node);
    return found;
}

/// Exhaustive all-uses enumeration from the brute-force witness check.
inline std::vector<Dua> brute_enumerate(const FlowGraph& g, const DefUseAnnotations& ann,
                                        std::uint32_t edge_bound = 2) {
    std::vector<Dua> out;
    for (const auto& [d, vars] : ann.all_defs()) {
        for (const Variable& var : vars) {
            for (const auto& [u, uses] : ann.all_cuses()) {
                if (!uses.count(var))
                    continue;
                const Dua dua{d, UseKind::Node, 0, u, var};
                if (brute_dua_exists(g, ann, dua, edge_bound))
                    out.push_back(dua);
            }
            for (const auto& [e, uses] : ann.all_puses()) {
                if (!uses.count(var))
                    continue;
                const Dua dua{d, UseKind::Edge, e.pred, e.succ, var};
                if (brute_dua_exists(g, ann, dua, edge_bound))
                    out.push_back(dua);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random instance generators.

struct GeneratedGraph {
    FlowGraph graph;
    DefUseAnnotations ann;
};

/// Random validated graph: at most `max_nodes` nodes, at most 12 edges,
/// annotated with up to three variables. Exits are the sink nodes. Cyclic
/// unless acyclic_only.
inline GeneratedGraph random_graph(std::mt19937& rng, bool acyclic_only = false,
                                   std::uint32_t max_nodes = 8) {
    for (;;) {
        const std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(2, max_nodes)(rng);

        std::vector<Edge> edges;
        const auto has = [&](NodeId a, NodeId b) {
            return std::find(edges.begin(), edges.end(), Edge{a, b}) != edges.end();
        };
        // Random in-tree keeps every node reachable from 0.
        for (NodeId i = 1; i < n; ++i)
            edges.push_back({std::uniform_int_distribution<NodeId>(0, i - 1)(rng), i});
        const std::uint32_t extra = std::uniform_int_distribution<std::uint32_t>(
            0, std::min<std::uint32_t>(5, 12 - (n - 1)))(rng);
        for (std::uint32_t k = 0; k < extra; ++k) {
            const NodeId a = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
            const NodeId b = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
            if (a == b || has(a, b))
                continue;
            if (acyclic_only && a > b)
                continue;
            edges.push_back({a, b});
        }

        std::vector<NodeId> exits;
        std::vector<bool> has_succ(n, false);
        for (const Edge& e : edges)
            has_succ[e.pred] = true;
        for (NodeId i = 0; i < n; ++i)
            if (!has_succ[i])
                exits.push_back(i);
        if (exits.empty())
            continue;

        std::optional<FlowGraph> graph;
        try {
            graph = FlowGraph::build(n, edges, 0, exits);
        } catch (const GraphError&) {
            continue; // e.g. a cycle that traps flow away from every exit
        }

        const std::uint32_t n_vars = std::uniform_int_distribution<std::uint32_t>(1, 3)(rng);
        const std::vector<std::string> vars = {"x", "y", "z"};
        std::uniform_int_distribution<int> pct(0, 99);
        DefUseAnnotations ann;
        for (NodeId i = 0; i < n; ++i) {
            for (std::uint32_t v = 0; v < n_vars; ++v) {
                if (pct(rng) < 40)
                    ann.add_def(i, vars[v]);
                if (pct(rng) < 40)
                    ann.add_cuse(i, vars[v]);
            }
            // Predicate uses go on all outgoing edges of a node at once.
            if (!graph->successors(i).empty()) {
                for (std::uint32_t v = 0; v < n_vars; ++v) {
                    if (pct(rng) < 30)
                        for (NodeId m : graph->successors(i))
                            ann.add_puse(Edge{i, m}, vars[v]);
                }
            }
        }
        return GeneratedGraph{std::move(*graph), std::move(ann)};
    }
}

inline IndexSet random_set(std::mt19937& rng, std::uint32_t universe) {
    IndexSet s(universe);
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::uint32_t i = 0; i < universe; ++i)
        if (coin(rng))
            s.insert(i);
    return s;
}

inline TransferFunction random_transfer(std::mt19937& rng, std::uint32_t universe) {
    return TransferFunction{random_set(rng, universe), random_set(rng, universe),
                            random_set(rng, universe), random_set(rng, universe),
                            random_set(rng, universe)};
}

} // namespace dsflow::testing
