// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dsflow/oracle.hpp"

#include <string>
#include <utility>

namespace dsflow {

namespace {

// Step semantics shared by the single-path simulator and the exhaustive
// walker: cover, then kill, then gen, at node n entered over (p, n).
// `p == n` marks the path head (no incoming edge; covering is skipped).
void step(const DuaUniverse& universe, const DefUseAnnotations& ann, NodeId p, NodeId n,
          DuaSet& covered, DuaSet& available) {
    if (p != n) {
        available.for_each([&](std::uint32_t i) {
            const Dua& dua = universe[i];
            if (dua.is_edge_use() ? (dua.use_pred == p && dua.use_node == n) : dua.use_node == n)
                covered.insert(i);
        });
    }
    DuaSet survivors = available;
    available.for_each([&](std::uint32_t i) {
        if (ann.defines(n, universe[i].var))
            survivors.erase(i);
    });
    available = std::move(survivors);
    for (std::uint32_t i = 0; i < universe.size(); ++i)
        if (universe[i].def_node == n)
            available.insert(i);
}

} // namespace

PathCoverage simulate_path(const FlowGraph& g, const Path& path, const DuaUniverse& universe,
                           const DefUseAnnotations& ann) {
    if (path.empty())
        throw PathError("empty path");
    if (path.front() != g.start())
        throw PathError("path must begin at the start node " + std::to_string(g.start()));
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!g.has_edge(path[i], path[i + 1]))
            throw PathError("no edge (" + std::to_string(path[i]) + "," +
                            std::to_string(path[i + 1]) + ") in graph");

    PathCoverage pc{universe.empty_set(), universe.empty_set()};
    step(universe, ann, path.front(), path.front(), pc.covered, pc.available);
    for (std::size_t i = 1; i < path.size(); ++i)
        step(universe, ann, path[i - 1], path[i], pc.covered, pc.available);
    return pc;
}

namespace {

// Depth-first walk of every path from the start whose per-edge traversal
// count stays within the bound. Each prefix is itself a bounded path, so a
// visitor over every (node, covered, available) step state sees every
// bounded path exactly once, keyed by its end node.
template <typename Visitor>
void walk_bounded_paths(const FlowGraph& g, const DuaUniverse& universe,
                        const DefUseAnnotations& ann, std::uint32_t edge_bound, Visitor&& visit) {
    std::vector<std::uint32_t> edge_uses(g.edge_count(), 0);
    Path path{g.start()};
    DuaSet covered = universe.empty_set();
    DuaSet available = universe.empty_set();
    step(universe, ann, g.start(), g.start(), covered, available);

    const auto recurse = [&](const auto& self, NodeId n) -> void {
        visit(path, covered, available);
        for (NodeId m : g.successors(n)) {
            const std::uint32_t ei = *g.edge_index(n, m);
            if (edge_uses[ei] >= edge_bound)
                continue;
            ++edge_uses[ei];
            path.push_back(m);
            DuaSet saved_covered = covered;
            DuaSet saved_available = available;
            step(universe, ann, n, m, covered, available);
            self(self, m);
            covered = std::move(saved_covered);
            available = std::move(saved_available);
            path.pop_back();
            --edge_uses[ei];
        }
    };
    recurse(recurse, g.start());
}

} // namespace

std::vector<Path> enumerate_paths_to(const FlowGraph& g, NodeId target, std::uint32_t edge_bound) {
    if (edge_bound < 1)
        throw PathError("edge bound must be at least 1");
    DuaUniverse empty_universe;
    DefUseAnnotations no_ann;
    std::vector<Path> out;
    walk_bounded_paths(g, empty_universe, no_ann, edge_bound,
                       [&](const Path& p, const DuaSet&, const DuaSet&) {
                           if (p.back() == target)
                               out.push_back(p);
                       });
    if (out.empty())
        throw PathError("no path from start to node " + std::to_string(target) +
                        " within edge bound " + std::to_string(edge_bound));
    return out;
}

std::vector<DuaSet> mop_covered_all(const FlowGraph& g, const DuaUniverse& universe,
                                    const DefUseAnnotations& ann, std::uint32_t edge_bound) {
    if (edge_bound < 1)
        throw PathError("edge bound must be at least 1");
    std::vector<DuaSet> acc(g.node_count(), universe.full_set());
    std::vector<bool> reached(g.node_count(), false);
    walk_bounded_paths(g, universe, ann, edge_bound,
                       [&](const Path& p, const DuaSet& covered, const DuaSet&) {
                           acc[p.back()] &= covered;
                           reached[p.back()] = true;
                       });
    for (NodeId n = 0; n < g.node_count(); ++n)
        if (!reached[n])
            acc[n] = universe.empty_set(); // cannot happen on a validated graph
    return acc;
}

DuaSet mop_covered(const FlowGraph& g, const DuaUniverse& universe, const DefUseAnnotations& ann,
                   NodeId n, std::uint32_t edge_bound) {
    return mop_covered_all(g, universe, ann, edge_bound)[n];
}

DiscrepancyReport compare_with_solver(const SolverState& state, const FlowGraph& g,
                                      const DuaUniverse& universe, const DefUseAnnotations& ann,
                                      std::uint32_t edge_bound) {
    const std::vector<DuaSet> oracle = mop_covered_all(g, universe, ann, edge_bound);
    DiscrepancyReport report;
    for (NodeId n = 0; n < g.node_count(); ++n) {
        DuaSet solver_only = state.covered[n] - oracle[n];
        DuaSet oracle_only = oracle[n] - state.covered[n];
        if (!solver_only.empty() || !oracle_only.empty())
            report.nodes.push_back({n, std::move(solver_only), std::move(oracle_only)});
    }
    return report;
}

} // namespace dsflow
