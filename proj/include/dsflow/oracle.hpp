// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "dsflow/dua.hpp"
#include "dsflow/solver.hpp"

namespace dsflow {

/// A node sequence starting at the start node in which every consecutive
/// pair is an edge of the graph.
using Path = std::vector<NodeId>;

struct PathCoverage {
    DuaSet covered;   // DUAs covered somewhere along the path
    DuaSet available; // DUAs whose def is live at the path's end
};

/// Exact per-path semantics. Walking the path, each step into node n over
/// edge (p, n) does, in order:
///   1. cover every available node-use DUA whose use node is n
///   2. cover every available edge-use DUA whose use edge is exactly (p, n)
///   3. drop from the available set every DUA whose variable n redefines
///   4. add the DUAs born at n
/// Only steps 3-4 apply at the start node. Covered DUAs stay covered.
PathCoverage simulate_path(const FlowGraph& g, const Path& path, const DuaUniverse& universe,
                           const DefUseAnnotations& ann);

/// All paths from the start node ending at `target` that traverse no edge
/// more than `edge_bound` times, in deterministic (successor-ascending
/// depth-first) order. Paths may pass through `target` before ending there.
std::vector<Path> enumerate_paths_to(const FlowGraph& g, NodeId target, std::uint32_t edge_bound);

/// Meet over all bounded paths of the covered component: the intersection
/// of simulate_path(π).covered over every enumerated path π ending at n.
DuaSet mop_covered(const FlowGraph& g, const DuaUniverse& universe, const DefUseAnnotations& ann,
                   NodeId n, std::uint32_t edge_bound);

/// mop_covered for every node in one bounded enumeration pass.
std::vector<DuaSet> mop_covered_all(const FlowGraph& g, const DuaUniverse& universe,
                                    const DefUseAnnotations& ann, std::uint32_t edge_bound);

struct NodeDiscrepancy {
    NodeId node;
    DuaSet solver_only; // in solver covered(n), missing from the oracle
    DuaSet oracle_only; // in the oracle result, missing from solver covered(n)
};

struct DiscrepancyReport {
    std::vector<NodeDiscrepancy> nodes;

    bool empty() const { return nodes.empty(); }
};

/// Per-node two-way diff between the solved covered sets and the bounded
/// path oracle. An empty report means full agreement.
DiscrepancyReport compare_with_solver(const SolverState& state, const FlowGraph& g,
                                      const DuaUniverse& universe, const DefUseAnnotations& ann,
                                      std::uint32_t edge_bound);

} // namespace dsflow
