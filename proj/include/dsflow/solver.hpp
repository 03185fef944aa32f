// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsflow/dua.hpp"
#include "dsflow/graph.hpp"

namespace dsflow {

struct SolverStats {
    std::uint32_t iterations = 0; // full passes of the convergence loop
    std::uint64_t visits = 0;     // node evaluations, final update pass included
};

/// Converged per-node solution. in/out hold the DUAs covered or still
/// available on entry/exit of each node over every path from the start;
/// covered holds the DUAs guaranteed covered whenever the node is reached.
struct SolverState {
    std::vector<DuaSet> in;
    std::vector<DuaSet> out;
    std::vector<DuaSet> covered;
    SolverStats stats;
};

/// Optional instrumentation: a snapshot of all out/covered sets after
/// initialization and after every pass, for shrinkage checks.
struct SolveTrace {
    std::vector<std::vector<DuaSet>> out_by_pass;
    std::vector<std::vector<DuaSet>> covered_by_pass;
};

/// Union of the sleepy sets of n's predecessors, skipping predecessors
/// reached over a back edge. Empty when every incoming edge is a back edge.
DuaSet cur_sleepy(const FlowGraph& g, const NodeFacts& facts, NodeId n,
                  std::span<const Edge> back_edges);

/// Iterative fixpoint over the node transfer functions, evaluating nodes
/// in-place in the supplied order (the start node is pinned: in/covered
/// stay empty, out stays born(start)). Per pass and node:
///   in(n)      = ⋂ over predecessors p of out(p)
///   covered(n) = ⋂ over predecessors of covered(p)
///                ∪ ((in(n) − cur_sleepy(n)) ∩ pot_covered(n))
///   out(n)     = born(n) ∪ (in(n) − disabled(n)) ∪ covered(n)
/// The loop runs until neither the out nor the covered sets change, then a
/// final pass refreshes in and covered from the converged out values. The
/// converged sets are the same for every visitation order.
SolverState solve(const FlowGraph& g, const NodeFacts& facts, const DuaUniverse& universe,
                  const NodeOrdering& order, std::span<const Edge> back_edges,
                  SolveTrace* trace = nullptr);

/// true iff the pass count stayed within retreating_count + 2, the bound
/// expected for depth-first (reverse postorder) visitation.
bool iteration_bound_check(const SolverState& state, std::uint32_t retreating_count);

} // namespace dsflow
