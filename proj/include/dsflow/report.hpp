// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsflow/dua.hpp"
#include "dsflow/graph.hpp"
#include "dsflow/solver.hpp"

namespace dsflow {

/// Per-node DUAs guaranteed covered whenever the node is reached: the
/// solved covered sets, one per node.
std::vector<DuaSet> local_map(const SolverState& state);

/// Per-node DUAs guaranteed covered on any run that reaches the node and
/// continues to an exit: the local set plus the local sets of every
/// post-dominator.
std::vector<DuaSet> global_map(const SolverState& state, const DominanceMap& pdom);

/// subsumed_by[m] = nodes whose tour is implied by touring m, i.e. the
/// nodes on every complete path through m: Dom(m) ∪ PDom(m) ∪ {m}.
/// Reflexive by construction.
struct NodeSubsumptionRelation {
    std::vector<IndexSet> subsumed_by;

    bool subsumes(NodeId m, NodeId n) const { return subsumed_by[m].contains(n); }
};

NodeSubsumptionRelation node_subsumption(const FlowGraph& g, const DominanceMap& dom,
                                         const DominanceMap& pdom);

/// Greedy spanning set: repeatedly picks the node subsuming the most
/// not-yet-subsumed nodes (ties broken towards the lowest id) until every
/// node is subsumed. Result is sorted ascending.
std::vector<NodeId> unconstrained_nodes(const NodeSubsumptionRelation& rel);

struct CoverageSummary {
    std::uint32_t covered_duas = 0;  // |union of the per-node global sets|
    std::uint32_t total_duas = 0;    // |universe|
    std::vector<std::uint32_t> per_node_counts;
    bool no_requirements = false;    // universe is empty

    /// Rounded display percentage; 0 when there are no requirements.
    std::uint32_t percent() const;
};

CoverageSummary coverage_summary(std::span<const DuaSet> global, const DuaUniverse& universe);

} // namespace dsflow
