// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dsflow/report.hpp"

#include <algorithm>
#include <cmath>

namespace dsflow {

std::vector<DuaSet> local_map(const SolverState& state) {
    return state.covered;
}

std::vector<DuaSet> global_map(const SolverState& state, const DominanceMap& pdom) {
    std::vector<DuaSet> global = state.covered;
    for (NodeId n = 0; n < global.size(); ++n)
        pdom.of(n).for_each([&](std::uint32_t m) { global[n] |= state.covered[m]; });
    return global;
}

NodeSubsumptionRelation node_subsumption(const FlowGraph& g, const DominanceMap& dom,
                                         const DominanceMap& pdom) {
    NodeSubsumptionRelation rel;
    rel.subsumed_by.reserve(g.node_count());
    for (NodeId m = 0; m < g.node_count(); ++m) {
        IndexSet s = dom.of(m) | pdom.of(m);
        s.insert(m);
        rel.subsumed_by.push_back(std::move(s));
    }
    return rel;
}

std::vector<NodeId> unconstrained_nodes(const NodeSubsumptionRelation& rel) {
    const auto n_nodes = static_cast<std::uint32_t>(rel.subsumed_by.size());
    if (n_nodes == 0)
        return {};

    IndexSet remaining = IndexSet::full(n_nodes);
    std::vector<NodeId> chosen;
    while (!remaining.empty()) {
        NodeId best = 0;
        std::uint32_t best_gain = 0;
        for (NodeId m = 0; m < n_nodes; ++m) {
            const std::uint32_t gain = (rel.subsumed_by[m] & remaining).count();
            if (gain > best_gain) {
                best_gain = gain;
                best = m;
            }
        }
        chosen.push_back(best);
        remaining -= rel.subsumed_by[best];
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

std::uint32_t CoverageSummary::percent() const {
    if (total_duas == 0)
        return 0;
    return static_cast<std::uint32_t>(
        std::llround(100.0 * static_cast<double>(covered_duas) / total_duas));
}

CoverageSummary coverage_summary(std::span<const DuaSet> global, const DuaUniverse& universe) {
    CoverageSummary s;
    s.total_duas = universe.size();
    s.no_requirements = universe.size() == 0;
    DuaSet all = universe.empty_set();
    for (const DuaSet& g : global) {
        s.per_node_counts.push_back(g.count());
        all |= g;
    }
    s.covered_duas = all.count();
    return s;
}

} // namespace dsflow
