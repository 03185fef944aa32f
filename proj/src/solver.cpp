// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dsflow/solver.hpp"

#include <utility>

namespace dsflow {

namespace {

std::vector<bool> back_edge_flags(const FlowGraph& g, std::span<const Edge> back_edges) {
    std::vector<bool> is_back(g.edge_count(), false);
    for (const Edge& e : back_edges)
        if (const auto idx = g.edge_index(e.pred, e.succ))
            is_back[*idx] = true;
    return is_back;
}

DuaSet sleepy_union(const FlowGraph& g, const NodeFacts& facts, NodeId n,
                    const std::vector<bool>& is_back, std::uint32_t universe_size) {
    DuaSet s(universe_size);
    for (NodeId p : g.predecessors(n))
        if (!is_back[*g.edge_index(p, n)])
            s |= facts.sleepy[p];
    return s;
}

} // namespace

DuaSet cur_sleepy(const FlowGraph& g, const NodeFacts& facts, NodeId n,
                  std::span<const Edge> back_edges) {
    if (g.predecessors(n).empty())
        throw Error("node " + std::to_string(n) + " has no predecessors");
    const auto universe_size =
        facts.sleepy.empty() ? 0 : facts.sleepy.front().universe_size();
    return sleepy_union(g, facts, n, back_edge_flags(g, back_edges), universe_size);
}

SolverState solve(const FlowGraph& g, const NodeFacts& facts, const DuaUniverse& universe,
                  const NodeOrdering& order, std::span<const Edge> back_edges,
                  SolveTrace* trace) {
    const std::uint32_t n_nodes = g.node_count();
    const NodeId start = g.start();
    const std::vector<bool> is_back = back_edge_flags(g, back_edges);

    // Sleepy sets and back edges are constant, so the per-node blocked set
    // can be computed once up front.
    std::vector<DuaSet> blocked;
    blocked.reserve(n_nodes);
    for (NodeId n = 0; n < n_nodes; ++n)
        blocked.push_back(sleepy_union(g, facts, n, is_back, universe.size()));

    SolverState st;
    st.in.assign(n_nodes, universe.empty_set());
    st.out.assign(n_nodes, universe.full_set());
    st.covered.assign(n_nodes, universe.full_set());
    st.out[start] = facts.born[start];
    st.covered[start] = universe.empty_set();

    const auto snapshot = [&] {
        if (trace) {
            trace->out_by_pass.push_back(st.out);
            trace->covered_by_pass.push_back(st.covered);
        }
    };
    snapshot();

    const auto meet_preds = [&](const std::vector<DuaSet>& from, NodeId n) {
        const auto preds = g.predecessors(n);
        DuaSet acc = from[preds.front()];
        for (std::size_t i = 1; i < preds.size(); ++i)
            acc &= from[preds[i]];
        return acc;
    };

    const auto evaluate_node = [&](NodeId n, bool update_out) {
        bool changed = false;
        st.in[n] = meet_preds(st.out, n);
        DuaSet covered =
            meet_preds(st.covered, n) | ((st.in[n] - blocked[n]) & facts.pot_covered[n]);
        if (covered != st.covered[n]) {
            st.covered[n] = std::move(covered);
            changed = true;
        }
        if (update_out) {
            DuaSet out = facts.born[n] | (st.in[n] - facts.disabled[n]) | st.covered[n];
            if (out != st.out[n]) {
                st.out[n] = std::move(out);
                changed = true;
            }
        }
        return changed;
    };

    // Quiescence must track the covered sets too: a covered drop can hide
    // inside an unchanged out set (the DUA is still available there) and
    // only surface in a successor's out on the following pass. Stopping on
    // out changes alone would freeze that stale state under some
    // visitation orders.
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId n : order.sequence) {
            if (n == start)
                continue;
            changed |= evaluate_node(n, /*update_out=*/true);
            ++st.stats.visits;
        }
        ++st.stats.iterations;
        snapshot();
    }

    // out has converged; refresh in/covered from the final out values.
    for (NodeId n : order.sequence) {
        if (n == start)
            continue;
        evaluate_node(n, /*update_out=*/false);
        ++st.stats.visits;
    }
    snapshot();

    return st;
}

bool iteration_bound_check(const SolverState& state, std::uint32_t retreating_count) {
    return state.stats.iterations <= retreating_count + 2;
}

} // namespace dsflow
