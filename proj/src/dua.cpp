// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dsflow/dua.hpp"

#include <algorithm>

namespace dsflow {

namespace {
const VariableSet kEmptyVars;
}

bool DefUseAnnotations::defines(NodeId n, const Variable& v) const {
    const auto it = defs_.find(n);
    return it != defs_.end() && it->second.count(v) != 0;
}

const VariableSet& DefUseAnnotations::defs(NodeId n) const {
    const auto it = defs_.find(n);
    return it == defs_.end() ? kEmptyVars : it->second;
}

const VariableSet& DefUseAnnotations::cuses(NodeId n) const {
    const auto it = cuses_.find(n);
    return it == cuses_.end() ? kEmptyVars : it->second;
}

const VariableSet& DefUseAnnotations::puses(Edge e) const {
    const auto it = puses_.find(e);
    return it == puses_.end() ? kEmptyVars : it->second;
}

std::vector<std::string> DefUseAnnotations::validate(const FlowGraph& g) const {
    for (const auto& [n, vars] : defs_)
        if (n >= g.node_count())
            throw SchemaError("$.defs." + std::to_string(n),
                              "def annotation on unknown node " + std::to_string(n));
    for (const auto& [n, vars] : cuses_)
        if (n >= g.node_count())
            throw SchemaError("$.cuses." + std::to_string(n),
                              "use annotation on unknown node " + std::to_string(n));
    for (const auto& [e, vars] : puses_)
        if (!g.has_edge(e.pred, e.succ))
            throw SchemaError("$.puses." + std::to_string(e.pred) + "-" + std::to_string(e.succ),
                              "predicate-use annotation on unknown edge (" +
                                  std::to_string(e.pred) + "," + std::to_string(e.succ) + ")");

    VariableSet defined;
    for (const auto& [n, vars] : defs_)
        defined.insert(vars.begin(), vars.end());

    VariableSet used;
    for (const auto& [n, vars] : cuses_)
        used.insert(vars.begin(), vars.end());
    for (const auto& [e, vars] : puses_)
        used.insert(vars.begin(), vars.end());

    std::vector<std::string> warnings;
    for (const auto& v : used)
        if (defined.count(v) == 0)
            warnings.push_back("variable '" + v + "' is used but never defined");
    return warnings;
}

std::string to_string(const Dua& dua) {
    std::string use = dua.is_edge_use() ? "(" + std::to_string(dua.use_pred) + "," +
                                              std::to_string(dua.use_node) + ")"
                                        : std::to_string(dua.use_node);
    return "(" + std::to_string(dua.def_node) + ", " + use + ", " + dua.var + ")";
}

namespace {

// Universe order: def node, use kind (node uses first), use location,
// variable name.
bool universe_less(const Dua& a, const Dua& b) {
    if (a.def_node != b.def_node)
        return a.def_node < b.def_node;
    if (a.kind != b.kind)
        return a.kind < b.kind;
    if (a.kind == UseKind::Edge && a.use_pred != b.use_pred)
        return a.use_pred < b.use_pred;
    if (a.use_node != b.use_node)
        return a.use_node < b.use_node;
    return a.var < b.var;
}

} // namespace

DuaUniverse::DuaUniverse(std::vector<Dua> duas) : duas_(std::move(duas)) {
    std::sort(duas_.begin(), duas_.end(), universe_less);
    duas_.erase(std::unique(duas_.begin(), duas_.end()), duas_.end());
}

std::optional<std::uint32_t> DuaUniverse::index_of(const Dua& d) const {
    const auto it = std::lower_bound(duas_.begin(), duas_.end(), d, universe_less);
    if (it == duas_.end() || !(*it == d))
        return std::nullopt;
    return static_cast<std::uint32_t>(it - duas_.begin());
}

DefClearReach def_clear_reach(const FlowGraph& g, const DefUseAnnotations& ann,
                              const Variable& var, NodeId d) {
    if (!ann.defines(d, var))
        throw AnnotationError("variable '" + var + "' is not defined at node " + std::to_string(d));

    DefClearReach r{IndexSet(g.node_count()), IndexSet(g.edge_count())};

    // Forward search from d. A node enters `r.nodes` when the def is live on
    // entry; the def survives through a node only if the node does not
    // redefine var. The def node itself relays regardless (its def is the
    // source), so its outgoing edges are always live.
    std::vector<NodeId> work;
    auto relay = [&](NodeId from) {
        for (NodeId to : g.successors(from)) {
            r.edges.insert(*g.edge_index(from, to));
            if (!r.nodes.contains(to)) {
                r.nodes.insert(to);
                work.push_back(to);
            }
        }
    };

    relay(d);
    while (!work.empty()) {
        const NodeId n = work.back();
        work.pop_back();
        if (!ann.defines(n, var))
            relay(n);
    }
    return r;
}

DuaUniverse enumerate_duas(const FlowGraph& g, const DefUseAnnotations& ann) {
    std::vector<Dua> duas;
    for (const auto& [def_site, vars] : ann.all_defs()) {
        const NodeId d = def_site;
        for (const Variable& var : vars) {
            const DefClearReach reach = def_clear_reach(g, ann, var, d);
            reach.nodes.for_each([&](std::uint32_t u) {
                if (ann.cuses(u).count(var))
                    duas.push_back(Dua{d, UseKind::Node, 0, u, var});
            });
            reach.edges.for_each([&](std::uint32_t ei) {
                const Edge e = g.edges()[ei];
                if (ann.puses(e).count(var))
                    duas.push_back(Dua{d, UseKind::Edge, e.pred, e.succ, var});
            });
        }
    }
    return DuaUniverse(std::move(duas));
}

NodeFacts node_facts(const FlowGraph& g, const DefUseAnnotations& ann,
                     const DuaUniverse& universe) {
    const std::uint32_t n_nodes = g.node_count();
    NodeFacts f;
    f.born.assign(n_nodes, universe.empty_set());
    f.disabled.assign(n_nodes, universe.empty_set());
    f.pot_covered.assign(n_nodes, universe.empty_set());
    f.sleepy.assign(n_nodes, universe.empty_set());

    for (std::uint32_t i = 0; i < universe.size(); ++i) {
        const Dua& dua = universe[i];
        f.born[dua.def_node].insert(i);
        f.pot_covered[dua.use_node].insert(i);
        for (NodeId n = 0; n < n_nodes; ++n) {
            if (n != dua.def_node && ann.defines(n, dua.var))
                f.disabled[n].insert(i);
            if (dua.is_edge_use() && dua.use_pred != n)
                f.sleepy[n].insert(i);
        }
    }
    return f;
}

} // namespace dsflow
