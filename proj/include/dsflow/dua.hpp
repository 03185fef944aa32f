// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dsflow/graph.hpp"
#include "dsflow/index_set.hpp"

namespace dsflow {

/// Variable names are plain identifier tokens, case-sensitive.
using Variable = std::string;

using VariableSet = std::set<Variable>;

/// Def/use sites attached to a flow graph. Definitions and computation
/// uses live on nodes (downward-exposed defs, upward-exposed uses);
/// predicate uses live on edges.
class DefUseAnnotations {
  public:
    void add_def(NodeId n, Variable v) { defs_[n].insert(std::move(v)); }
    void add_cuse(NodeId n, Variable v) { cuses_[n].insert(std::move(v)); }
    void add_puse(Edge e, Variable v) { puses_[e].insert(std::move(v)); }

    bool defines(NodeId n, const Variable& v) const;
    const VariableSet& defs(NodeId n) const;
    const VariableSet& cuses(NodeId n) const;
    const VariableSet& puses(Edge e) const;

    const std::map<NodeId, VariableSet>& all_defs() const { return defs_; }
    const std::map<NodeId, VariableSet>& all_cuses() const { return cuses_; }
    const std::map<Edge, VariableSet>& all_puses() const { return puses_; }

    /// Checks every annotated node/edge against the graph; throws
    /// SchemaError on dangling references. Returns human-readable warnings
    /// for variables that are used but never defined.
    std::vector<std::string> validate(const FlowGraph& g) const;

  private:
    std::map<NodeId, VariableSet> defs_;
    std::map<NodeId, VariableSet> cuses_;
    std::map<Edge, VariableSet> puses_;
};

enum class UseKind : std::uint8_t { Node, Edge };

/// One definition-use association: a def of `var` at `def_node` paired with
/// a computation use at node `use_node` or a predicate use on edge
/// (use_pred, use_node).
struct Dua {
    NodeId def_node;
    UseKind kind;
    NodeId use_pred; // meaningful only for edge uses; 0 otherwise
    NodeId use_node;
    Variable var;

    bool is_edge_use() const { return kind == UseKind::Edge; }
    Edge use_edge() const { return Edge{use_pred, use_node}; }

    auto operator<=>(const Dua&) const = default;
};

/// Renders "(d, u, var)" or "(d, (u',u), var)".
std::string to_string(const Dua& dua);

/// The ordered set of all DUAs required for a graph. Indices are dense and
/// deterministic: sorted by def node, use kind (node uses first), use
/// location, then variable name.
class DuaUniverse {
  public:
    DuaUniverse() = default;
    explicit DuaUniverse(std::vector<Dua> duas);

    std::uint32_t size() const { return static_cast<std::uint32_t>(duas_.size()); }
    const Dua& operator[](std::uint32_t i) const { return duas_[i]; }
    const std::vector<Dua>& all() const { return duas_; }

    /// Index of a DUA, or nullopt if it is not part of the universe.
    std::optional<std::uint32_t> index_of(const Dua& d) const;

    IndexSet empty_set() const { return IndexSet(size()); }
    IndexSet full_set() const { return IndexSet::full(size()); }

  private:
    std::vector<Dua> duas_;
};

/// Sets of DUA indices; the semi-lattice value type, with intersection as
/// the meet operation.
using DuaSet = IndexSet;

/// Everything reachable from a def at `d` of `var` with that def still live:
/// `nodes` holds endpoints n of nonempty paths d,...,n whose interior nodes
/// never redefine var (the endpoint itself may); `edges` holds edge ids
/// whose source is d or is such a node that does not redefine var.
struct DefClearReach {
    IndexSet nodes; // over the node universe
    IndexSet edges; // over the edge-id universe
};

DefClearReach def_clear_reach(const FlowGraph& g, const DefUseAnnotations& ann,
                              const Variable& var, NodeId d);

/// All-uses requirement enumeration: one DUA for every def that reaches a
/// matching use over some def-clear path. Same-node def/use pairs require a
/// nonempty def-clear cycle.
DuaUniverse enumerate_duas(const FlowGraph& g, const DefUseAnnotations& ann);

/// Per-node fact sets over a DUA universe:
///   born(n)        defs at n activate these DUAs
///   disabled(n)    redefinition at n deactivates these (def node != n)
///   pot_covered(n) DUAs whose use node is n
///   sleepy(n)      edge DUAs whose use edge does not leave n
struct NodeFacts {
    std::vector<DuaSet> born;
    std::vector<DuaSet> disabled;
    std::vector<DuaSet> pot_covered;
    std::vector<DuaSet> sleepy;
};

NodeFacts node_facts(const FlowGraph& g, const DefUseAnnotations& ann, const DuaUniverse& universe);

} // namespace dsflow
