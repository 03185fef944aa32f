// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsflow/dua.hpp"
#include "dsflow/graph.hpp"
#include "dsflow/oracle.hpp"
#include "dsflow/report.hpp"
#include "dsflow/solver.hpp"

namespace dsflow {

/// Parsed form of an annotated-graph document, independent of the input
/// syntax. Round-trips losslessly through to_json.
///
/// JSON schema (unknown fields are rejected):
///   {
///     "name":  string, optional
///     "nodes": node count (>= 1)
///     "start": node id
///     "exits": [node id, ...]
///     "edges": [[pred, succ], ...]
///     "defs":  {"<node>": ["var", ...], ...}, optional
///     "cuses": {"<node>": ["var", ...], ...}, optional
///     "puses": {"<pred>-<succ>": ["var", ...], ...}, optional
///   }
///
/// The text DSL covers the same content, one declaration per line:
///   graph <name>            header, required first
///   start <n>               required
///   exit <n>                one or more
///   node <n> [def a b ...] [use c d ...]
///   edge <p> <s> [puse x y ...]
/// '#' starts a comment; the node count is 1 + the highest id mentioned.
struct GraphDocument {
    std::string name;
    std::uint32_t nodes = 0;
    NodeId start = 0;
    std::vector<NodeId> exits;
    std::vector<Edge> edges;
    std::map<NodeId, std::vector<Variable>> defs;
    std::map<NodeId, std::vector<Variable>> cuses;
    std::map<Edge, std::vector<Variable>> puses;
};

GraphDocument parse_json(std::string_view text);
GraphDocument parse_dsl(std::string_view text);

/// Dispatches on the first non-whitespace byte: '{' selects JSON.
GraphDocument parse_auto(std::string_view text);

std::string to_json(const GraphDocument& doc);

/// Builds and validates the graph and annotations described by a document.
struct LoadedGraph {
    FlowGraph graph;
    DefUseAnnotations annotations;
    std::vector<std::string> warnings;
};

LoadedGraph materialize(const GraphDocument& doc);

/// Full analysis pipeline output for one document.
struct Analysis {
    std::string name;
    FlowGraph graph;
    DefUseAnnotations annotations;
    std::vector<std::string> warnings;
    DuaUniverse universe;
    NodeFacts facts;
    NodeOrdering order;
    DominanceMap dom;
    DominanceMap pdom;
    EdgeClassification edge_classes;
    SolverState state;
};

Analysis analyze_document(const GraphDocument& doc);

/// Serializable result summary. Node-indexed vectors run over all nodes;
/// DUA references are universe indices.
struct AnalysisReport {
    std::string name;
    std::vector<Dua> duas;
    std::vector<std::vector<std::uint32_t>> local;
    std::optional<std::vector<std::vector<std::uint32_t>>> global;
    std::vector<NodeId> unconstrained;
    CoverageSummary coverage;
    std::uint32_t node_count = 0;
    std::uint32_t edge_count = 0;
    std::uint32_t retreating_edge_count = 0;
    std::uint32_t iterations = 0;
};

AnalysisReport make_report(const Analysis& a, bool include_global);

/// Deterministic renderings of a report: stable key order, nodes ascending,
/// DUA indices ascending. Two runs over the same input yield identical
/// bytes.
std::string render_json(const AnalysisReport& r);
std::string render_text(const AnalysisReport& r);

enum class DotLabels { None, Local, Global };

/// DOT digraph of the flow graph; Local/Global annotate each node with its
/// subsumed DUAs.
std::string render_dot(const Analysis& a, DotLabels labels);

std::string render_discrepancies(const DiscrepancyReport& report, const DuaUniverse& universe);

} // namespace dsflow
