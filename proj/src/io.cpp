// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dsflow/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace dsflow {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

bool is_identifier(std::string_view s) {
    if (s.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

[[noreturn]] void json_syntax_error(std::string_view text, std::size_t byte,
                                    const std::string& what) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    throw ParseError(line, col, what);
}

std::uint32_t require_node_id(const json& v, std::uint32_t node_count, const std::string& path) {
    if (!v.is_number_unsigned())
        throw SchemaError(path, "expected a non-negative node id at " + path);
    const auto id = v.get<std::uint64_t>();
    if (id >= node_count)
        throw SchemaError(path, "node id " + std::to_string(id) + " out of range at " + path +
                                    " (graph has " + std::to_string(node_count) + " nodes)");
    return static_cast<std::uint32_t>(id);
}

std::uint32_t parse_node_key(const std::string& key, std::uint32_t node_count,
                             const std::string& path) {
    if (key.empty() || key.size() > 9 || !std::all_of(key.begin(), key.end(), [](unsigned char c) {
            return std::isdigit(c);
        }))
        throw SchemaError(path, "expected a numeric node key at " + path);
    const auto id = std::stoull(key);
    if (id >= node_count)
        throw SchemaError(path, "node id " + key + " out of range at " + path + " (graph has " +
                                    std::to_string(node_count) + " nodes)");
    return static_cast<std::uint32_t>(id);
}

std::vector<Variable> parse_var_list(const json& v, const std::string& path) {
    if (!v.is_array())
        throw SchemaError(path, "expected an array of variable names at " + path);
    std::vector<Variable> vars;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string item_path = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_string() || !is_identifier(v[i].get<std::string>()))
            throw SchemaError(item_path, "expected an identifier at " + item_path);
        vars.push_back(v[i].get<std::string>());
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

} // namespace

GraphDocument parse_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        json_syntax_error(text, e.byte, e.what());
    }
    if (!j.is_object())
        throw SchemaError("$", "top-level value must be an object");

    static const std::vector<std::string> known = {"name",  "nodes", "start", "exits",
                                                   "edges", "defs",  "cuses", "puses"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw SchemaError("$." + key, "unknown field '" + key + "'");
    for (const std::string req : {"nodes", "start", "exits", "edges"})
        if (!j.contains(req))
            throw SchemaError("$." + req, "missing required field '" + req + "'");

    GraphDocument doc;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw SchemaError("$.name", "expected a string at $.name");
        doc.name = j["name"].get<std::string>();
    }

    constexpr std::uint64_t kMaxNodes = 1u << 24;
    if (!j["nodes"].is_number_unsigned() || j["nodes"].get<std::uint64_t>() == 0 ||
        j["nodes"].get<std::uint64_t>() > kMaxNodes)
        throw SchemaError("$.nodes", "expected a node count in [1, 2^24] at $.nodes");
    doc.nodes = static_cast<std::uint32_t>(j["nodes"].get<std::uint64_t>());

    doc.start = require_node_id(j["start"], doc.nodes, "$.start");

    if (!j["exits"].is_array())
        throw SchemaError("$.exits", "expected an array at $.exits");
    for (std::size_t i = 0; i < j["exits"].size(); ++i)
        doc.exits.push_back(
            require_node_id(j["exits"][i], doc.nodes, "$.exits[" + std::to_string(i) + "]"));

    if (!j["edges"].is_array())
        throw SchemaError("$.edges", "expected an array at $.edges");
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        const std::string path = "$.edges[" + std::to_string(i) + "]";
        const json& e = j["edges"][i];
        if (!e.is_array() || e.size() != 2)
            throw SchemaError(path, "expected a [pred, succ] pair at " + path);
        doc.edges.push_back(Edge{require_node_id(e[0], doc.nodes, path + "[0]"),
                                 require_node_id(e[1], doc.nodes, path + "[1]")});
    }

    for (const std::string field : {"defs", "cuses"}) {
        if (!j.contains(field))
            continue;
        const std::string base = "$." + field;
        if (!j[field].is_object())
            throw SchemaError(base, "expected an object at " + base);
        auto& target = field == "defs" ? doc.defs : doc.cuses;
        for (const auto& [key, value] : j[field].items()) {
            const std::string path = base + "." + key;
            target[parse_node_key(key, doc.nodes, path)] = parse_var_list(value, path);
        }
    }

    if (j.contains("puses")) {
        if (!j["puses"].is_object())
            throw SchemaError("$.puses", "expected an object at $.puses");
        for (const auto& [key, value] : j["puses"].items()) {
            const std::string path = "$.puses." + key;
            const auto dash = key.find('-');
            if (dash == std::string::npos)
                throw SchemaError(path, "expected an edge key '<pred>-<succ>' at " + path);
            const Edge e{parse_node_key(key.substr(0, dash), doc.nodes, path),
                         parse_node_key(key.substr(dash + 1), doc.nodes, path)};
            doc.puses[e] = parse_var_list(value, path);
        }
    }
    return doc;
}

namespace {

class DslParser {
  public:
    explicit DslParser(std::string_view text) : text_(text) {}

    GraphDocument run() {
        std::size_t line_no = 0;
        std::istringstream stream{std::string(text_)};
        std::string raw;
        while (std::getline(stream, raw)) {
            ++line_no;
            if (const auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            std::istringstream ls(raw);
            std::vector<std::string> tokens;
            std::string tok;
            while (ls >> tok)
                tokens.push_back(tok);
            if (tokens.empty())
                continue;
            handle_line(line_no, tokens);
        }
        if (!saw_header_)
            throw ParseError(1, 1, "graph header expected");
        if (!saw_start_)
            throw ParseError(line_no == 0 ? 1 : line_no, 1, "start declaration expected");
        if (doc_.exits.empty())
            throw ParseError(line_no == 0 ? 1 : line_no, 1, "exit declaration expected");
        doc_.nodes = max_id_ + 1;
        return std::move(doc_);
    }

  private:
    void handle_line(std::size_t line, const std::vector<std::string>& tokens) {
        const std::string& head = tokens[0];
        if (!saw_header_) {
            if (head != "graph")
                throw ParseError(line, 1, "graph header expected");
            if (tokens.size() != 2)
                throw ParseError(line, 1, "expected 'graph <name>'");
            doc_.name = tokens[1];
            saw_header_ = true;
            return;
        }
        if (head == "graph") {
            throw ParseError(line, 1, "duplicate graph header");
        } else if (head == "start") {
            if (saw_start_)
                throw ParseError(line, 1, "duplicate start declaration");
            if (tokens.size() != 2)
                throw ParseError(line, 1, "expected 'start <node>'");
            doc_.start = node_id(line, tokens[1]);
            saw_start_ = true;
        } else if (head == "exit") {
            if (tokens.size() != 2)
                throw ParseError(line, 1, "expected 'exit <node>'");
            doc_.exits.push_back(node_id(line, tokens[1]));
        } else if (head == "node") {
            parse_node(line, tokens);
        } else if (head == "edge") {
            parse_edge(line, tokens);
        } else {
            throw ParseError(line, 1,
                             "unknown declaration '" + head +
                                 "' (expected start, exit, node, or edge)");
        }
    }

    void parse_node(std::size_t line, const std::vector<std::string>& tokens) {
        if (tokens.size() < 2)
            throw ParseError(line, 1, "expected 'node <id> [def ...] [use ...]'");
        const NodeId n = node_id(line, tokens[1]);
        std::vector<Variable>* sink = nullptr;
        bool saw_def = false, saw_use = false;
        for (std::size_t i = 2; i < tokens.size(); ++i) {
            if (tokens[i] == "def") {
                if (saw_def)
                    throw ParseError(line, 1, "duplicate 'def' section");
                saw_def = true;
                sink = &doc_.defs[n];
            } else if (tokens[i] == "use") {
                if (saw_use)
                    throw ParseError(line, 1, "duplicate 'use' section");
                saw_use = true;
                sink = &doc_.cuses[n];
            } else if (sink) {
                sink->push_back(variable(line, tokens[i]));
            } else {
                throw ParseError(line, 1, "expected 'def' or 'use' before '" + tokens[i] + "'");
            }
        }
        dedup(doc_.defs, n);
        dedup(doc_.cuses, n);
    }

    void parse_edge(std::size_t line, const std::vector<std::string>& tokens) {
        if (tokens.size() < 3)
            throw ParseError(line, 1, "expected 'edge <pred> <succ> [puse ...]'");
        const Edge e{node_id(line, tokens[1]), node_id(line, tokens[2])};
        doc_.edges.push_back(e);
        if (tokens.size() > 3) {
            if (tokens[3] != "puse")
                throw ParseError(line, 1, "expected 'puse' after the edge endpoints");
            if (tokens.size() == 4)
                throw ParseError(line, 1, "expected at least one variable after 'puse'");
            auto& vars = doc_.puses[e];
            for (std::size_t i = 4; i < tokens.size(); ++i)
                vars.push_back(variable(line, tokens[i]));
            std::sort(vars.begin(), vars.end());
            vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        }
    }

    template <typename Map>
    void dedup(Map& m, NodeId n) {
        const auto it = m.find(n);
        if (it == m.end())
            return;
        std::sort(it->second.begin(), it->second.end());
        it->second.erase(std::unique(it->second.begin(), it->second.end()), it->second.end());
    }

    NodeId node_id(std::size_t line, const std::string& tok) {
        if (tok.empty() || tok.size() > 9 || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
                return std::isdigit(c);
            }))
            throw ParseError(line, 1, "expected a node id, got '" + tok + "'");
        const auto id = std::stoull(tok);
        max_id_ = std::max<std::uint64_t>(max_id_, id);
        return static_cast<NodeId>(id);
    }

    Variable variable(std::size_t line, const std::string& tok) {
        if (!is_identifier(tok))
            throw ParseError(line, 1, "expected a variable identifier, got '" + tok + "'");
        return tok;
    }

    std::string_view text_;
    GraphDocument doc_;
    bool saw_header_ = false;
    bool saw_start_ = false;
    std::uint64_t max_id_ = 0;
};

} // namespace

GraphDocument parse_dsl(std::string_view text) {
    return DslParser(text).run();
}

GraphDocument parse_auto(std::string_view text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        return c == '{' ? parse_json(text) : parse_dsl(text);
    }
    throw ParseError(1, 1, "graph header expected");
}

std::string to_json(const GraphDocument& doc) {
    ordered_json j;
    j["name"] = doc.name;
    j["nodes"] = doc.nodes;
    j["start"] = doc.start;
    j["exits"] = doc.exits;
    j["edges"] = ordered_json::array();
    for (const Edge& e : doc.edges)
        j["edges"].push_back({e.pred, e.succ});
    for (const auto& [field, source] :
         {std::pair{"defs", &doc.defs}, std::pair{"cuses", &doc.cuses}}) {
        if (source->empty())
            continue;
        ordered_json obj = ordered_json::object();
        for (const auto& [n, vars] : *source)
            obj[std::to_string(n)] = vars;
        j[field] = std::move(obj);
    }
    if (!doc.puses.empty()) {
        ordered_json obj = ordered_json::object();
        for (const auto& [e, vars] : doc.puses)
            obj[std::to_string(e.pred) + "-" + std::to_string(e.succ)] = vars;
        j["puses"] = std::move(obj);
    }
    return j.dump(2) + "\n";
}

LoadedGraph materialize(const GraphDocument& doc) {
    FlowGraph g = FlowGraph::build(doc.nodes, doc.edges, doc.start, doc.exits);
    DefUseAnnotations ann;
    for (const auto& [n, vars] : doc.defs)
        for (const Variable& v : vars)
            ann.add_def(n, v);
    for (const auto& [n, vars] : doc.cuses)
        for (const Variable& v : vars)
            ann.add_cuse(n, v);
    for (const auto& [e, vars] : doc.puses)
        for (const Variable& v : vars)
            ann.add_puse(e, v);
    std::vector<std::string> warnings = ann.validate(g);
    return LoadedGraph{std::move(g), std::move(ann), std::move(warnings)};
}

Analysis analyze_document(const GraphDocument& doc) {
    LoadedGraph loaded = materialize(doc);
    DuaUniverse universe = enumerate_duas(loaded.graph, loaded.annotations);
    NodeFacts facts = node_facts(loaded.graph, loaded.annotations, universe);
    NodeOrdering order = reverse_postorder(loaded.graph);
    DominanceMap dom = dominators(loaded.graph);
    DominanceMap pdom = post_dominators(loaded.graph);
    EdgeClassification edge_classes = classify_edges(loaded.graph, order, dom);
    SolverState state = solve(loaded.graph, facts, universe, order, edge_classes.back_edges);
    return Analysis{doc.name,
                    std::move(loaded.graph),
                    std::move(loaded.annotations),
                    std::move(loaded.warnings),
                    std::move(universe),
                    std::move(facts),
                    std::move(order),
                    std::move(dom),
                    std::move(pdom),
                    std::move(edge_classes),
                    std::move(state)};
}

AnalysisReport make_report(const Analysis& a, bool include_global) {
    AnalysisReport r;
    r.name = a.name;
    r.duas = a.universe.all();
    const std::vector<DuaSet> local = local_map(a.state);
    const std::vector<DuaSet> global = global_map(a.state, a.pdom);
    for (const DuaSet& s : local)
        r.local.push_back(s.to_vector());
    if (include_global) {
        r.global.emplace();
        for (const DuaSet& s : global)
            r.global->push_back(s.to_vector());
    }
    r.unconstrained = unconstrained_nodes(node_subsumption(a.graph, a.dom, a.pdom));
    r.coverage = coverage_summary(global, a.universe);
    r.node_count = a.graph.node_count();
    r.edge_count = a.graph.edge_count();
    r.retreating_edge_count = static_cast<std::uint32_t>(a.edge_classes.retreating_edges.size());
    r.iterations = a.state.stats.iterations;
    return r;
}

namespace {

ordered_json dua_json(const Dua& d, std::uint32_t index) {
    ordered_json j;
    j["index"] = index;
    j["def"] = d.def_node;
    if (d.is_edge_use()) {
        j["kind"] = "edge";
        j["use"] = {d.use_pred, d.use_node};
    } else {
        j["kind"] = "node";
        j["use"] = d.use_node;
    }
    j["var"] = d.var;
    return j;
}

ordered_json node_index_map(const std::vector<std::vector<std::uint32_t>>& per_node) {
    ordered_json obj = ordered_json::object();
    for (std::size_t n = 0; n < per_node.size(); ++n)
        obj[std::to_string(n)] = per_node[n];
    return obj;
}

std::string dua_list_line(const std::vector<std::uint32_t>& indices, const std::vector<Dua>& duas) {
    if (indices.empty())
        return "-";
    std::string out;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(duas[indices[i]]);
    }
    return out;
}

} // namespace

std::string render_json(const AnalysisReport& r) {
    ordered_json j;
    j["name"] = r.name;
    j["stats"] = {{"nodes", r.node_count},
                  {"edges", r.edge_count},
                  {"retreating_edges", r.retreating_edge_count},
                  {"iterations", r.iterations},
                  {"duas", r.duas.size()}};
    j["duas"] = ordered_json::array();
    for (std::uint32_t i = 0; i < r.duas.size(); ++i)
        j["duas"].push_back(dua_json(r.duas[i], i));
    j["local"] = node_index_map(r.local);
    if (r.global)
        j["global"] = node_index_map(*r.global);
    j["unconstrained"] = r.unconstrained;
    j["coverage"] = {{"covered", r.coverage.covered_duas},
                     {"total", r.coverage.total_duas},
                     {"percent", r.coverage.percent()}};
    if (r.coverage.no_requirements)
        j["coverage"]["no_requirements"] = true;
    return j.dump(2) + "\n";
}

std::string render_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "graph " << (r.name.empty() ? "(unnamed)" : r.name) << ": " << r.node_count
       << " nodes, " << r.edge_count << " edges, " << r.duas.size() << " duas\n";
    os << "local subsumption:\n";
    for (std::size_t n = 0; n < r.local.size(); ++n)
        os << "  node " << n << ": " << dua_list_line(r.local[n], r.duas) << "\n";
    if (r.global) {
        os << "global subsumption:\n";
        for (std::size_t n = 0; n < r.global->size(); ++n)
            os << "  node " << n << ": " << dua_list_line((*r.global)[n], r.duas) << "\n";
    }
    os << "unconstrained nodes:";
    for (NodeId n : r.unconstrained)
        os << " " << n;
    os << "\n";
    if (r.coverage.no_requirements)
        os << "coverage: no requirements\n";
    else
        os << "coverage: " << r.coverage.covered_duas << "/" << r.coverage.total_duas << " ("
           << r.coverage.percent() << "%)\n";
    os << "iterations: " << r.iterations << " (retreating edges: " << r.retreating_edge_count
       << ")\n";
    return os.str();
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string render_dot(const Analysis& a, DotLabels labels) {
    const std::vector<DuaSet> sets = labels == DotLabels::Global
                                         ? global_map(a.state, a.pdom)
                                         : local_map(a.state);
    std::ostringstream os;
    os << "digraph \"" << dot_escape(a.name.empty() ? "flowgraph" : a.name) << "\" {\n";
    os << "  node [shape=box];\n";
    for (NodeId n = 0; n < a.graph.node_count(); ++n) {
        std::string label = std::to_string(n);
        if (labels != DotLabels::None) {
            sets[n].for_each([&](std::uint32_t i) {
                label += "\\n" + dot_escape(to_string(a.universe[i]));
            });
        }
        os << "  n" << n << " [label=\"" << label << "\"";
        if (n == a.graph.start())
            os << ", style=bold";
        if (a.graph.is_exit(n))
            os << ", peripheries=2";
        os << "];\n";
    }
    for (const Edge& e : a.graph.edges())
        os << "  n" << e.pred << " -> n" << e.succ << ";\n";
    os << "}\n";
    return os.str();
}

std::string render_discrepancies(const DiscrepancyReport& report, const DuaUniverse& universe) {
    if (report.empty())
        return "solver and path oracle agree on every node\n";
    std::ostringstream os;
    os << "solver and path oracle disagree on " << report.nodes.size() << " node(s):\n";
    for (const NodeDiscrepancy& d : report.nodes) {
        os << "  node " << d.node << ":\n";
        d.solver_only.for_each([&](std::uint32_t i) {
            os << "    solver only: " << to_string(universe[i]) << "\n";
        });
        d.oracle_only.for_each([&](std::uint32_t i) {
            os << "    oracle only: " << to_string(universe[i]) << "\n";
        });
    }
    return os.str();
}

} // namespace dsflow
