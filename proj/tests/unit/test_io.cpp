// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "dsflow/io.hpp"
#include "fixtures.hpp"

using namespace dsflow;
using namespace dsflow::testing;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(DSFLOW_FIXTURES_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Minimal well-formedness check for the DOT output: digraph header, brace
// balance, and every statement shaped as either `id [attrs];`, `id -> id;`
// or an `attr=value` default list.
void check_dot_grammar(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("digraph ", 0) == 0);
    CHECK(line.back() == '{');

    bool closed = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line == "}") {
            closed = true;
            continue;
        }
        CHECK_FALSE(closed);
        CHECK(line.back() == ';');
        std::string body = line.substr(0, line.size() - 1);
        body.erase(0, body.find_first_not_of(' '));

        const auto arrow = body.find("->");
        if (arrow != std::string::npos) {
            // edge statement: id -> id
            const auto is_id = [](std::string s) {
                s.erase(0, s.find_first_not_of(' '));
                s.erase(s.find_last_not_of(' ') + 1);
                if (s.empty())
                    return false;
                for (char c : s)
                    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                        return false;
                return true;
            };
            CHECK(is_id(body.substr(0, arrow)));
            CHECK(is_id(body.substr(arrow + 2)));
            continue;
        }
        // node or defaults statement: name [k=v, ...]
        const auto bracket = body.find('[');
        if (bracket == std::string::npos)
            continue;
        CHECK(body.back() == ']');
        // quotes must balance, counting only unescaped ones
        int quotes = 0;
        for (std::size_t i = bracket; i < body.size(); ++i)
            if (body[i] == '"' && body[i - 1] != '\\')
                ++quotes;
        CHECK(quotes % 2 == 0);
    }
    CHECK(closed);
}

} // namespace

TEST_CASE("json fixture loads the max graph") {
    const GraphDocument doc = parse_json(read_fixture("max.json"));
    CHECK(doc.name == "max");
    CHECK(doc.nodes == 7);
    const LoadedGraph loaded = materialize(doc);
    CHECK(loaded.warnings.empty());
    CHECK(enumerate_duas(loaded.graph, loaded.annotations).size() == 24);
}

TEST_CASE("minimal json document") {
    const GraphDocument doc = parse_json(R"({"nodes":1,"start":0,"exits":[0],"edges":[]})");
    const LoadedGraph loaded = materialize(doc);
    CHECK(loaded.graph.node_count() == 1);
    CHECK(enumerate_duas(loaded.graph, loaded.annotations).size() == 0);
}

TEST_CASE("json syntax errors carry a position") {
    try {
        parse_json("{\n  \"nodes\": 1,\n  oops\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("json schema violations carry a field path") {
    const auto path_of = [](const std::string& text) {
        try {
            parse_json(text);
        } catch (const SchemaError& e) {
            return e.field_path();
        }
        FAIL("expected SchemaError");
        return std::string();
    };

    CHECK(path_of(R"({"nodes":1,"start":0,"exits":[0],"edges":[],"bogus":1})") == "$.bogus");
    CHECK(path_of(R"({"start":0,"exits":[0],"edges":[]})") == "$.nodes");
    CHECK(path_of(R"({"nodes":7,"start":0,"exits":[6],"edges":[],"puses":{"9-0":["x"]}})") ==
          "$.puses.9-0");
    CHECK(path_of(R"({"nodes":2,"start":0,"exits":[1],"edges":[[0,7]]})") == "$.edges[0][1]");
    CHECK(path_of(R"({"nodes":2,"start":5,"exits":[1],"edges":[[0,1]]})") == "$.start");
    CHECK(path_of(R"({"nodes":2,"start":0,"exits":[1],"edges":[[0,1]],"defs":{"0":[""]}})") ==
          "$.defs.0[0]");
    CHECK(path_of(R"({"nodes":0,"start":0,"exits":[0],"edges":[]})") == "$.nodes");
    CHECK(path_of(R"({"nodes":99999999999,"start":0,"exits":[0],"edges":[]})") == "$.nodes");
    CHECK(path_of(
              R"({"nodes":2,"start":0,"exits":[1],"edges":[[0,1]],"defs":{"99999999999":["x"]}})") ==
          "$.defs.99999999999");
}

TEST_CASE("puse on a missing edge is a schema error") {
    const GraphDocument doc =
        parse_json(R"({"nodes":3,"start":0,"exits":[2],"edges":[[0,1],[1,2]],"puses":{"0-2":["x"]}})");
    CHECK_THROWS_AS(materialize(doc), SchemaError);
}

TEST_CASE("dsl fixture matches the json fixture byte for byte") {
    const AnalysisReport from_json =
        make_report(analyze_document(parse_auto(read_fixture("max.json"))), true);
    const AnalysisReport from_dsl =
        make_report(analyze_document(parse_auto(read_fixture("max.cfg"))), true);
    CHECK(render_json(from_json) == render_json(from_dsl));
    CHECK(render_text(from_json) == render_text(from_dsl));
}

TEST_CASE("reports are deterministic across runs") {
    const std::string text = read_fixture("max.json");
    const auto render = [&] {
        return render_json(make_report(analyze_document(parse_auto(text)), true));
    };
    CHECK(render() == render());
}

TEST_CASE("dsl errors") {
    CHECK_THROWS_WITH_AS(parse_dsl(""), "graph header expected", ParseError);
    CHECK_THROWS_WITH_AS(parse_dsl("start 0\n"), "graph header expected", ParseError);
    CHECK_THROWS_AS(parse_dsl("graph g\nexit 0\n"), ParseError);           // missing start
    CHECK_THROWS_AS(parse_dsl("graph g\nstart 0\n"), ParseError);          // missing exit
    CHECK_THROWS_AS(parse_dsl("graph g\nstart 0\nexit 0\nnode x\n"), ParseError);
    CHECK_THROWS_AS(parse_dsl("graph g\nstart 0\nexit 0\nnode 99999999999\n"), ParseError);
    CHECK_THROWS_AS(parse_dsl("graph g\nstart 0\nexit 0\nfrob 1\n"), ParseError);
    CHECK_THROWS_AS(parse_dsl("graph g\nstart 0\nexit 1\nedge 0 1 puse\n"), ParseError);

    try {
        parse_dsl("graph g\nstart 0\nexit 1\nedge 0 1\nedgy 1 2\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
    }
}

TEST_CASE("dsl puse lists attach to the edge") {
    const GraphDocument doc = parse_dsl("graph g\n"
                                        "start 0\n"
                                        "exit 2\n"
                                        "node 0 def i length\n"
                                        "edge 0 1 puse i length\n"
                                        "edge 1 2\n");
    const auto it = doc.puses.find(Edge{0, 1});
    REQUIRE(it != doc.puses.end());
    CHECK(it->second == std::vector<Variable>{"i", "length"});
    CHECK(doc.nodes == 3);
}

TEST_CASE("document round-trips through json") {
    const GraphDocument doc = parse_auto(read_fixture("max.cfg"));
    const GraphDocument again = parse_json(to_json(doc));
    CHECK(again.name == doc.name);
    CHECK(again.nodes == doc.nodes);
    CHECK(again.start == doc.start);
    CHECK(again.exits == doc.exits);
    CHECK(again.edges == doc.edges);
    CHECK(again.defs == doc.defs);
    CHECK(again.cuses == doc.cuses);
    CHECK(again.puses == doc.puses);
    CHECK(to_json(again) == to_json(doc));
}

TEST_CASE("undefined-variable warnings surface through materialize") {
    const GraphDocument doc =
        parse_json(R"({"nodes":2,"start":0,"exits":[1],"edges":[[0,1]],"cuses":{"1":["ghost"]}})");
    const LoadedGraph loaded = materialize(doc);
    REQUIRE(loaded.warnings.size() == 1);
    CHECK(loaded.warnings[0].find("ghost") != std::string::npos);
}

TEST_CASE("dot export is well-formed with and without labels") {
    const Analysis a = analyze_document(parse_auto(read_fixture("max.json")));
    for (DotLabels mode : {DotLabels::None, DotLabels::Local, DotLabels::Global}) {
        const std::string dot = render_dot(a, mode);
        check_dot_grammar(dot);
        CHECK(dot.find("n4 -> n1;") != std::string::npos);
    }
    CHECK(render_dot(a, DotLabels::Local).find("(3, 5, rogue)") != std::string::npos);
}

TEST_CASE("nested loops: two retreating edges, bound holds, oracle agrees") {
    const Analysis a = analyze_document(parse_auto(read_fixture("loopnest.cfg")));
    CHECK(a.universe.size() == 14);
    CHECK(a.edge_classes.back_edges == std::vector<Edge>{{3, 2}, {4, 1}});
    CHECK(a.edge_classes.retreating_edges == std::vector<Edge>{{3, 2}, {4, 1}});
    CHECK(a.state.stats.iterations <= 4);
    CHECK(iteration_bound_check(a.state, 2));
    CHECK(compare_with_solver(a.state, a.graph, a.universe, a.annotations, 2).empty());

    // the inner-loop def reaches its own use only around the inner cycle
    CHECK(a.universe.index_of(Dua{3, UseKind::Node, 0, 3, "x"}).has_value());
    CHECK_FALSE(a.universe.index_of(Dua{3, UseKind::Node, 0, 4, "x"}).has_value());
}

TEST_CASE("cli exit codes") {
    const std::string cli = DSFLOW_CLI_PATH;
    const std::string fixture = std::string(DSFLOW_FIXTURES_DIR) + "/max.json";
    const auto exit_code = [](const std::string& cmd) {
        FILE* pipe = popen((cmd + " > /dev/null 2>&1").c_str(), "r");
        REQUIRE(pipe);
        const int status = pclose(pipe);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };

    CHECK(exit_code(cli + " analyze " + fixture) == 0);
    CHECK(exit_code(cli + " check " + fixture) == 0);
    CHECK(exit_code(cli + " analyze /nonexistent.json") == 2);
    CHECK(exit_code(cli + " analyze") == 2);      // missing file argument
    CHECK(exit_code(cli + " frobnicate x") == 2); // unknown subcommand
    CHECK(exit_code(cli + " analyze " + fixture + " --format yaml") == 2);
}

TEST_CASE("json report exposes the published counts") {
    const AnalysisReport r =
        make_report(analyze_document(parse_auto(read_fixture("max.json"))), true);
    CHECK(r.duas.size() == 24);
    CHECK(r.local[5].size() == 6);
    REQUIRE(r.global.has_value());
    CHECK((*r.global)[5].size() == 8);
    CHECK(r.unconstrained == std::vector<NodeId>{5});
    CHECK(r.coverage.covered_duas == 8);
    CHECK(r.coverage.percent() == 33);
    CHECK(r.iterations <= 3);
    CHECK(r.retreating_edge_count == 1);

    const std::string json = render_json(r);
    CHECK(json.find("\"name\": \"max\"") != std::string::npos);
    CHECK(json.find("\"percent\": 33") != std::string::npos);
}
