// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
//
// dsflow: all-uses data-flow subsumption analysis over annotated control
// flow graphs.
//
//   dsflow duas <file>                          list the all-uses requirements
//   dsflow analyze <file> [--format f] [--global]   full subsumption report
//   dsflow check <file> [--path-bound K]        cross-check against the path oracle
//   dsflow export <file> --format dot [--labels local|global]   DOT digraph
//
// Exit codes: 0 success/agreement, 1 oracle discrepancy, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dsflow/io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw dsflow::Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

dsflow::Analysis load_and_analyze(const std::string& path, std::ostream& warn_stream) {
    const dsflow::GraphDocument doc = dsflow::parse_auto(read_file(path));
    dsflow::Analysis a = dsflow::analyze_document(doc);
    for (const std::string& w : a.warnings)
        warn_stream << "warning: " << w << "\n";
    return a;
}

int cmd_duas(const std::string& path) {
    const dsflow::Analysis a = load_and_analyze(path, std::cerr);
    for (const dsflow::Dua& d : a.universe.all())
        std::cout << dsflow::to_string(d) << "\n";
    return 0;
}

int cmd_analyze(const std::string& path, const std::string& format, bool with_global) {
    const dsflow::Analysis a = load_and_analyze(path, std::cerr);
    const dsflow::AnalysisReport report = dsflow::make_report(a, with_global);
    std::cout << (format == "json" ? dsflow::render_json(report) : dsflow::render_text(report));
    return 0;
}

int cmd_check(const std::string& path, std::uint32_t path_bound) {
    const dsflow::Analysis a = load_and_analyze(path, std::cerr);
    const dsflow::DiscrepancyReport report =
        dsflow::compare_with_solver(a.state, a.graph, a.universe, a.annotations, path_bound);
    std::cout << dsflow::render_discrepancies(report, a.universe);
    return report.empty() ? 0 : 1;
}

int cmd_export(const std::string& path, const std::string& labels) {
    const dsflow::Analysis a = load_and_analyze(path, std::cerr);
    dsflow::DotLabels mode = dsflow::DotLabels::None;
    if (labels == "local")
        mode = dsflow::DotLabels::Local;
    else if (labels == "global")
        mode = dsflow::DotLabels::Global;
    std::cout << dsflow::render_dot(a, mode);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"all-uses data-flow subsumption analysis"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "text";
    std::string labels = "none";
    std::uint32_t path_bound = 2;
    bool with_global = false;

    auto* duas = app.add_subcommand("duas", "list the all-uses DU-associations");
    duas->add_option("file", file, "graph document (JSON or DSL)")->required();

    auto* analyze = app.add_subcommand("analyze", "compute the subsumption report");
    analyze->add_option("file", file, "graph document (JSON or DSL)")->required();
    analyze->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    analyze->add_flag("--global", with_global, "include per-node global subsumption sets");

    auto* check = app.add_subcommand("check", "cross-check the solver against the path oracle");
    check->add_option("file", file, "graph document (JSON or DSL)")->required();
    check->add_option("--path-bound", path_bound, "max traversals per edge during enumeration")
        ->check(CLI::PositiveNumber);

    auto* exp = app.add_subcommand("export", "export the annotated graph");
    exp->add_option("file", file, "graph document (JSON or DSL)")->required();
    exp->add_option("--format", format, "output format")->check(CLI::IsMember({"dot"}));
    exp->add_option("--labels", labels, "node label contents")
        ->check(CLI::IsMember({"none", "local", "global"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(duas))
            return cmd_duas(file);
        if (app.got_subcommand(analyze))
            return cmd_analyze(file, format, with_global);
        if (app.got_subcommand(check))
            return cmd_check(file, path_bound);
        return cmd_export(file, labels);
    } catch (const dsflow::ParseError& e) {
        std::cerr << "error: line " << e.line() << ", column " << e.column() << ": " << e.what()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
