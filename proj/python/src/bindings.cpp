// Copyright (c) dsflow contributors.
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dsflow/io.hpp"

namespace py = pybind11;

namespace {

dsflow::Analysis analyze_text(const std::string& text) {
    return dsflow::analyze_document(dsflow::parse_auto(text));
}

py::object json_loads(const std::string& text) {
    return py::module_::import("json").attr("loads")(text);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "all-uses data-flow subsumption analysis over annotated control flow graphs";

    py::register_exception<dsflow::Error>(m, "AnalysisError", PyExc_ValueError);

    m.def(
        "duas",
        [](const std::string& text) {
            const dsflow::Analysis a = analyze_text(text);
            std::vector<std::string> out;
            for (const dsflow::Dua& d : a.universe.all())
                out.push_back(dsflow::to_string(d));
            return out;
        },
        py::arg("document"),
        "All-uses DU-associations of a graph document (JSON or DSL text), "
        "rendered as '(d, u, var)' strings in universe order.");

    m.def(
        "analyze",
        [](const std::string& text, bool include_global) {
            const dsflow::Analysis a = analyze_text(text);
            return json_loads(dsflow::render_json(dsflow::make_report(a, include_global)));
        },
        py::arg("document"), py::arg("include_global") = true,
        "Full subsumption report as a dict: duas, local/global per-node "
        "sets, unconstrained nodes, coverage, stats.");

    m.def(
        "check",
        [](const std::string& text, std::uint32_t path_bound) {
            const dsflow::Analysis a = analyze_text(text);
            const dsflow::DiscrepancyReport report = dsflow::compare_with_solver(
                a.state, a.graph, a.universe, a.annotations, path_bound);
            return report.empty();
        },
        py::arg("document"), py::arg("path_bound") = 2,
        "True iff the fixpoint solution matches the bounded path-enumeration "
        "oracle on every node.");

    m.def(
        "export_dot",
        [](const std::string& text, const std::string& labels) {
            dsflow::DotLabels mode = dsflow::DotLabels::None;
            if (labels == "local")
                mode = dsflow::DotLabels::Local;
            else if (labels == "global")
                mode = dsflow::DotLabels::Global;
            else if (labels != "none")
                throw dsflow::Error("labels must be one of: none, local, global");
            return dsflow::render_dot(analyze_text(text), mode);
        },
        py::arg("document"), py::arg("labels") = "none",
        "DOT digraph of the flow graph, optionally annotated with subsumed DUAs.");

#ifdef DSFLOW_VERSION
    m.attr("__version__") = DSFLOW_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
