// Copyright (c) wrshapes contributors.
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wrshapes/analyzer.hpp"
#include "wrshapes/io.hpp"
#include "wrshapes/widening.hpp"

namespace py = pybind11;
using namespace wrshapes;

namespace {

// Bounds cross the boundary as canonical strings ("inf", "3", "7/2").
Bound bound_from(const std::string& s) {
    auto b = Bound::parse(s);
    if (!b) {
        throw py::value_error("bad bound: " + s);
    }
    return *b;
}

std::vector<Constraint> dbm_cs(const std::vector<std::tuple<int, int, std::string>>& cs) {
    std::vector<Constraint> out;
    for (const auto& [i, j, b] : cs) {
        out.push_back(Constraint{i, j, bound_from(b)});
    }
    return out;
}

std::vector<OctConstraint> oct_cs(
    const std::vector<std::tuple<int, int, int, int, std::string>>& cs) {
    std::vector<OctConstraint> out;
    for (const auto& [a, b, k, l, c] : cs) {
        out.push_back(OctConstraint{a, b, k, l, bound_from(c)});
    }
    return out;
}

py::list dbm_tuples(const std::vector<Constraint>& cs) {
    py::list out;
    for (const auto& c : cs) {
        out.append(py::make_tuple(c.i, c.j, c.bound.str()));
    }
    return out;
}

py::list oct_tuples(const std::vector<OctConstraint>& cs) {
    py::list out;
    for (const auto& c : cs) {
        out.append(py::make_tuple(c.a, c.b, c.k, c.l, c.bound.str()));
    }
    return out;
}

py::dict analyze_py(const std::string& source, const std::string& domain,
                    const std::string& widening, bool second_arg_closed, bool close_interleave,
                    int delay, int descend, int iter_cap, const std::string& thresholds) {
    lang::Program program = lang::parse_program(source);
    lang::Cfg cfg = lang::build_cfg(program);

    lang::AnalyzerConfig config;
    config.domain = domain == "oct" ? lang::DomainKind::Oct : lang::DomainKind::Dbm;
    config.strategy.kind = widening == "syntactic" ? WideningStrategy::Kind::Syntactic
                                                   : WideningStrategy::Kind::Standard;
    config.strategy.second_arg_closed = second_arg_closed;
    config.strategy.close_interleave = close_interleave;
    config.strategy.delay = delay;
    config.descend = descend;
    config.iter_cap = iter_cap;
    config.threshold_mode = thresholds == "none" ? lang::AnalyzerConfig::Thresholds::None
                                                 : lang::AnalyzerConfig::Thresholds::Auto;

    py::dict out;
    out["domain"] = domain;
    py::list points;
    auto fill = [&](const auto& result) {
        out["stabilized"] = result.stabilized;
        for (int v = 0; v < cfg.node_count; ++v) {
            py::dict p;
            p["id"] = v;
            p["desc"] = cfg.node_desc[v];
            p["empty"] = result.invariants[v].is_empty();
            p["constraints"] = pretty_constraints(result.invariants[v], program.vars);
            p["iterations"] = result.head_iterations[v];
            points.append(std::move(p));
        }
    };
    if (config.domain == lang::DomainKind::Dbm) {
        fill(lang::analyze_dbm(program, cfg, config));
    } else {
        fill(lang::analyze_oct(program, cfg, config));
    }
    out["points"] = std::move(points);
    return out;
}

py::dict search_py(const std::string& mode, int max_vars, long max_bound, int max_iters,
                   int trials, std::uint64_t seed) {
    SearchConfig cfg;
    cfg.mode = mode == "oct" ? SearchConfig::Mode::Oct : SearchConfig::Mode::Dbm;
    cfg.max_vars = max_vars;
    cfg.max_bound = max_bound;
    cfg.max_iters = max_iters;
    cfg.max_trials = trials;
    cfg.seed = seed;
    WitnessReport report = search_divergence(cfg);
    py::dict out;
    out["found"] = report.found;
    out["trials"] = report.trials;
    if (report.found) {
        const DivergenceWitness& w = *report.witness;
        out["vars"] = w.vars;
        out["standard_changes"] = w.standard_changes;
        py::list seq;
        if (w.oct) {
            for (const auto& m : std::get<std::vector<OctMatrix>>(w.sequence)) {
                seq.append(to_text(m));
            }
        } else {
            for (const auto& m : std::get<std::vector<Dbm>>(w.sequence)) {
                seq.append(to_text(m));
            }
        }
        out["sequence"] = std::move(seq);
        out["interleaved_csv"] = trace_csv(w.interleaved_trace);
        out["standard_csv"] = trace_csv(w.standard_trace);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Difference-bound and octagonal shapes with terminating widenings";

    py::class_<Shape>(m, "DbmShape")
        .def_static("top", &Shape::top, py::arg("vars"))
        .def_static("empty", &Shape::empty, py::arg("vars"))
        .def_static(
            "from_constraints",
            [](int vars, const std::vector<std::tuple<int, int, std::string>>& cs) {
                auto v = dbm_cs(cs);
                return close(from_constraints(vars, v));
            },
            py::arg("vars"), py::arg("constraints"))
        .def_property_readonly("vars", &Shape::vars)
        .def_property_readonly("is_empty", &Shape::is_empty)
        .def("to_constraints", [](const Shape& s) { return dbm_tuples(to_constraints(s)); })
        .def("reduce", [](const Shape& s) { return dbm_tuples(transitive_reduce(s).kept); })
        .def("matrix_text", [](const Shape& s) { return to_text(s); })
        .def("forget", [](const Shape& s, int v) { return forget(s, v); }, py::arg("var"))
        .def("__eq__", [](const Shape& a, const Shape& b) { return a == b; })
        .def("__repr__", [](const Shape& s) {
            return s.is_empty() ? std::string("DbmShape(empty)")
                                : "DbmShape(vars=" + std::to_string(s.vars()) + ")";
        });

    py::class_<OctShape>(m, "OctShape")
        .def_static("top", &OctShape::top, py::arg("vars"))
        .def_static("empty", &OctShape::empty, py::arg("vars"))
        .def_static(
            "from_constraints",
            [](int vars, const std::vector<std::tuple<int, int, int, int, std::string>>& cs) {
                auto v = oct_cs(cs);
                return strong_close(oct_from_constraints(vars, v));
            },
            py::arg("vars"), py::arg("constraints"))
        .def_property_readonly("vars", &OctShape::vars)
        .def_property_readonly("is_empty", &OctShape::is_empty)
        .def("to_constraints", [](const OctShape& s) { return oct_tuples(oct_to_constraints(s)); })
        .def("reduce", [](const OctShape& s) { return oct_tuples(strong_reduce(s).kept); })
        .def("matrix_text", [](const OctShape& s) { return to_text(s); })
        .def("forget", [](const OctShape& s, int v) { return oct_forget(s, v); }, py::arg("var"))
        .def("__eq__", [](const OctShape& a, const OctShape& b) { return a == b; })
        .def("__repr__", [](const OctShape& s) {
            return s.is_empty() ? std::string("OctShape(empty)")
                                : "OctShape(vars=" + std::to_string(s.vars()) + ")";
        });

    m.def("dbm_join", [](const Shape& a, const Shape& b) { return join(a, b); });
    m.def("dbm_meet", [](const Shape& a, const Shape& b) { return meet(a, b); });
    m.def("dbm_leq", [](const Shape& a, const Shape& b) { return leq(a, b); });
    m.def("dbm_widen_standard",
          [](const Shape& a, const Shape& b) { return widen_standard(a, b); });
    m.def("oct_join", [](const OctShape& a, const OctShape& b) { return oct_join(a, b); });
    m.def("oct_meet", [](const OctShape& a, const OctShape& b) { return oct_meet(a, b); });
    m.def("oct_leq", [](const OctShape& a, const OctShape& b) { return oct_leq(a, b); });
    m.def("oct_widen_standard",
          [](const OctShape& a, const OctShape& b) { return widen_standard(a, b); });

    m.def(
        "close_text",
        [](const std::string& text) {
            ParsedMatrix m = parse_matrix(text);
            if (std::holds_alternative<Dbm>(m)) {
                return to_text(close(std::get<Dbm>(m)));
            }
            return to_text(strong_close(std::get<OctMatrix>(m)));
        },
        py::arg("matrix_text"), "Close (or strongly close) a matrix given in text form");

    m.def("analyze", &analyze_py, py::arg("source"), py::arg("domain") = "dbm",
          py::arg("widening") = "standard", py::arg("second_arg_closed") = true,
          py::arg("close_interleave") = false, py::arg("delay") = 0, py::arg("descend") = 1,
          py::arg("iter_cap") = 64, py::arg("thresholds") = "auto");

    m.def("search_divergence", &search_py, py::arg("mode") = "dbm", py::arg("max_vars") = 3,
          py::arg("max_bound") = 4, py::arg("max_iters") = 32, py::arg("trials") = 500,
          py::arg("seed") = 1);
}
