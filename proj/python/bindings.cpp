/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/negation.hpp"
#include "chcelim/oracle.hpp"
#include "chcelim/parser.hpp"
#include "chcelim/pipeline.hpp"
#include "chcelim/smt2.hpp"
#include "chcelim/transform.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace chcelim;

namespace {

std::vector<std::string> clauseTexts(const Program & p) {
    std::vector<std::string> out;
    for (const auto & c : p.clauses) out.push_back(c.str());
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Elimination of list arguments from constrained Horn clauses";

    py::register_exception<ParseFailure>(m, "ParseError", PyExc_ValueError);
    py::register_exception<OracleError>(m, "OracleError", PyExc_RuntimeError);

    py::class_<Bounds>(m, "Bounds")
        .def(py::init([](int maxListLen, std::int64_t intLo, std::int64_t intHi, int jobs) {
                 Bounds b;
                 b.maxListLen = maxListLen;
                 b.intLo = intLo;
                 b.intHi = intHi;
                 b.jobs = jobs;
                 return b;
             }),
             py::arg("max_list_len") = 4, py::arg("int_lo") = -2, py::arg("int_hi") = 2, py::arg("jobs") = 1)
        .def_readwrite("max_list_len", &Bounds::maxListLen)
        .def_readwrite("int_lo", &Bounds::intLo)
        .def_readwrite("int_hi", &Bounds::intHi)
        .def_readwrite("jobs", &Bounds::jobs);

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("holds", &Verdict::holds)
        .def_readonly("counterexample", &Verdict::counterexample)
        .def_readonly("checked_instances", &Verdict::checkedInstances)
        .def("__bool__", [](const Verdict & v) { return v.holds; })
        .def("__repr__", [](const Verdict & v) {
            return std::string("Verdict(holds=") + (v.holds ? "True" : "False") +
                   ", checked_instances=" + std::to_string(v.checkedInstances) + ")";
        });

    py::class_<Program>(m, "Program")
        .def_property_readonly("clauses", &clauseTexts)
        .def_property_readonly("predicates", [](const Program & p) { return p.declOrder; })
        .def_property_readonly("is_list_free", &Program::isListFree)
        .def("text", &printProgram)
        .def("smt2", &emitSmt2)
        .def("__len__", [](const Program & p) { return p.clauses.size(); })
        .def("__eq__", [](const Program & a, const Program & b) { return a == b; })
        .def("__str__", &printProgram);

    m.def("parse", [](const std::string & text, const std::string & file) { return parseProgramOrThrow(text, file); },
          py::arg("text"), py::arg("file") = "<input>");

    py::class_<TransfResult>(m, "TransformResult")
        .def_property_readonly("status", [](const TransfResult & r) { return engineStatusName(r.status); })
        .def_readonly("message", &TransfResult::message)
        .def_readonly("program", &TransfResult::programOut)
        .def_readonly("extended", &TransfResult::extended)
        .def_readonly("iterations", &TransfResult::iterations)
        .def_property_readonly("lemmas",
                               [](const TransfResult & r) {
                                   std::vector<std::pair<std::string, std::string>> out;
                                   for (const auto & l : r.lemmas) out.emplace_back(l.id, l.str());
                                   return out;
                               })
        .def_property_readonly("aux_queries",
                               [](const TransfResult & r) {
                                   std::vector<std::pair<std::string, std::string>> out;
                                   for (const auto & q : r.auxQueries) out.emplace_back(q.id, q.str());
                                   return out;
                               })
        .def_property_readonly("definitions",
                               [](const TransfResult & r) {
                                   std::vector<std::string> out;
                                   for (const auto & c : r.definitions) out.push_back(c.str());
                                   return out;
                               })
        .def("trace", [](const TransfResult & r, bool json) { return json ? r.trace.jsonLines() : r.trace.text(); },
             py::arg("json_lines") = false);

    m.def(
        "eliminate",
        [](const Program & p, int maxIterations, int maxUnfoldDepth) {
            EngineOptions o;
            o.maxIterations = maxIterations;
            o.maxUnfoldDepth = maxUnfoldDepth;
            py::gil_scoped_release release;
            return eliminate(p, o);
        },
        py::arg("program"), py::arg("max_iterations") = 50, py::arg("max_unfold_depth") = 10);

    m.def(
        "check_total_functional",
        [](const std::string & pred, const Program & p, const Bounds & b) {
            py::gil_scoped_release release;
            return checkTotalFunctional(pred, p, b);
        },
        py::arg("pred"), py::arg("program"), py::arg("bounds") = Bounds{});

    m.def(
        "check_lemmas",
        [](const TransfResult & r, const Bounds & b) {
            std::vector<std::pair<std::string, Verdict>> out;
            py::gil_scoped_release release;
            for (const auto & l : r.lemmas) out.emplace_back(l.id, checkImplication(r.extended, l, b));
            return out;
        },
        py::arg("result"), py::arg("bounds") = Bounds{});

    m.def(
        "check_complement",
        [](const std::string & name, const Program & p, const Bounds & b) {
            auto spec = negSpecFromName(name, p);
            if (!spec) throw py::value_error("not a not_exists predicate of this program: " + name);
            py::gil_scoped_release release;
            return checkComplement(*spec, p, b);
        },
        py::arg("name"), py::arg("program"), py::arg("bounds") = Bounds{});

    m.def(
        "run_pipeline",
        [](const std::string & input, const std::string & outDir, bool transform, bool emitSmt2, bool solve,
           bool validate, bool oracleCheck, bool baseline, const std::string & solverCmd, double timeout,
           const Bounds & bounds) {
            PipelineOptions o;
            o.input = input;
            o.outDir = outDir;
            o.transform = transform;
            o.emitSmt2 = emitSmt2;
            o.solve = solve;
            o.validate = validate;
            o.oracleCheck = oracleCheck;
            o.baseline = baseline;
            o.solver.command = solverCmd;
            o.solver.timeoutSeconds = timeout;
            o.bounds = bounds;
            py::gil_scoped_release release;
            PipelineReport r = runPipeline(o);
            return std::make_pair(r.exitCode, r.json());
        },
        py::arg("input"), py::arg("out_dir"), py::arg("transform") = false, py::arg("emit_smt2") = false,
        py::arg("solve") = false, py::arg("validate") = false, py::arg("oracle_check") = false,
        py::arg("baseline") = false, py::arg("solver_cmd") = "z3 {file}", py::arg("timeout") = 60.0,
        py::arg("bounds") = Bounds{});
}
