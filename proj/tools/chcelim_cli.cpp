/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <regex>

int main(int argc, char ** argv) {
    using namespace chcelim;
    PipelineOptions opts;
    bool parseOnly = false;
    std::string intRange = "-2..2";
    std::string trace = "text";
    std::vector<std::string> solverOptions;

    CLI::App app{"Eliminate list arguments from constrained Horn clauses"};
    app.add_option("--input", opts.input, "Input .chc file")->required();
    app.add_option("--out", opts.outDir, "Output directory")->capture_default_str();
    app.add_flag("--parse", parseOnly, "Only parse and report declarations");
    app.add_flag("--transform", opts.transform, "Run the elimination algorithm");
    app.add_flag("--emit-smt2", opts.emitSmt2, "Write the SMT-LIB script");
    app.add_flag("--solve", opts.solve, "Run the external CHC solver");
    app.add_flag("--validate", opts.validate, "Validate the solver's model (implies --solve)");
    app.add_flag("--oracle-check", opts.oracleCheck, "Check hypotheses, lemmas and complements by enumeration");
    app.add_flag("--baseline", opts.baseline, "Run the solver on the untransformed clauses (reported only)");
    app.add_option("--max-iterations", opts.engine.maxIterations)->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--max-unfold-depth", opts.engine.maxUnfoldDepth)->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--oracle-list-len", opts.bounds.maxListLen)->capture_default_str()->check(CLI::Range(0, 16));
    app.add_option("--oracle-int-range", intRange, "LO..HI")->capture_default_str();
    app.add_option("--solver-cmd", opts.solver.command, "Command template; {file} is the script")
        ->capture_default_str();
    app.add_option("--solver-option", solverOptions, "key=value passed to the solver");
    app.add_option("--timeout", opts.solver.timeoutSeconds, "Solver timeout in seconds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_option("--trace", trace, "Trace format")->check(CLI::IsMember({"text", "json-lines"}))->capture_default_str();
    app.add_option("--jobs", opts.bounds.jobs, "Oracle worker threads")->capture_default_str()->check(CLI::Range(1, 256));
    CLI11_PARSE(app, argc, argv);

    std::smatch m;
    static const std::regex rangeRe(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
    if (!std::regex_match(intRange, m, rangeRe) || std::stoll(m[1]) > std::stoll(m[2])) {
        std::cerr << "--oracle-int-range: expected LO..HI with LO <= HI, got '" << intRange << "'\n";
        return exit_code::Usage;
    }
    opts.bounds.intLo = std::stoll(m[1]);
    opts.bounds.intHi = std::stoll(m[2]);
    for (const auto & o : solverOptions) {
        auto eq = o.find('=');
        if (eq == std::string::npos) {
            std::cerr << "--solver-option: expected key=value, got '" << o << "'\n";
            return exit_code::Usage;
        }
        opts.solver.options.emplace_back(o.substr(0, eq), o.substr(eq + 1));
    }
    opts.traceFormat = trace == "json-lines" ? TraceFormat::JsonLines : TraceFormat::Text;
    if (parseOnly) {
        opts.transform = opts.emitSmt2 = opts.solve = opts.validate = opts.oracleCheck = opts.baseline = false;
    }

    PipelineReport rep = runPipeline(opts);
    std::cout << rep.summary();
    std::cout << "report: " << rep.outputs["report"] << "\n";
    return rep.exitCode;
}
