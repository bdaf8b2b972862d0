/*
 * SPDX-License-Identifier: MIT
 */

#include "helpers.hpp"

#include "chcelim/pipeline.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <regex>
#include <sys/wait.h>

using namespace chcelim;
using testing_helpers::readFixture;
using testing_helpers::TempDir;

namespace {

std::string fixture(const std::string & name) { return std::string(CHCELIM_FIXTURES) + "/" + name; }

std::string slurp(const std::string & path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PipelineOptions base(const TempDir & d, const std::string & input) {
    PipelineOptions o;
    o.input = fixture(input);
    o.outDir = (d.path() / "out").string();
    o.solver.command = std::string(CHCELIM_STUB_SOLVER) + " --text unknown {file}";
    o.solver.timeoutSeconds = 10;
    return o;
}

int runCli(const std::string & args) {
    int status = std::system((std::string(CHCELIM_CLI) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string withoutWallTimes(const std::string & json) {
    return std::regex_replace(json, std::regex(R"("wall_time": [0-9.e+-]+)"), R"("wall_time": 0)");
}

} // namespace

TEST(Pipeline, ParseOnlyReportsCounts) {
    TempDir d;
    PipelineReport r = runPipeline(base(d, "insertion_sort.chc"));
    EXPECT_EQ(r.exitCode, exit_code::Ok);
    EXPECT_EQ(r.clauses, 8u);
    EXPECT_EQ(r.predicates, 3u);
    ASSERT_EQ(r.stages.size(), 1u);
    EXPECT_EQ(r.stages[0].summary, "8 clauses, 3 predicates declared");
    EXPECT_TRUE(std::filesystem::exists(r.outputs.at("report")));
}

TEST(Pipeline, ParseErrorExitsWithTwo) {
    TempDir d;
    PipelineOptions o = base(d, "insertion_sort.chc");
    o.input = d.file("bad.chc", ":- declare p(int:in).\np(X :- q.\n");
    PipelineReport r = runPipeline(o);
    EXPECT_EQ(r.exitCode, exit_code::ParseError);
    EXPECT_FALSE(r.stages.at(0).ok);
    o.input = (d.path() / "missing.chc").string();
    EXPECT_EQ(runPipeline(o).exitCode, exit_code::ParseError);
}

TEST(Pipeline, InsertionSortEndToEnd) {
    TempDir d;
    PipelineOptions o = base(d, "insertion_sort.chc");
    o.transform = o.solve = o.validate = o.oracleCheck = true;
    o.bounds.maxListLen = 3;
    auto answer = d.file("model.txt", "sat\n(define-fun new1 ((M Int) (N Int)) Bool (= M N))\n"
                                      "(define-fun new2 ((N Int)) Bool true)\n"
                                      "(define-fun diff ((H Int) (Na Int) (N1 Int)) Bool (= (+ H Na) N1))\n");
    o.solver.command = std::string(CHCELIM_STUB_SOLVER) + " --answer " + answer + " {file}";
    PipelineReport r = runPipeline(o);
    EXPECT_EQ(r.exitCode, exit_code::Ok) << r.summary();
    EXPECT_EQ(r.definitions, (std::vector<std::string>{"new1", "new2"}));
    EXPECT_EQ(r.diffPredicates, (std::vector<std::string>{"diff"}));
    ASSERT_TRUE(r.solver.has_value());
    EXPECT_EQ(r.solver->status, SolveStatus::Sat);
    EXPECT_EQ(r.solver->modelValid, std::optional<bool>(true));
    for (const auto & kind : {"chc", "smt2", "trace", "solver-log", "report"})
        EXPECT_TRUE(std::filesystem::exists(r.outputs.at(kind))) << kind;
    EXPECT_NE(slurp(r.outputs.at("chc")).find("new1"), std::string::npos);
}

TEST(Pipeline, TransformFailureExitsWithThree) {
    TempDir d;
    PipelineOptions o = base(d, "rotate.chc");
    o.transform = true;
    o.engine.maxIterations = 2;
    PipelineReport r = runPipeline(o);
    EXPECT_EQ(r.exitCode, exit_code::TransformFailed);
    EXPECT_TRUE(std::filesystem::exists(r.outputs.at("trace")));
}

TEST(Pipeline, NonSatExitsWithFour) {
    TempDir d;
    PipelineOptions o = base(d, "insertion_sort.chc");
    o.transform = o.solve = true;
    PipelineReport r = runPipeline(o);
    EXPECT_EQ(r.exitCode, exit_code::SolverNonSat);
    EXPECT_EQ(r.solver->status, SolveStatus::Unknown);
}

TEST(Pipeline, InvalidModelExitsWithFive) {
    TempDir d;
    PipelineOptions o = base(d, "insertion_sort.chc");
    o.transform = o.validate = true;
    o.solver.command = std::string(CHCELIM_STUB_SOLVER) +
                       " --text 'sat\\n(define-fun new1 ((M Int) (N Int)) Bool true)' {file}";
    PipelineReport r = runPipeline(o);
    EXPECT_EQ(r.exitCode, exit_code::ModelInvalid) << r.summary();
}

TEST(Pipeline, OracleCounterexampleExitsWithSix) {
    TempDir d;
    PipelineOptions o = base(d, "contradictory_fact.chc");
    o.oracleCheck = true;
    PipelineReport r = runPipeline(o);
    EXPECT_EQ(r.exitCode, exit_code::OracleCounterexample);
    ASSERT_FALSE(r.checks.empty());
    EXPECT_FALSE(r.checks[0].verdict.holds);
}

TEST(Pipeline, BaselineIsReportedOnly) {
    TempDir d;
    PipelineOptions o = base(d, "insertion_sort.chc");
    o.baseline = true;
    PipelineReport r = runPipeline(o);
    EXPECT_EQ(r.exitCode, exit_code::Ok);
    ASSERT_TRUE(r.baseline.has_value());
    EXPECT_EQ(r.baseline->status, SolveStatus::Unknown);
}

TEST(Pipeline, RerunsAreByteIdentical) {
    TempDir d1;
    TempDir d2;
    PipelineOptions a = base(d1, "rotate.chc");
    a.transform = a.emitSmt2 = a.solve = true;
    a.traceFormat = TraceFormat::JsonLines;
    PipelineOptions b = a;
    b.outDir = (d1.path() / "again").string();
    PipelineReport ra = runPipeline(a);
    PipelineReport rb = runPipeline(b);
    for (const auto & kind : {"chc", "smt2", "trace"}) EXPECT_EQ(slurp(ra.outputs.at(kind)), slurp(rb.outputs.at(kind))) << kind;
    std::string ja = withoutWallTimes(slurp(ra.outputs.at("report")));
    std::string jb = withoutWallTimes(slurp(rb.outputs.at("report")));
    EXPECT_EQ(std::regex_replace(ja, std::regex(a.outDir), "OUT"), std::regex_replace(jb, std::regex(b.outDir), "OUT"));
}

TEST(Cli, ExitCodes) {
    TempDir d;
    const std::string out = " --out " + (d.path() / "cli").string();
    EXPECT_EQ(runCli("--input " + fixture("insertion_sort.chc") + " --parse" + out), 0);
    EXPECT_EQ(runCli("--input " + fixture("insertion_sort.chc") + " --transform --trace json-lines" + out), 0);
    EXPECT_EQ(runCli("--input " + fixture("contradictory_fact.chc") + " --oracle-check" + out), 6);
    EXPECT_EQ(runCli("--input " + fixture("insertion_sort.chc") + " --oracle-int-range 3..1" + out), 1);
    EXPECT_NE(runCli("--input " + fixture("insertion_sort.chc") + " --trace xml" + out), 0);
    EXPECT_NE(runCli("--transform" + out), 0);
}
