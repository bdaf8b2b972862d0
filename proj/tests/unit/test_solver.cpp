/*
 * SPDX-License-Identifier: MIT
 */

#include "helpers.hpp"

#include "chcelim/solver.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace chcelim;
using testing_helpers::loadFixture;
using testing_helpers::TempDir;

namespace {

const char * kReferenceModel = "sat\n"
                           "(define-fun new1 ((M Int) (N Int)) Bool (= M N))\n"
                           "(define-fun new2 ((N Int)) Bool true)\n"
                           "(define-fun diff ((H Int) (Na Int) (N1 Int)) Bool (= (+ H Na) N1))\n";

SolverConfig stub(const std::string & args) {
    SolverConfig cfg;
    cfg.command = std::string(CHCELIM_STUB_SOLVER) + " " + args + " {file}";
    cfg.timeoutSeconds = 10;
    return cfg;
}

bool haveZ3() { return std::system("z3 -version >/dev/null 2>&1") == 0; }

} // namespace

TEST(SolverArgv, TemplateIsSplitAndFilled) {
    SolverConfig cfg;
    cfg.command = "solver -a 'x y' \"--in={file}\"";
    cfg.options = {{"fp.engine", "spacer"}};
    auto argv = solverArgv(cfg, "/tmp/s.smt2");
    EXPECT_EQ(argv, (std::vector<std::string>{"solver", "-a", "x y", "--in=/tmp/s.smt2", "fp.engine=spacer"}));
    cfg.command = "solver";
    cfg.options.clear();
    EXPECT_EQ(solverArgv(cfg, "f"), (std::vector<std::string>{"solver", "f"}));
    cfg.command = "solver 'unterminated";
    EXPECT_THROW(solverArgv(cfg, "f"), std::invalid_argument);
}

TEST(SolverArgv, EnvironmentOverridesExecutable) {
    ::setenv(kSolverEnvVar, "/opt/other-solver", 1);
    SolverConfig cfg;
    auto argv = solverArgv(cfg, "f.smt2");
    ::unsetenv(kSolverEnvVar);
    EXPECT_EQ(argv.front(), "/opt/other-solver");
    EXPECT_EQ(argv.back(), "f.smt2");
}

TEST(Solver, SatModelIsParsedAndValidated) {
    TempDir d;
    auto answer = d.file("ans.txt", kReferenceModel);
    SolveOutcome o = solve(loadFixture("insertion_sort_final.chc"), stub("--answer " + answer));
    ASSERT_EQ(o.status, SolveStatus::Sat) << o.error << o.rawOutput;
    ASSERT_TRUE(o.model.has_value());
    EXPECT_TRUE(o.model->holds("new1", {3, 3}));
    EXPECT_FALSE(o.model->holds("new1", {3, 4}));
    ASSERT_TRUE(o.modelVerdict.has_value());
    EXPECT_TRUE(o.modelVerdict->holds);
    EXPECT_NE(o.rawOutput.find(";; command:"), std::string::npos);
}

TEST(Solver, InvalidModelIsDowngraded) {
    TempDir d;
    auto answer = d.file("ans.txt", "sat\n(define-fun new1 ((M Int) (N Int)) Bool true)\n");
    SolveOutcome o = solve(loadFixture("insertion_sort_final.chc"), stub("--answer " + answer));
    EXPECT_EQ(o.status, SolveStatus::SolverError);
    EXPECT_TRUE(o.modelInvalid());
    EXPECT_FALSE(o.model.has_value());
}

TEST(Solver, UnparseableModelIsAnError) {
    SolveOutcome o = solve(loadFixture("insertion_sort_final.chc"),
                           stub("--text 'sat\\n(define-fun new1 ((M Int) (N Int)) Bool (exists ((x Int)) true))'"));
    EXPECT_EQ(o.status, SolveStatus::SolverError);
    EXPECT_NE(o.error.find("model"), std::string::npos);
}

TEST(Solver, UnsatUnknownAndGarbage) {
    Program p = loadFixture("insertion_sort_final.chc");
    EXPECT_EQ(solve(p, stub("--text unsat")).status, SolveStatus::Unsat);
    EXPECT_EQ(solve(p, stub("--text unknown")).status, SolveStatus::Unknown);
    SolveOutcome o = solve(p, stub("--text '(error \"boom\")' --exit 1"));
    EXPECT_EQ(o.status, SolveStatus::SolverError);
    EXPECT_NE(o.error.find("boom"), std::string::npos);
}

TEST(Solver, TimeoutKillsTheProcess) {
    SolverConfig cfg = stub("--sleep 30");
    cfg.timeoutSeconds = 0.5;
    SolveOutcome o = solve(loadFixture("insertion_sort_final.chc"), cfg);
    EXPECT_EQ(o.status, SolveStatus::Timeout);
    EXPECT_LT(o.wallTime, 0.5 + 2.0);
}

TEST(Solver, MissingExecutableIsAnError) {
    SolverConfig cfg;
    cfg.command = "/nonexistent/solver {file}";
    SolveOutcome o = solve(loadFixture("insertion_sort_final.chc"), cfg);
    EXPECT_EQ(o.status, SolveStatus::SolverError);
    EXPECT_NE(o.error.find("cannot execute"), std::string::npos);
}

TEST(Solver, TimeoutMustBePositive) {
    SolverConfig cfg;
    cfg.timeoutSeconds = 0;
    EXPECT_THROW(solve(Program{}, cfg), std::invalid_argument);
}

TEST(Solver, ScriptIsKeptWhenRequested) {
    TempDir d;
    SolverConfig cfg = stub("--text unknown");
    cfg.scriptPath = (d.path() / "kept.smt2").string();
    solve(loadFixture("insertion_sort_final.chc"), cfg);
    EXPECT_TRUE(std::filesystem::exists(cfg.scriptPath));
}

TEST(ReferenceSolver, TrivialPrograms) {
    if (!haveZ3()) GTEST_SKIP() << "z3 not on PATH";
    Program refutable = parseProgramOrThrow(":- declare p().\nfalse :- p.\np.\n");
    EXPECT_EQ(solve(refutable, SolverConfig{}).status, SolveStatus::Unsat);
    EXPECT_EQ(baselineAttempt(Program{}, SolverConfig{}).status, SolveStatus::Sat);
}

TEST(ReferenceSolver, ExpectedFinalClausesAreSat) {
    if (!haveZ3()) GTEST_SKIP() << "z3 not on PATH";
    SolveOutcome o = solve(loadFixture("insertion_sort_final.chc"), SolverConfig{});
    ASSERT_EQ(o.status, SolveStatus::Sat) << o.rawOutput;
    for (std::int64_t m = -5; m <= 5; ++m)
        for (std::int64_t n = -5; n <= 5; ++n) EXPECT_EQ(o.model->holds("new1", {m, n}), m == n) << m << "," << n;
}
