/*
 * SPDX-License-Identifier: MIT
 */

// End-to-end acceptance report: one PASS/FAIL line per criterion. Criterion 7
// (baseline solver run on the untransformed clauses) is reported, not gated.
// Exit status is 0 iff every gated criterion passes.

#include "../common/properties.hpp"
#include "../unit/helpers.hpp"

#include "chcelim/compare.hpp"
#include "chcelim/negation.hpp"
#include "chcelim/oracle.hpp"
#include "chcelim/solver.hpp"
#include "chcelim/transform.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace chcelim;
using testing_helpers::clauseById;
using testing_helpers::lemmaFromFixture;
using testing_helpers::loadFixture;
namespace fs = std::filesystem;

namespace {

constexpr double kTransformIsLimit = 5.0;
constexpr double kSolveLimit = 10.0;
constexpr double kTransformRotateLimit = 10.0;
constexpr double kComplementLimit = 30.0;
constexpr std::uint64_t kComplementMinInstances = 100000;
constexpr int kSampleLo = -10;
constexpr int kSampleHi = 10;
constexpr int kPropertyMinCases = 100;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", seconds);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string & what) {
        if (!cond) pass = false;
        notes.push_back((cond ? "" : "NOT ") + what);
    }
    void note(const std::string & what) { notes.push_back(what); }
};

std::string readFile(const fs::path & p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixturePath(const std::string & name) { return std::string(CHCELIM_FIXTURES) + "/" + name; }

struct CliRun {
    int exitCode = -1;
    double seconds = 0;
    fs::path outDir;
    std::string stem;

    fs::path file(const std::string & suffix) const { return outDir / (stem + suffix); }
};

CliRun runCli(const std::string & fixture, const fs::path & outDir, const std::string & flags) {
    CliRun r;
    r.outDir = outDir;
    r.stem = fs::path(fixture).stem().string();
    fs::remove_all(outDir);
    const std::string cmd = std::string("'") + CHCELIM_CLI + "' --input '" + fixturePath(fixture) + "' --out '" +
                            outDir.string() + "' " + flags + " > '" + (outDir.string() + ".stdout") + "' 2>&1";
    auto t = Clock::now();
    int status = std::system(cmd.c_str());
    r.seconds = since(t);
    r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<Clause> clausesWithHead(const Program & p, const std::string & pred) {
    std::vector<Clause> out;
    for (const auto & c : p.clauses)
        if (c.head && c.head->pred == pred) out.push_back(c);
    return out;
}

const Clause * definitionFor(const TransfResult & r, const std::string & pred) {
    for (const auto & d : r.definitions)
        if (d.head && d.head->pred == pred) return &d;
    return nullptr;
}

SolverConfig z3Config(double timeout) {
    SolverConfig cfg;
    cfg.timeoutSeconds = timeout;
    cfg.validation.intLo = -5;
    cfg.validation.intHi = 5;
    return cfg;
}

bool noRename(const std::string &) { return false; }

struct Context {
    fs::path work;
    Program is = loadFixture("insertion_sort.chc");
    Program rotate = loadFixture("rotate.chc");
    TransfResult isRes;
    TransfResult rotRes;
};

Outcome criterion1(Context & cx) {
    Outcome o;
    CliRun run = runCli("insertion_sort.chc", cx.work / "c1", "--transform");
    o.require(run.exitCode == 0, "CLI exit 0 (got " + std::to_string(run.exitCode) + ")");
    o.require(run.seconds < kTransformIsLimit, "transform in " + fmt(run.seconds) + " < " + fmt(kTransformIsLimit));
    try {
        Program out = parseProgramOrThrow(readFile(run.file(".chc")));
        Program fin = loadFixture("insertion_sort_final.chc");
        o.require(clauseSetsEquivalent(out.clauses, fin.clauses).has_value(),
                  "output equivalent to clauses 10, 11, 12f, 14-18");
    } catch (const std::exception & e) {
        o.require(false, std::string("output readable: ") + e.what());
    }
    Program expected = loadFixture("insertion_sort_expected.chc");
    PredRenaming ren;
    const Clause * new1 = definitionFor(cx.isRes, "new1");
    const Clause * diff = definitionFor(cx.isRes, "diff");
    o.require(new1 && clausesEquivalent(*new1, clauseById(expected, "9"), ren, isIntroducedName),
              "definition new1 equivalent to clause 9");
    o.require(diff && clausesEquivalent(*diff, clauseById(expected, "13"), ren, isIntroducedName),
              "definition diff equivalent to clause 13");
    return o;
}

Outcome criterion2(Context & cx) {
    Outcome o;
    SolveOutcome s = solve(cx.isRes.programOut, z3Config(kSolveLimit));
    o.require(s.status == SolveStatus::Sat, "solver answers sat (got " + toString(s.status) +
                                                (s.error.empty() ? "" : ": " + s.error) + ")");
    o.require(s.wallTime < kSolveLimit, "solved in " + fmt(s.wallTime) + " < " + fmt(kSolveLimit));
    if (!s.model) return o;
    const Model & m = *s.model;

    bool diffOk = true, new1Ok = true;
    std::string bad;
    for (int h = kSampleLo; h <= kSampleHi; ++h)
        for (int na = kSampleLo; na <= kSampleHi; ++na)
            for (int n1 = 2 * kSampleLo - 5; n1 <= 2 * kSampleHi + 5; ++n1)
                if (m.holds("diff", {h, na, n1}) != (n1 == h + na)) {
                    if (diffOk) bad = "diff(" + std::to_string(h) + "," + std::to_string(na) + "," + std::to_string(n1) + ")";
                    diffOk = false;
                }
    for (int a = kSampleLo; a <= kSampleHi; ++a)
        for (int b = kSampleLo; b <= kSampleHi; ++b)
            if (m.holds("new1", {a, b}) && a != b) {
                if (new1Ok) bad = "new1(" + std::to_string(a) + "," + std::to_string(b) + ")";
                new1Ok = false;
            }
    const std::string range = " on [" + std::to_string(kSampleLo) + "," + std::to_string(kSampleHi) + "]";
    o.require(diffOk, "diff(H,Na,N1) <=> N1=H+Na" + range + (diffOk ? "" : " (" + bad + ")"));
    o.require(new1Ok, "new1(M,N) => M=N" + range + (new1Ok ? "" : " (" + bad + ")"));
    o.require(s.modelVerdict && s.modelVerdict->holds,
              "model validated (" + std::to_string(s.modelVerdict ? s.modelVerdict->checkedInstances : 0) +
                  " instances, ints -5..5)");
    o.note("model: " + m.str());
    return o;
}

Outcome criterion3(Context & cx) {
    Outcome o;
    CliRun run = runCli("rotate.chc", cx.work / "c3", "--transform");
    o.require(run.exitCode == 0, "CLI exit 0 (got " + std::to_string(run.exitCode) + ")");
    o.require(run.seconds < kTransformRotateLimit,
              "transform in " + fmt(run.seconds) + " < " + fmt(kTransformRotateLimit));

    Program expected = loadFixture("rotate_expected.chc");
    bool lemmasOk = cx.rotRes.lemmas.size() == 3;
    for (std::size_t i = 0; lemmasOk && i < 3; ++i) {
        const std::string id = "L" + std::to_string(i + 1);
        PredRenaming ren;
        lemmasOk = cx.rotRes.lemmas[i].id == id &&
                   lemmasEquivalent(cx.rotRes.lemmas[i], lemmaFromFixture(expected, id), ren, isIntroducedName);
    }
    o.require(lemmasOk, "lemmas L1, L2, L3 equivalent to the expected ones");
    std::vector<Clause> queries;
    for (const auto & id : {"Q1.1", "Q1.2", "Q2", "Q3"}) queries.push_back(clauseById(expected, id));
    o.require(clauseSetsEquivalent(cx.rotRes.auxQueries, queries).has_value(),
              "auxiliary queries equivalent to Q1.1, Q1.2, Q2, Q3");

    const Program & out = cx.rotRes.programOut;
    o.require(out.isListFree(), "output is list-free");
    Verdict allFalse = validateModel(out, Model{}, Bounds{});
    o.require(allFalse.holds, "all-false model validates");

    SolveOutcome s = solve(out, z3Config(kSolveLimit));
    o.require(s.status == SolveStatus::Sat, "solver answers sat (got " + toString(s.status) + ")");
    o.require(s.wallTime < kSolveLimit, "solved in " + fmt(s.wallTime) + " < " + fmt(kSolveLimit));
    return o;
}

Outcome criterion4(Context & cx) {
    Outcome o;
    const std::string name = "not_exists_2nd_append";
    Program expected = loadFixture("rotate_expected.chc");
    std::vector<Clause> want{clauseById(expected, "15"), clauseById(expected, "16"), clauseById(expected, "17")};
    auto got = clausesWithHead(cx.rotRes.extended, name);
    o.require(clauseSetsEquivalent(got, want, noRename).has_value(),
              name + " defined by clauses equivalent to 15-17 (" + std::to_string(got.size()) + " clauses)");

    auto spec = negSpecFromName(name, cx.rotRes.extended);
    if (!spec) {
        o.require(false, "negation spec recovered from name");
        return o;
    }
    Bounds b;
    b.maxListLen = 4;
    b.intLo = -2;
    b.intHi = 2;
    auto t = Clock::now();
    Verdict v = checkComplement(*spec, cx.rotRes.extended, b);
    double secs = since(t);
    o.require(v.holds, "complement of append's 2nd-argument projection" +
                           (v.holds ? std::string() : ": " + v.counterexample.value_or("")));
    o.require(v.checkedInstances > kComplementMinInstances,
              std::to_string(v.checkedInstances) + " instances > " + std::to_string(kComplementMinInstances) +
                  " (lists <= 4, ints -2..2)");
    o.require(secs < kComplementLimit, "checked in " + fmt(secs) + " < " + fmt(kComplementLimit));
    return o;
}

/// L1 with the first two arguments of its last append atom swapped.
std::optional<Lemma> mutateL1(const Lemma & l1) {
    Lemma m = l1;
    for (auto it = m.conclusionAtoms.rbegin(); it != m.conclusionAtoms.rend(); ++it) {
        if (it->pred != "append" || it->args[0] == it->args[1]) continue;
        std::swap(it->args[0], it->args[1]);
        m.id = "L1-mutated";
        return m;
    }
    return std::nullopt;
}

Outcome criterion5(Context & cx) {
    Outcome o;
    const Bounds b{};
    if (cx.isRes.lemmas.size() == 1) {
        Verdict v = checkImplication(cx.isRes.extended, cx.isRes.lemmas[0], b);
        o.require(v.holds, "formula I holds (" + std::to_string(v.checkedInstances) + " instances)");
    } else {
        o.require(false, "exactly one lemma for InsertionSort");
    }
    if (cx.rotRes.lemmas.empty()) {
        o.require(false, "lemma L1 recorded");
        return o;
    }
    const Lemma & l1 = cx.rotRes.lemmas[0];
    Verdict v = checkImplication(cx.rotRes.extended, l1, b);
    o.require(v.holds, "L1 holds (" + std::to_string(v.checkedInstances) + " instances)");
    auto mutant = mutateL1(l1);
    if (!mutant) {
        o.require(false, "L1 has an append atom to mutate");
        return o;
    }
    Verdict mv = checkImplication(cx.rotRes.extended, *mutant, b);
    o.require(!mv.holds, "mutated L1 is refuted" + (mv.counterexample ? " (" + *mv.counterexample + ")" : ""));
    o.note("mutant: " + mutant->str());
    return o;
}

Outcome criterion6(Context & cx) {
    Outcome o;
    const Bounds b{};
    auto check = [&](const std::string & pred, const Program & p) {
        Verdict v = checkTotalFunctional(pred, p, b);
        o.require(v.holds, "H1 " + pred + (v.holds ? "" : ": " + v.counterexample.value_or("")));
    };
    for (const auto & pred : {"ins", "sumlist", "insertionSort"}) check(pred, cx.is);
    for (const auto & pred : {"append", "len", "rotate"}) check(pred, cx.rotate);
    Verdict bad = checkTotalFunctional("p", loadFixture("contradictory_fact.chc"), b);
    o.require(!bad.holds, "contradictory fixture refuted" + (bad.counterexample ? " (" + *bad.counterexample + ")" : ""));
    return o;
}

Outcome criterion7(Context & cx) {
    Outcome o;
    SolveOutcome s = baselineAttempt(cx.is, z3Config(kSolveLimit));
    o.note("untransformed InsertionSort: " + toString(s.status) + " after " + fmt(s.wallTime) +
           (s.error.empty() ? "" : " (" + s.error.substr(0, 120) + ")"));
    return o;
}

Outcome criterion8(Context & cx) {
    Outcome o;
    for (const std::string fixture : {"insertion_sort.chc", "rotate.chc"}) {
        const std::string stem = fs::path(fixture).stem().string();
        CliRun a = runCli(fixture, cx.work / ("c8-" + stem + "-a"), "--transform --emit-smt2");
        CliRun b = runCli(fixture, cx.work / ("c8-" + stem + "-b"), "--transform --emit-smt2");
        o.require(a.exitCode == 0 && b.exitCode == 0, stem + ": both runs exit 0");
        for (const std::string suffix : {".trace", ".chc", ".smt2"}) {
            const std::string x = readFile(a.file(suffix)), y = readFile(b.file(suffix));
            o.require(!x.empty() && x == y, stem + suffix + " byte-identical (" + std::to_string(x.size()) + " bytes)");
        }
    }
    return o;
}

Outcome criterion9(Context & cx) {
    Outcome o;
    std::vector<properties::Result> results{
        properties::substitutionRoundTrip(), properties::matchThenApply(), properties::foldUnfoldInversion(),
        properties::boundedModelMonotone({cx.is, cx.rotate}), properties::parsePrintRoundTrip()};
    for (const auto & r : results)
        o.require(r.ok() && r.cases >= kPropertyMinCases,
                  r.name + ": " + std::to_string(r.cases) + " cases, " + std::to_string(r.failures) + " failures" +
                      (r.ok() ? "" : " (" + r.firstFailure + ")"));
    return o;
}

} // namespace

int main(int argc, char ** argv) {
    bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    Context cx;
    cx.work = fs::temp_directory_path() / ("chcelim-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(cx.work);
    cx.isRes = eliminate(cx.is);
    cx.rotRes = eliminate(cx.rotate);

    struct Criterion {
        int id;
        const char * title;
        bool gated;
        std::function<Outcome(Context &)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "InsertionSort transformation", true, criterion1},
        {2, "InsertionSort solved and model checked", true, criterion2},
        {3, "Rotate transformation, lemmas and queries", true, criterion3},
        {4, "negation elimination for append", true, criterion4},
        {5, "lemma oracle and mutation", true, criterion5},
        {6, "total functionality H1", true, criterion6},
        {7, "baseline on untransformed clauses", false, criterion7},
        {8, "determinism of trace and output", true, criterion8},
        {9, "property tests", true, criterion9},
    };

    int failed = 0;
    for (const auto & c : criteria) {
        Outcome o;
        auto t = Clock::now();
        try {
            o = c.run(cx);
        } catch (const std::exception & e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = since(t);
        const char * tag = !c.gated ? "REPORT" : o.pass ? "PASS" : "FAIL";
        if (c.gated && !o.pass) ++failed;
        std::cout << "criterion " << c.id << ": " << tag << " - " << c.title << " (" << fmt(secs) << ")\n";
        for (const auto & n : o.notes)
            if (verbose || n.rfind("model:", 0) != 0)
                std::cout << "    " << n << "\n";
    }
    std::error_code ec;
    fs::remove_all(cx.work, ec);
    std::cout << (failed == 0 ? "all gated criteria pass\n" : std::to_string(failed) + " gated criteria failed\n");
    return failed == 0 ? 0 : 1;
}
