/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/pipeline.hpp"

#include "chcelim/negation.hpp"
#include "chcelim/parser.hpp"
#include "chcelim/smt2.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace chcelim {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

bool writeFile(const fs::path & path, const std::string & text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) return false;
    f << text;
    return static_cast<bool>(f);
}

std::vector<std::string> predsWithRole(const Program & p, PredRole role) {
    std::vector<std::string> out;
    for (const auto & name : p.declOrder)
        if (p.predicates.at(name).role == role) out.push_back(name);
    return out;
}

SolverReport toReport(const SolveOutcome & o) {
    SolverReport r;
    r.status = o.status;
    r.error = o.error;
    r.wallTime = o.wallTime;
    if (o.model) r.model = o.model->str();
    if (o.modelVerdict) r.modelValid = o.modelVerdict->holds;
    return r;
}

Json verdictJson(const Verdict & v) {
    Json j;
    j["holds"] = v.holds;
    j["checked_instances"] = v.checkedInstances;
    j["counterexample"] = v.counterexample ? Json(*v.counterexample) : Json(nullptr);
    return j;
}

Json solverJson(const SolverReport & s) {
    Json j;
    j["status"] = toString(s.status);
    j["error"] = s.error.empty() ? Json(nullptr) : Json(s.error);
    j["wall_time"] = s.wallTime;
    j["model"] = s.model ? Json(*s.model) : Json(nullptr);
    j["model_valid"] = s.modelValid ? Json(*s.modelValid) : Json(nullptr);
    return j;
}

class Runner {
public:
    Runner(const PipelineOptions & o, PipelineReport & r) : opts_(o), rep_(r) {}

    void run() {
        rep_.input = opts_.input;
        rep_.bounds = opts_.bounds;
        std::error_code ec;
        fs::create_directories(opts_.outDir, ec);
        stem_ = fs::path(opts_.input).stem().string();
        if (stem_.empty()) stem_ = "program";

        if (!parse()) return;
        if (opts_.transform && !transform()) return;
        const bool solving = opts_.solve || opts_.validate;
        if (opts_.emitSmt2 || solving) emit();
        if (solving && !solveStage()) return;
        if (opts_.validate && !validateStage()) return;
        if (opts_.oracleCheck && !oracleStage()) return;
        if (opts_.baseline) baselineStage();
    }

    void finish() {
        const fs::path reportPath = fs::path(opts_.outDir) / (stem_ + ".report.json");
        rep_.outputs["report"] = reportPath.string();
        if (!writeFile(reportPath, rep_.json())) {
            rep_.stages.push_back({"report", false, "cannot write " + reportPath.string()});
            if (rep_.exitCode == exit_code::Ok) rep_.exitCode = exit_code::Usage;
        }
    }

private:
    void fail(const std::string & stage, const std::string & summary, int code) {
        rep_.stages.push_back({stage, false, summary});
        if (rep_.exitCode == exit_code::Ok) rep_.exitCode = code;
    }

    std::string output(const std::string & kind, const std::string & suffix, const std::string & text) {
        const fs::path path = fs::path(opts_.outDir) / (stem_ + suffix);
        if (!writeFile(path, text)) throw std::runtime_error("cannot write " + path.string());
        rep_.outputs[kind] = path.string();
        return path.string();
    }

    bool parse() {
        std::ifstream in(opts_.input, std::ios::binary);
        if (!in) {
            fail("parse", "cannot read " + opts_.input, exit_code::ParseError);
            return false;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        ParseResult pr = parseProgram(ss.str(), opts_.input);
        if (!pr.ok()) {
            std::string msg;
            for (const auto & e : pr.errors) msg += (msg.empty() ? "" : "; ") + e.str();
            fail("parse", msg, exit_code::ParseError);
            return false;
        }
        input_ = std::move(*pr.program);
        rep_.clauses = input_.clauses.size();
        rep_.predicates = input_.predicates.size();
        rep_.stages.push_back({"parse", true,
                               std::to_string(rep_.clauses) + " clauses, " + std::to_string(rep_.predicates) +
                                   " predicates declared"});
        return true;
    }

    bool transform() {
        TransfResult res = eliminate(input_, opts_.engine);
        rep_.transformStatus = res.status;
        rep_.iterations = res.iterations;
        output("trace", ".trace",
               opts_.traceFormat == TraceFormat::JsonLines ? res.trace.jsonLines() : res.trace.text());
        if (res.status != EngineStatus::Ok) {
            fail("transform", engineStatusName(res.status) + ": " + res.message, exit_code::TransformFailed);
            return false;
        }
        rep_.definitions = predsWithRole(res.extended, PredRole::Definition);
        rep_.diffPredicates = predsWithRole(res.extended, PredRole::Difference);
        rep_.notExistsPredicates = predsWithRole(res.extended, PredRole::NotExists);
        for (const auto & l : res.lemmas) rep_.lemmas.push_back(l.id + ": " + l.str());
        for (const auto & q : res.auxQueries) rep_.auxQueries.push_back(q.id + ": " + q.str());
        output("chc", ".chc", printProgram(res.programOut));
        std::ostringstream s;
        s << rep_.definitions.size() << " definitions, " << rep_.diffPredicates.size() << " diff predicate"
          << (rep_.diffPredicates.size() == 1 ? "" : "s") << ", " << rep_.lemmas.size() << " lemma"
          << (rep_.lemmas.size() == 1 ? "" : "s") << ", " << res.programOut.clauses.size() << " clauses, "
          << res.iterations << " iterations";
        if (!res.programOut.isListFree()) s << " (output still uses lists)";
        rep_.stages.push_back({"transform", true, s.str()});
        transformed_ = std::move(res);
        return true;
    }

    const Program & target() const { return transformed_ ? transformed_->programOut : input_; }

    void emit() {
        output("smt2", ".smt2", emitSmt2(target()));
        if (opts_.emitSmt2) rep_.stages.push_back({"emit", true, rep_.outputs["smt2"]});
    }

    SolverConfig solverConfig(const std::string & suffix) const {
        SolverConfig cfg = opts_.solver;
        cfg.validation = opts_.bounds;
        cfg.scriptPath = (fs::path(opts_.outDir) / (stem_ + suffix)).string();
        return cfg;
    }

    bool solveStage() {
        SolveOutcome o = solve(target(), solverConfig(".smt2"));
        output("solver-log", ".solver.log", o.rawOutput);
        rep_.solver = toReport(o);
        outcome_ = std::move(o);
        if (outcome_->status == SolveStatus::Sat) {
            rep_.stages.push_back({"solve", true, "sat"});
            return true;
        }
        std::string msg = toString(outcome_->status);
        if (!outcome_->error.empty()) msg += ": " + outcome_->error;
        if (outcome_->modelInvalid() && opts_.validate) {
            rep_.stages.push_back({"solve", true, "sat"});
            fail("validate", "model invalid: " + outcome_->modelVerdict->counterexample.value_or(""),
                 exit_code::ModelInvalid);
        } else {
            fail("solve", msg, exit_code::SolverNonSat);
        }
        return false;
    }

    bool validateStage() {
        if (!outcome_->modelVerdict) {
            fail("validate", "model not checkable: the solved program uses lists", exit_code::ModelInvalid);
            return false;
        }
        const Verdict & v = *outcome_->modelVerdict;
        rep_.checks.push_back({"model", "solver model satisfies every clause", v});
        rep_.stages.push_back(
            {"validate", true, "model valid (" + std::to_string(v.checkedInstances) + " instances)"});
        return true;
    }

    bool oracleStage() {
        Bounds b = opts_.bounds;
        bool ok = true;
        auto add = [&](std::string name, std::string statement, Verdict v) {
            ok = ok && v.holds;
            rep_.checks.push_back({std::move(name), std::move(statement), std::move(v)});
        };
        for (const auto & name : input_.declOrder) {
            if (!input_.predicates.at(name).totalFunctional) continue;
            add("H1 " + name, name + " is total and functional", checkTotalFunctional(name, input_, b));
        }
        std::size_t lemmas = 0;
        if (transformed_) {
            const Program & ext = transformed_->extended;
            for (const auto & l : transformed_->lemmas) {
                add(l.id, l.str(), checkImplication(ext, l, b));
                ++lemmas;
            }
            for (const auto & name : rep_.notExistsPredicates) {
                auto spec = negSpecFromName(name, ext);
                if (!spec) continue;
                add("complement " + name, name + " is the complement of the projection of " + spec->basePred,
                    checkComplement(*spec, ext, b));
            }
        }
        std::size_t failed = 0;
        std::string first;
        for (const auto & c : rep_.checks) {
            if (c.verdict.holds) continue;
            if (failed++ == 0) first = c.name + ": " + c.verdict.counterexample.value_or("");
        }
        std::ostringstream s;
        s << lemmas << " lemma" << (lemmas == 1 ? "" : "s") << ", " << rep_.checks.size() << " checks, ";
        if (ok) s << "all hold";
        else s << failed << " failed; " << first;
        s << " (lists <= " << b.maxListLen << ", ints " << b.intLo << ".." << b.intHi << ")";
        if (!ok) {
            fail("oracle-check", s.str(), exit_code::OracleCounterexample);
            return false;
        }
        rep_.stages.push_back({"oracle-check", true, s.str()});
        return true;
    }

    void baselineStage() {
        SolveOutcome o = baselineAttempt(input_, solverConfig(".baseline.smt2"));
        rep_.outputs["baseline-smt2"] = solverConfig(".baseline.smt2").scriptPath;
        output("baseline-log", ".baseline.log", o.rawOutput);
        rep_.baseline = toReport(o);
        std::string msg = toString(o.status);
        if (!o.error.empty()) msg += ": " + o.error;
        rep_.stages.push_back({"baseline", true, msg + " (reported only)"});
    }

    const PipelineOptions & opts_;
    PipelineReport & rep_;
    std::string stem_;
    Program input_;
    std::optional<TransfResult> transformed_;
    std::optional<SolveOutcome> outcome_;
};

} // namespace

std::string PipelineReport::json() const {
    nlohmann::ordered_json j;
    j["input"] = input;
    j["exit_code"] = exitCode;
    Json st = Json::array();
    for (const auto & s : stages) st.push_back({{"name", s.name}, {"ok", s.ok}, {"summary", s.summary}});
    j["stages"] = st;
    j["parse"] = {{"clauses", clauses}, {"predicates", predicates}};
    if (transformStatus) {
        j["transform"] = {{"status", engineStatusName(*transformStatus)},
                          {"iterations", iterations},
                          {"definitions", definitions},
                          {"diff_predicates", diffPredicates},
                          {"not_exists_predicates", notExistsPredicates},
                          {"lemmas", lemmas},
                          {"aux_queries", auxQueries}};
    }
    if (!checks.empty()) {
        Json cs = Json::array();
        for (const auto & c : checks) {
            Json e = {{"name", c.name}, {"statement", c.statement}};
            e["verdict"] = verdictJson(c.verdict);
            cs.push_back(e);
        }
        j["checks"] = cs;
    }
    j["bounds"] = {{"max_list_len", bounds.maxListLen}, {"int_lo", bounds.intLo}, {"int_hi", bounds.intHi}};
    if (solver) j["solver"] = solverJson(*solver);
    if (baseline) j["baseline"] = solverJson(*baseline);
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

std::string PipelineReport::summary() const {
    std::string out;
    for (const auto & s : stages) out += s.name + ": " + (s.ok ? "OK" : "FAILED") + " - " + s.summary + "\n";
    out += "exit code " + std::to_string(exitCode) + "\n";
    return out;
}

PipelineReport runPipeline(const PipelineOptions & opts) {
    PipelineReport rep;
    Runner r(opts, rep);
    try {
        r.run();
    } catch (const std::exception & e) {
        rep.stages.push_back({"internal", false, e.what()});
        if (rep.exitCode == exit_code::Ok) rep.exitCode = exit_code::Usage;
    }
    r.finish();
    return rep;
}

} // namespace chcelim
