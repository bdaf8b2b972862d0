/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_PIPELINE_HPP
#define CHCELIM_PIPELINE_HPP

#include "chcelim/oracle.hpp"
#include "chcelim/solver.hpp"
#include "chcelim/transform.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chcelim {

enum class TraceFormat { Text, JsonLines };

struct PipelineOptions {
    std::string input;
    std::string outDir = "chcelim-out";
    bool transform = false;
    bool emitSmt2 = false;
    bool solve = false;
    bool validate = false;
    bool oracleCheck = false;
    bool baseline = false;
    EngineOptions engine;
    Bounds bounds;
    SolverConfig solver;
    TraceFormat traceFormat = TraceFormat::Text;
};

namespace exit_code {
inline constexpr int Ok = 0;
inline constexpr int ParseError = 2;
inline constexpr int TransformFailed = 3;
inline constexpr int SolverNonSat = 4;
inline constexpr int ModelInvalid = 5;
inline constexpr int OracleCounterexample = 6;
/// Input/output problems outside the stages (unreadable file, bad flags).
inline constexpr int Usage = 1;
} // namespace exit_code

struct StageReport {
    std::string name;
    bool ok = true;
    std::string summary;
};

struct CheckReport {
    /// `H1 rotate`, `L1`, `complement not_exists_2nd_append`, ...
    std::string name;
    std::string statement;
    Verdict verdict;
};

struct SolverReport {
    SolveStatus status = SolveStatus::SolverError;
    std::string error;
    double wallTime = 0;
    std::optional<std::string> model;
    std::optional<bool> modelValid;
};

struct PipelineReport {
    std::string input;
    std::vector<StageReport> stages;
    std::size_t clauses = 0;
    std::size_t predicates = 0;
    std::optional<EngineStatus> transformStatus;
    int iterations = 0;
    std::vector<std::string> definitions;
    std::vector<std::string> diffPredicates;
    std::vector<std::string> notExistsPredicates;
    /// `id: forall (...)` renderings.
    std::vector<std::string> lemmas;
    std::vector<std::string> auxQueries;
    std::vector<CheckReport> checks;
    std::optional<SolverReport> solver;
    std::optional<SolverReport> baseline;
    Bounds bounds;
    /// Kind (`chc`, `smt2`, `trace`, `solver-log`, ...) to path.
    std::map<std::string, std::string> outputs;
    int exitCode = exit_code::Ok;

    /// Stable JSON rendering; wall times are the only run-dependent values.
    std::string json() const;
    /// One line per stage.
    std::string summary() const;
};

/// parse → transform → emit → solve → validate → oracle-check → baseline;
/// stages not requested are skipped (validate implies solve). Writes the
/// transformed program, SMT-LIB script, trace, solver transcripts and the
/// report into opts.outDir. The exit code is that of the first failing stage.
PipelineReport runPipeline(const PipelineOptions & opts);

} // namespace chcelim

#endif
