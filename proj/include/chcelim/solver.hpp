/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_SOLVER_HPP
#define CHCELIM_SOLVER_HPP

#include "chcelim/model.hpp"
#include "chcelim/oracle.hpp"
#include "chcelim/program.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chcelim {

/// Environment variable that replaces the executable of the command template.
inline constexpr const char * kSolverEnvVar = "CHCELIM_SOLVER";

struct SolverConfig {
    /// Executable and arguments; `{file}` is replaced by the script path and
    /// the path is appended when the placeholder is absent.
    std::string command = "z3 {file}";
    double timeoutSeconds = 60;
    /// Appended as `key=value` arguments.
    std::vector<std::pair<std::string, std::string>> options;
    /// Where to keep the emitted script; a temporary file is used when empty.
    std::string scriptPath;
    /// Bounds for validating Sat models of list-free programs.
    Bounds validation;
};

enum class SolveStatus { Sat, Unsat, Unknown, Timeout, SolverError };

std::string toString(SolveStatus s);

struct SolveOutcome {
    SolveStatus status = SolveStatus::SolverError;
    /// Present iff status is Sat.
    std::optional<Model> model;
    /// Reason for SolverError.
    std::string error;
    /// Set when a returned model was checked by the oracle.
    std::optional<Verdict> modelVerdict;
    double wallTime = 0;
    /// Command line, exit status and captured stdout/stderr.
    std::string rawOutput;
    /// The solver's stdout alone.
    std::string stdoutText;
    /// True when a Sat answer was downgraded because the model failed validation.
    bool modelInvalid() const { return modelVerdict && !modelVerdict->holds; }
};

/// Splits a command template into arguments, honouring single and double
/// quotes, substitutes `{file}`, applies the environment override and appends
/// the options.
std::vector<std::string> solverArgv(const SolverConfig & cfg, const std::string & file);

/// Emits `p` as SMT-LIB, runs the solver with a hard timeout and classifies
/// its answer. Sat models are parsed and, for list-free programs, validated
/// with the oracle; difference predicates must additionally be functional.
SolveOutcome solve(const Program & p, const SolverConfig & cfg);

/// Same operation as `solve`, used on untransformed clauses as a negative
/// control.
SolveOutcome baselineAttempt(const Program & p, const SolverConfig & cfg);

} // namespace chcelim

#endif
