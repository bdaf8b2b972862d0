/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_SIMPLIFY_HPP
#define CHCELIM_SIMPLIFY_HPP

#include "chcelim/program.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chcelim {

/// Satisfiability of the integer part of a constraint over the rationals
/// (Fourier-Motzkin with integer tightening); list relations are ignored.
/// Returns true when undecided (row blow-up), so callers only ever delete
/// clauses that are certainly unsatisfiable.
bool intSatisfiable(const Constraint & c);

/// True when `c` certainly implies `a` (integer relations only).
bool intImplies(const Constraint & c, const ConstraintAtom & a);

/// Per-argument integer bounds that hold in the least model, found by a
/// Houdini-style check of the candidates `x >= 0` and `x <= 0`.
class Invariants {
public:
    struct Bounds {
        std::optional<std::int64_t> lower;
        std::optional<std::int64_t> upper;
    };

    static Invariants compute(const Program & p);

    /// Bound constraints on the integer arguments of `a`.
    Constraint forAtom(const Atom & a) const;
    const std::map<std::string, std::vector<Bounds>> & bounds() const { return bounds_; }

private:
    std::map<std::string, std::vector<Bounds>> bounds_;
};

struct SimplifyOptions {
    /// Unify the outputs of two atoms of a total functional predicate with
    /// equal inputs.
    bool mergeFunctional = true;
    /// Delete atoms of total functional predicates whose outputs are
    /// distinct variables occurring nowhere else.
    bool dropUnusedOutputs = false;
    /// Substitute list equalities away.
    bool solveListEqualities = true;
};

/// Semantics-preserving cleanup of one clause. Returns zero clauses when the
/// constraint is unsatisfiable and several when a list disequality between
/// two cons cells is split into its head and tail cases.
std::vector<Clause> simplifyClause(const Clause & c, const Program & p, const Invariants & inv,
                                   const SimplifyOptions & opts = {});

/// Renames variables to short names: suffixes introduced by renaming apart
/// are stripped and clashes are resolved with numeric suffixes.
Clause tidyNames(const Clause & c);

/// The deletions used when deriving auxiliary queries: constraints with a
/// variable that occurs only there, and atoms of total functional predicates
/// whose output variables occur only there, are removed until a fixpoint.
Clause dropSingletons(const Clause & c, const Program & p);

} // namespace chcelim

#endif
