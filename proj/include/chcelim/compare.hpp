/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_COMPARE_HPP
#define CHCELIM_COMPARE_HPP

#include "chcelim/program.hpp"
#include "chcelim/transform.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chcelim {

/// Predicate `a`-name to `b`-name; argument i of an `a` atom corresponds to
/// argument perm[i] of the `b` atom.
struct PredMapping {
    std::string target;
    std::vector<std::size_t> perm;
    bool operator==(const PredMapping &) const = default;
};
using PredRenaming = std::map<std::string, PredMapping>;

/// Which predicates may be renamed (and have their arguments permuted).
using RenamablePred = std::function<bool(const std::string &)>;

/// Predicates introduced by the transformation: definitions, difference and
/// not_exists predicates, recognised by their names.
bool isIntroducedName(const std::string & pred);

/// `a` and `b` are equal up to a bijective renaming of variables, the order
/// of body atoms, and predicate renaming/argument permutation consistent with
/// `ren` (which is extended on success). Integer constraints are compared up
/// to linear-arithmetic equivalence, list constraints syntactically.
bool clausesEquivalent(const Clause & a, const Clause & b, PredRenaming & ren, const RenamablePred & renamable);

/// Bijection between the clauses of `a` and `b` under one predicate renaming.
std::optional<PredRenaming> clauseSetsEquivalent(const std::vector<Clause> & a, const std::vector<Clause> & b,
                                                 const RenamablePred & renamable = isIntroducedName,
                                                 PredRenaming seed = {});

/// As clausesEquivalent for premise and conclusion jointly; existential
/// variables must correspond to existential variables.
bool lemmasEquivalent(const Lemma & a, const Lemma & b, PredRenaming & ren, const RenamablePred & renamable);

} // namespace chcelim

#endif
