/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_PROGRAM_HPP
#define CHCELIM_PROGRAM_HPP

#include "chcelim/clause.hpp"

#include <map>
#include <string>
#include <vector>

namespace chcelim {

enum class Mode { In, Out };

/// Why a predicate exists; the oracle uses this to pick which extra checks apply.
enum class PredRole { Input, Definition, Difference, NotExists };

struct PredicateInfo {
    std::string name;
    std::vector<Sort> argSorts;
    std::vector<Mode> modes;
    bool totalFunctional = false;
    PredRole role = PredRole::Input;

    std::size_t arity() const { return argSorts.size(); }
    bool operator==(const PredicateInfo & o) const = default;
};

struct Program {
    std::vector<Clause> clauses;
    std::map<std::string, PredicateInfo> predicates;
    /// Declaration order, for printing.
    std::vector<std::string> declOrder;

    void declare(PredicateInfo info);
    const PredicateInfo * info(const std::string & pred) const;
    bool isDeclared(const std::string & pred) const { return predicates.count(pred) != 0; }

    /// Clauses whose head predicate is `pred`, in program order.
    std::vector<const Clause *> definingClauses(const std::string & pred) const;
    std::vector<Clause> queries() const;
    std::vector<Clause> nonQueries() const;

    /// True iff some clause mentions a list-sorted variable or constructor.
    bool usesLists() const;
    bool isListFree() const { return !usesLists(); }

    /// Throws std::invalid_argument when a clause violates a declared signature
    /// or ids collide.
    void check() const;

    bool operator==(const Program & o) const = default;
};

} // namespace chcelim

#endif
