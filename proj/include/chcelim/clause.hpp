/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_CLAUSE_HPP
#define CHCELIM_CLAUSE_HPP

#include "chcelim/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chcelim {

enum class RelOp { Eq, Ne, Le, Lt, Ge, Gt };

/// One conjunct of a clause constraint.
///
/// Integer relations are stored canonically as `expr OP 0` with OP in
/// {Eq, Ne, Le}; the expression is divided by the gcd of its coefficients and
/// Eq/Ne are sign-normalised so that the first variable has a positive
/// coefficient. Relations that become trivially decided are folded into a
/// BoolLit. List relations keep their operands ordered so that `A == B` and
/// `B == A` are the same value.
class ConstraintAtom {
public:
    enum class Kind { IntRel, BoolLit, ListEq, ListNe };

    static ConstraintAtom intRel(RelOp op, const Term & lhs, const Term & rhs);
    static ConstraintAtom intRel(RelOp op, const LinExpr & expr);
    static ConstraintAtom boolLit(bool value);
    static ConstraintAtom listRel(bool equal, Term lhs, Term rhs);

    Kind kind() const { return kind_; }
    RelOp op() const { return op_; }
    const LinExpr & expr() const { return expr_; }
    bool value() const { return value_; }
    const Term & lhs() const { return lhs_; }
    const Term & rhs() const { return rhs_; }

    bool isInt() const { return kind_ == Kind::IntRel; }
    bool isList() const { return kind_ == Kind::ListEq || kind_ == Kind::ListNe; }
    bool isTrue() const { return kind_ == Kind::BoolLit && value_; }
    bool isFalse() const { return kind_ == Kind::BoolLit && !value_; }

    ConstraintAtom negated() const;

    void collectVars(std::vector<std::pair<std::string, Sort>> & out) const;
    bool containsVar(const std::string & name) const;

    std::string str() const;

    std::strong_ordering operator<=>(const ConstraintAtom & o) const;
    bool operator==(const ConstraintAtom & o) const { return (*this <=> o) == 0; }

private:
    static ConstraintAtom canonicalInt(RelOp op, LinExpr e);

    Kind kind_ = Kind::BoolLit;
    RelOp op_ = RelOp::Eq;
    LinExpr expr_;
    bool value_ = true;
    Term lhs_;
    Term rhs_;
};

using Constraint = std::vector<ConstraintAtom>;

struct Atom {
    std::string pred;
    std::vector<Term> args;

    std::string str() const;
    void collectVars(std::vector<std::pair<std::string, Sort>> & out) const;
    bool containsVar(const std::string & name) const;
    auto operator<=>(const Atom & o) const = default;
    bool operator==(const Atom & o) const = default;
};

using VarList = std::vector<std::pair<std::string, Sort>>;

/// A constrained Horn clause `head :- constraint, body`. A missing head is `false`.
struct Clause {
    std::string id;
    std::optional<Atom> head;
    Constraint constraint;
    std::vector<Atom> body;

    bool isQuery() const { return !head.has_value(); }

    /// Distinct variables in first-occurrence order: head, constraint, body.
    VarList freeVars() const;
    /// True iff every variable is Int- or Bool-sorted.
    bool hasBasicTypes() const;
    /// Number of occurrences of `name` across the whole clause.
    int occurrences(const std::string & name) const;

    /// Prolog-like rendering without the id label, terminated by '.'.
    std::string str() const;

    bool operator==(const Clause & o) const = default;
};

/// Removes duplicates, keeping first occurrences.
VarList dedupVars(const VarList & vars);

std::string joinAtoms(const std::vector<Atom> & atoms);

} // namespace chcelim

#endif
