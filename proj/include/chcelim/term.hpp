/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_TERM_HPP
#define CHCELIM_TERM_HPP

#include "chcelim/linear.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chcelim {

/// Sorts of the constraint language. Int and Bool are basic; IntList is not.
enum class Sort { Int, Bool, IntList };

inline bool isBasic(Sort s) { return s != Sort::IntList; }
std::string_view sortName(Sort s);

/// Immutable term over integers and integer lists.
///
/// Integer-sorted terms are normalised: a linear expression that is a single
/// variable becomes a Var, a constant expression becomes an IntConst. Only
/// genuinely compound arithmetic is kept as Lin.
class Term {
public:
    enum class Kind { Var, IntConst, Nil, Cons, Lin };

    static Term var(std::string name, Sort sort);
    static Term intConst(std::int64_t value);
    static Term nil();
    static Term cons(Term head, Term tail);
    static Term lin(LinExpr expr);
    /// Builds `[e1, ..., en | tail]`.
    static Term list(const std::vector<Term> & elems, Term tail = nil());

    Kind kind() const { return kind_; }
    Sort sort() const;

    bool isVar() const { return kind_ == Kind::Var; }
    bool isNil() const { return kind_ == Kind::Nil; }
    bool isCons() const { return kind_ == Kind::Cons; }
    bool isIntConst() const { return kind_ == Kind::IntConst; }
    /// Nil or Cons.
    bool isConstructor() const { return kind_ == Kind::Nil || kind_ == Kind::Cons; }

    const std::string & name() const { return name_; }
    std::int64_t value() const { return value_; }
    const Term & head() const { return children_->first; }
    const Term & tail() const { return children_->second; }
    const LinExpr & linExpr() const { return lin_; }

    /// Integer-sorted term as a linear expression.
    LinExpr toLinear() const;

    bool isGround() const;
    /// Appends variables (with sort) in left-to-right order, duplicates included.
    void collectVars(std::vector<std::pair<std::string, Sort>> & out) const;
    bool containsVar(const std::string & name) const;

    std::string str() const;

    std::strong_ordering operator<=>(const Term & o) const;
    bool operator==(const Term & o) const { return (*this <=> o) == 0; }

private:
    Kind kind_ = Kind::IntConst;
    Sort varSort_ = Sort::Int;
    std::string name_;
    std::int64_t value_ = 0;
    std::shared_ptr<const std::pair<Term, Term>> children_;
    LinExpr lin_;
};

} // namespace chcelim

#endif
