/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_SUBSTITUTION_HPP
#define CHCELIM_SUBSTITUTION_HPP

#include "chcelim/clause.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace chcelim {

/// Sort-preserving, idempotent map from variable names to terms.
class Substitution {
public:
    using Map = std::map<std::string, Term>;

    /// Adds `name -> t` and rewrites the existing range so the map stays
    /// idempotent. Throws std::invalid_argument on a sort mismatch or when
    /// `name` is already bound.
    void bind(const std::string & name, Sort sort, const Term & t);
    /// Inserts `name -> t` verbatim (no rewriting of `t` or of the range).
    /// Used by one-way matching, where target variables are opaque.
    void extend(const std::string & name, Sort sort, const Term & t);

    const Term * lookup(const std::string & name) const;
    bool contains(const std::string & name) const { return map_.count(name) != 0; }
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const Map & bindings() const { return map_; }

    Term apply(const Term & t) const;
    ConstraintAtom apply(const ConstraintAtom & c) const;
    Atom apply(const Atom & a) const;
    Constraint apply(const Constraint & c) const;
    std::vector<Atom> apply(const std::vector<Atom> & atoms) const;

    /// `{X/T, Y/0}` style rendering.
    std::string str() const;

    bool operator==(const Substitution & o) const = default;

private:
    Map map_;
    std::map<std::string, Sort> sorts_;
};

/// Applies `s` to head, constraint and body. A non-empty substitution marks
/// the id with a trailing `m`.
Clause applySubst(const Substitution & s, const Clause & c);

/// Renames every variable of `c` to `V_x` for the first suffix letter x such
/// that no new name is in `forbidden` or already in `c`.
std::pair<Clause, Substitution> renameApart(const Clause & c, const std::set<std::string> & forbidden);

/// Variable names of a clause as a set.
std::set<std::string> varNames(const Clause & c);

/// One-way matching: extends `partial` so that apply(result, pattern) == target.
std::optional<Substitution> matchTerm(const Term & pattern, const Term & target, const Substitution & partial);
std::optional<Substitution> matchAtom(const Atom & pattern, const Atom & target, const Substitution & partial);

/// Decides which of two variables survives a var-var binding: returns true
/// when `a` should be kept and `b` bound to it.
using KeepPolicy = std::function<bool(const std::string & a, const std::string & b)>;

/// Syntactic unification of list and integer terms. Integer variables are
/// only bound to variables or constants; any other integer equation is
/// appended to `residual`. Returns false on a constructor clash or occurs
/// check failure.
bool unify(const Term & a, const Term & b, Substitution & s, Constraint & residual, const KeepPolicy & keep);

} // namespace chcelim

#endif
