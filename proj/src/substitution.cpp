/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/substitution.hpp"

#include <stdexcept>

namespace chcelim {

void Substitution::bind(const std::string & name, Sort sort, const Term & t) {
    if (t.sort() != sort) {
        throw std::invalid_argument("sort mismatch binding " + name + " to " + t.str());
    }
    if (map_.count(name) != 0) { throw std::invalid_argument("variable already bound: " + name); }
    Term bound = apply(t);
    if (bound.containsVar(name)) { throw std::invalid_argument("cyclic binding for " + name); }
    Substitution one;
    one.map_.emplace(name, bound);
    one.sorts_.emplace(name, sort);
    for (auto & [v, range] : map_) { range = one.apply(range); }
    map_.emplace(name, std::move(bound));
    sorts_.emplace(name, sort);
}

void Substitution::extend(const std::string & name, Sort sort, const Term & t) {
    if (t.sort() != sort) {
        throw std::invalid_argument("sort mismatch binding " + name + " to " + t.str());
    }
    if (!map_.emplace(name, t).second) { throw std::invalid_argument("variable already bound: " + name); }
    sorts_.emplace(name, sort);
}

const Term * Substitution::lookup(const std::string & name) const {
    auto it = map_.find(name);
    return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term & t) const {
    if (map_.empty()) { return t; }
    switch (t.kind()) {
        case Term::Kind::Var: {
            const Term * b = lookup(t.name());
            return b ? *b : t;
        }
        case Term::Kind::Cons: return Term::cons(apply(t.head()), apply(t.tail()));
        case Term::Kind::Lin: {
            LinExpr e = t.linExpr();
            for (auto const & [v, c] : t.linExpr().coeffs()) {
                if (const Term * b = lookup(v)) { e = e.substitute(v, b->toLinear()); }
            }
            return Term::lin(e);
        }
        default: return t;
    }
}

ConstraintAtom Substitution::apply(const ConstraintAtom & c) const {
    if (map_.empty()) { return c; }
    switch (c.kind()) {
        case ConstraintAtom::Kind::IntRel: {
            LinExpr e = c.expr();
            for (auto const & [v, k] : c.expr().coeffs()) {
                if (const Term * b = lookup(v)) { e = e.substitute(v, b->toLinear()); }
            }
            return ConstraintAtom::intRel(c.op(), e);
        }
        case ConstraintAtom::Kind::ListEq:
        case ConstraintAtom::Kind::ListNe:
            return ConstraintAtom::listRel(c.kind() == ConstraintAtom::Kind::ListEq, apply(c.lhs()), apply(c.rhs()));
        case ConstraintAtom::Kind::BoolLit: return c;
    }
    return c;
}

Atom Substitution::apply(const Atom & a) const {
    Atom r{a.pred, {}};
    r.args.reserve(a.args.size());
    for (auto const & t : a.args) { r.args.push_back(apply(t)); }
    return r;
}

Constraint Substitution::apply(const Constraint & c) const {
    Constraint r;
    r.reserve(c.size());
    for (auto const & x : c) { r.push_back(apply(x)); }
    return r;
}

std::vector<Atom> Substitution::apply(const std::vector<Atom> & atoms) const {
    std::vector<Atom> r;
    r.reserve(atoms.size());
    for (auto const & a : atoms) { r.push_back(apply(a)); }
    return r;
}

std::string Substitution::str() const {
    std::string out = "{";
    bool first = true;
    for (auto const & [v, t] : map_) {
        if (!first) { out += ", "; }
        first = false;
        out += v + "/" + t.str();
    }
    return out + "}";
}

Clause applySubst(const Substitution & s, const Clause & c) {
    if (s.empty()) { return c; }
    Clause r;
    r.id = c.id + "m";
    if (c.head) { r.head = s.apply(*c.head); }
    r.constraint = s.apply(c.constraint);
    r.body = s.apply(c.body);
    return r;
}

std::set<std::string> varNames(const Clause & c) {
    std::set<std::string> out;
    for (auto const & [v, s] : c.freeVars()) { out.insert(v); }
    return out;
}

std::pair<Clause, Substitution> renameApart(const Clause & c, const std::set<std::string> & forbidden) {
    auto vars = c.freeVars();
    Substitution ren;
    if (vars.empty()) { return {c, ren}; }
    auto own = varNames(c);
    std::string suffix;
    for (int n = 0;; ++n) {
        // _a .. _z, then _aa, _ab, ...
        suffix = "_";
        int k = n;
        std::string letters;
        do {
            letters.insert(letters.begin(), static_cast<char>('a' + k % 26));
            k = k / 26 - 1;
        } while (k >= 0);
        suffix += letters;
        bool clash = false;
        for (auto const & [v, s] : vars) {
            std::string nv = v + suffix;
            if (forbidden.count(nv) || own.count(nv)) {
                clash = true;
                break;
            }
        }
        if (!clash) { break; }
    }
    for (auto const & [v, s] : vars) { ren.bind(v, s, Term::var(v + suffix, s)); }
    Clause r = applySubst(ren, c);
    r.id = c.id + "a";
    return {r, ren};
}

std::optional<Substitution> matchTerm(const Term & pattern, const Term & target, const Substitution & partial) {
    switch (pattern.kind()) {
        case Term::Kind::Var: {
            if (pattern.sort() != target.sort()) { return std::nullopt; }
            if (const Term * b = partial.lookup(pattern.name())) {
                if (*b == target) { return partial; }
                return std::nullopt;
            }
            Substitution s = partial;
            s.extend(pattern.name(), pattern.sort(), target);
            return s;
        }
        case Term::Kind::Cons:
            if (!target.isCons()) { return std::nullopt; }
            if (auto h = matchTerm(pattern.head(), target.head(), partial)) {
                return matchTerm(pattern.tail(), target.tail(), *h);
            }
            return std::nullopt;
        case Term::Kind::Lin:
            if (partial.apply(pattern) == target) { return partial; }
            return std::nullopt;
        default:
            if (pattern == target) { return partial; }
            return std::nullopt;
    }
}

std::optional<Substitution> matchAtom(const Atom & pattern, const Atom & target, const Substitution & partial) {
    if (pattern.pred != target.pred || pattern.args.size() != target.args.size()) { return std::nullopt; }
    std::optional<Substitution> s = partial;
    for (std::size_t i = 0; i < pattern.args.size() && s; ++i) { s = matchTerm(pattern.args[i], target.args[i], *s); }
    return s;
}

bool unify(const Term & a0, const Term & b0, Substitution & s, Constraint & residual, const KeepPolicy & keep) {
    Term a = s.apply(a0);
    Term b = s.apply(b0);
    if (a == b) { return true; }
    if (a.sort() == Sort::Int) {
        if (a.isVar() && b.isVar()) {
            if (keep(a.name(), b.name())) {
                s.bind(b.name(), Sort::Int, a);
            } else {
                s.bind(a.name(), Sort::Int, b);
            }
            return true;
        }
        if (a.isVar() && b.isIntConst()) {
            s.bind(a.name(), Sort::Int, b);
            return true;
        }
        if (b.isVar() && a.isIntConst()) {
            s.bind(b.name(), Sort::Int, a);
            return true;
        }
        if (a.isIntConst() && b.isIntConst()) { return false; }
        auto c = ConstraintAtom::intRel(RelOp::Eq, a, b);
        if (c.isFalse()) { return false; }
        if (!c.isTrue()) { residual.push_back(c); }
        return true;
    }
    if (a.isVar() && b.isVar()) {
        if (keep(a.name(), b.name())) {
            s.bind(b.name(), b.sort(), a);
        } else {
            s.bind(a.name(), a.sort(), b);
        }
        return true;
    }
    if (a.isVar() || b.isVar()) {
        const Term & v = a.isVar() ? a : b;
        const Term & t = a.isVar() ? b : a;
        if (t.containsVar(v.name())) { return false; }
        s.bind(v.name(), v.sort(), t);
        return true;
    }
    if (a.isNil() && b.isNil()) { return true; }
    if (a.isCons() && b.isCons()) {
        return unify(a.head(), b.head(), s, residual, keep) && unify(a.tail(), b.tail(), s, residual, keep);
    }
    return false;
}

} // namespace chcelim
