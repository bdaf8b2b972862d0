/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/clause.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chcelim {

ConstraintAtom ConstraintAtom::intRel(RelOp op, const Term & lhs, const Term & rhs) {
    return intRel(op, lhs.toLinear() - rhs.toLinear());
}

ConstraintAtom ConstraintAtom::intRel(RelOp op, const LinExpr & e) {
    switch (op) {
        case RelOp::Eq:
        case RelOp::Ne:
        case RelOp::Le: return canonicalInt(op, e);
        case RelOp::Lt: return canonicalInt(RelOp::Le, e + LinExpr(1));
        case RelOp::Ge: return canonicalInt(RelOp::Le, -e);
        case RelOp::Gt: return canonicalInt(RelOp::Le, -e + LinExpr(1));
    }
    throw std::logic_error("bad relation");
}

ConstraintAtom ConstraintAtom::canonicalInt(RelOp op, LinExpr e) {
    if (e.isConstant()) {
        std::int64_t c = e.constant();
        bool v = op == RelOp::Eq ? c == 0 : op == RelOp::Ne ? c != 0 : c <= 0;
        return boolLit(v);
    }
    std::int64_t g = e.coeffGcd();
    LinExpr r;
    for (auto const & [v, c] : e.coeffs()) { r.addTerm(v, c / g); }
    if (op == RelOp::Le) {
        r.addConstant(ceilDiv(e.constant(), g));
    } else {
        // g*x = c has no integer solution unless g | c
        if (e.constant() % g != 0) { return boolLit(op == RelOp::Ne); }
        r.addConstant(e.constant() / g);
        if (r.coeffs().begin()->second < 0) { r = -r; }
    }
    ConstraintAtom a;
    a.kind_ = Kind::IntRel;
    a.op_ = op;
    a.expr_ = std::move(r);
    return a;
}

ConstraintAtom ConstraintAtom::boolLit(bool value) {
    ConstraintAtom a;
    a.kind_ = Kind::BoolLit;
    a.value_ = value;
    return a;
}

ConstraintAtom ConstraintAtom::listRel(bool equal, Term lhs, Term rhs) {
    if (lhs.sort() != Sort::IntList || rhs.sort() != Sort::IntList) {
        throw std::invalid_argument("list relation over non-list terms: " + lhs.str() + ", " + rhs.str());
    }
    ConstraintAtom a;
    a.kind_ = equal ? Kind::ListEq : Kind::ListNe;
    if (rhs < lhs) { std::swap(lhs, rhs); }
    a.lhs_ = std::move(lhs);
    a.rhs_ = std::move(rhs);
    return a;
}

ConstraintAtom ConstraintAtom::negated() const {
    switch (kind_) {
        case Kind::BoolLit: return boolLit(!value_);
        case Kind::ListEq: return listRel(false, lhs_, rhs_);
        case Kind::ListNe: return listRel(true, lhs_, rhs_);
        case Kind::IntRel:
            switch (op_) {
                case RelOp::Eq: return intRel(RelOp::Ne, expr_);
                case RelOp::Ne: return intRel(RelOp::Eq, expr_);
                default: return intRel(RelOp::Gt, expr_);
            }
    }
    throw std::logic_error("bad constraint kind");
}

void ConstraintAtom::collectVars(VarList & out) const {
    switch (kind_) {
        case Kind::IntRel:
            for (auto const & [v, c] : expr_.coeffs()) { out.emplace_back(v, Sort::Int); }
            break;
        case Kind::ListEq:
        case Kind::ListNe:
            lhs_.collectVars(out);
            rhs_.collectVars(out);
            break;
        case Kind::BoolLit: break;
    }
}

bool ConstraintAtom::containsVar(const std::string & name) const {
    switch (kind_) {
        case Kind::IntRel: return expr_.coeff(name) != 0;
        case Kind::ListEq:
        case Kind::ListNe: return lhs_.containsVar(name) || rhs_.containsVar(name);
        case Kind::BoolLit: return false;
    }
    return false;
}

std::string ConstraintAtom::str() const {
    switch (kind_) {
        case Kind::BoolLit: return value_ ? "true" : "false";
        case Kind::ListEq: return lhs_.str() + "==" + rhs_.str();
        case Kind::ListNe: return lhs_.str() + "\\==" + rhs_.str();
        case Kind::IntRel: break;
    }
    // Render `P + c OP N` with positive coefficients on both sides.
    LinExpr pos;
    LinExpr neg;
    for (auto const & [v, c] : expr_.coeffs()) {
        if (c > 0) {
            pos.addTerm(v, c);
        } else {
            neg.addTerm(v, -c);
        }
    }
    std::int64_t c = expr_.constant();
    std::string opText;
    if (op_ == RelOp::Le) {
        if (c == 1) {
            opText = "<";
        } else {
            opText = "=<";
            if (c > 0) { pos.addConstant(c); }
            if (c < 0) { neg.addConstant(-c); }
        }
    } else {
        opText = op_ == RelOp::Eq ? "=" : "=\\=";
        if (c > 0) { pos.addConstant(c); }
        if (c < 0) { neg.addConstant(-c); }
    }
    return pos.str() + opText + neg.str();
}

std::strong_ordering ConstraintAtom::operator<=>(const ConstraintAtom & o) const {
    if (auto c = kind_ <=> o.kind_; c != 0) { return c; }
    switch (kind_) {
        case Kind::BoolLit: return value_ <=> o.value_;
        case Kind::IntRel:
            if (auto c = op_ <=> o.op_; c != 0) { return c; }
            return expr_ <=> o.expr_;
        case Kind::ListEq:
        case Kind::ListNe:
            if (auto c = lhs_ <=> o.lhs_; c != 0) { return c; }
            return rhs_ <=> o.rhs_;
    }
    return std::strong_ordering::equal;
}

std::string Atom::str() const {
    if (args.empty()) { return pred; }
    std::string out = pred + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) { out += ","; }
        out += args[i].str();
    }
    return out + ")";
}

void Atom::collectVars(VarList & out) const {
    for (auto const & a : args) { a.collectVars(out); }
}

bool Atom::containsVar(const std::string & name) const {
    return std::any_of(args.begin(), args.end(), [&](const Term & t) { return t.containsVar(name); });
}

VarList dedupVars(const VarList & vars) {
    VarList out;
    std::set<std::string> seen;
    for (auto const & v : vars) {
        if (seen.insert(v.first).second) { out.push_back(v); }
    }
    return out;
}

VarList Clause::freeVars() const {
    VarList all;
    if (head) { head->collectVars(all); }
    for (auto const & c : constraint) { c.collectVars(all); }
    for (auto const & a : body) { a.collectVars(all); }
    return dedupVars(all);
}

bool Clause::hasBasicTypes() const {
    auto vars = freeVars();
    return std::all_of(vars.begin(), vars.end(), [](auto const & v) { return isBasic(v.second); });
}

int Clause::occurrences(const std::string & name) const {
    VarList all;
    if (head) { head->collectVars(all); }
    for (auto const & c : constraint) { c.collectVars(all); }
    for (auto const & a : body) { a.collectVars(all); }
    return static_cast<int>(std::count_if(all.begin(), all.end(), [&](auto const & v) { return v.first == name; }));
}

std::string joinAtoms(const std::vector<Atom> & atoms) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) { out += ", "; }
        out += atoms[i].str();
    }
    return out;
}

std::string Clause::str() const {
    std::string out = head ? head->str() : "false";
    std::vector<std::string> items;
    for (auto const & c : constraint) { items.push_back(c.str()); }
    for (auto const & a : body) { items.push_back(a.str()); }
    if (!items.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i > 0) { out += ", "; }
            out += items[i];
        }
    }
    return out + ".";
}

} // namespace chcelim
