/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/term.hpp"

#include <stdexcept>

namespace chcelim {

std::string_view sortName(Sort s) {
    switch (s) {
        case Sort::Int: return "int";
        case Sort::Bool: return "bool";
        case Sort::IntList: return "ilist";
    }
    return "?";
}

Term Term::var(std::string name, Sort sort) {
    Term t;
    t.kind_ = Kind::Var;
    t.name_ = std::move(name);
    t.varSort_ = sort;
    return t;
}

Term Term::intConst(std::int64_t value) {
    Term t;
    t.kind_ = Kind::IntConst;
    t.value_ = value;
    return t;
}

Term Term::nil() {
    Term t;
    t.kind_ = Kind::Nil;
    return t;
}

Term Term::cons(Term head, Term tail) {
    if (head.sort() != Sort::Int) { throw std::invalid_argument("cons head must be Int-sorted: " + head.str()); }
    if (tail.sort() != Sort::IntList) { throw std::invalid_argument("cons tail must be IntList-sorted: " + tail.str()); }
    Term t;
    t.kind_ = Kind::Cons;
    t.children_ = std::make_shared<const std::pair<Term, Term>>(std::move(head), std::move(tail));
    return t;
}

Term Term::lin(LinExpr expr) {
    if (expr.isConstant()) { return intConst(expr.constant()); }
    if (expr.isSingleVar()) { return var(expr.coeffs().begin()->first, Sort::Int); }
    Term t;
    t.kind_ = Kind::Lin;
    t.lin_ = std::move(expr);
    return t;
}

Term Term::list(const std::vector<Term> & elems, Term tail) {
    Term acc = std::move(tail);
    for (auto it = elems.rbegin(); it != elems.rend(); ++it) { acc = cons(*it, std::move(acc)); }
    return acc;
}

Sort Term::sort() const {
    switch (kind_) {
        case Kind::Var: return varSort_;
        case Kind::Nil:
        case Kind::Cons: return Sort::IntList;
        case Kind::IntConst:
        case Kind::Lin: return Sort::Int;
    }
    return Sort::Int;
}

LinExpr Term::toLinear() const {
    switch (kind_) {
        case Kind::Var:
            if (varSort_ != Sort::Int) { throw std::invalid_argument("not an integer term: " + name_); }
            return LinExpr::variable(name_);
        case Kind::IntConst: return LinExpr(value_);
        case Kind::Lin: return lin_;
        default: throw std::invalid_argument("not an integer term: " + str());
    }
}

bool Term::isGround() const {
    switch (kind_) {
        case Kind::Var: return false;
        case Kind::IntConst:
        case Kind::Nil: return true;
        case Kind::Cons: return head().isGround() && tail().isGround();
        case Kind::Lin: return lin_.isConstant();
    }
    return true;
}

void Term::collectVars(std::vector<std::pair<std::string, Sort>> & out) const {
    switch (kind_) {
        case Kind::Var: out.emplace_back(name_, varSort_); break;
        case Kind::Cons:
            head().collectVars(out);
            tail().collectVars(out);
            break;
        case Kind::Lin:
            for (auto const & [v, c] : lin_.coeffs()) { out.emplace_back(v, Sort::Int); }
            break;
        default: break;
    }
}

bool Term::containsVar(const std::string & name) const {
    switch (kind_) {
        case Kind::Var: return name_ == name;
        case Kind::Cons: return head().containsVar(name) || tail().containsVar(name);
        case Kind::Lin: return lin_.coeff(name) != 0;
        default: return false;
    }
}

std::string Term::str() const {
    switch (kind_) {
        case Kind::Var: return name_;
        case Kind::IntConst: return std::to_string(value_);
        case Kind::Lin: return lin_.str();
        case Kind::Nil: return "[]";
        case Kind::Cons: {
            std::string out = "[" + head().str();
            const Term * rest = &tail();
            while (rest->isCons()) {
                out += "," + rest->head().str();
                rest = &rest->tail();
            }
            if (!rest->isNil()) { out += "|" + rest->str(); }
            return out + "]";
        }
    }
    return "?";
}

std::strong_ordering Term::operator<=>(const Term & o) const {
    if (auto c = kind_ <=> o.kind_; c != 0) { return c; }
    switch (kind_) {
        case Kind::Var:
            if (auto c = name_ <=> o.name_; c != 0) { return c; }
            return varSort_ <=> o.varSort_;
        case Kind::IntConst: return value_ <=> o.value_;
        case Kind::Nil: return std::strong_ordering::equal;
        case Kind::Cons:
            if (children_ == o.children_) { return std::strong_ordering::equal; }
            if (auto c = head() <=> o.head(); c != 0) { return c; }
            return tail() <=> o.tail();
        case Kind::Lin: return lin_ <=> o.lin_;
    }
    return std::strong_ordering::equal;
}

} // namespace chcelim
