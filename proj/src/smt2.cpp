/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/smt2.hpp"

#include <cctype>
#include <set>

namespace chcelim {

std::string smtSymbol(const std::string & name) {
    static const std::set<std::string> reserved = {
        "and", "or", "not", "=>", "ite", "true", "false", "let", "forall", "exists", "distinct", "par",
        "as", "assert", "nil", "cons", "head", "tail", "Int", "Bool", "IntList", "div", "mod", "abs",
        "_", "!", "BINARY", "DECIMAL", "HEXADECIMAL", "NUMERAL", "STRING", "match"};
    bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && std::string("~!@$%^&*_-+=<>.?/").find(c) == std::string::npos) {
            simple = false;
        }
    }
    if (simple && reserved.count(name) == 0) { return name; }
    return "|" + name + "|";
}

namespace {

std::string smtInt(std::int64_t v) {
    return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v);
}

std::string smtSum(const std::vector<std::string> & parts) {
    if (parts.empty()) { return "0"; }
    if (parts.size() == 1) { return parts[0]; }
    std::string out = "(+";
    for (auto const & p : parts) { out += " " + p; }
    return out + ")";
}

std::string smtMonomial(const std::string & v, std::int64_t c) {
    if (c == 1) { return smtSymbol(v); }
    return "(* " + smtInt(c) + " " + smtSymbol(v) + ")";
}

std::string smtLinear(const LinExpr & e) {
    std::vector<std::string> parts;
    for (auto const & [v, c] : e.coeffs()) { parts.push_back(smtMonomial(v, c)); }
    if (e.constant() != 0) { parts.push_back(smtInt(e.constant())); }
    return smtSum(parts);
}

std::string sortSymbol(Sort s) {
    switch (s) {
        case Sort::Int: return "Int";
        case Sort::Bool: return "Bool";
        case Sort::IntList: return "IntList";
    }
    return "Int";
}

std::string smtAtom(const Atom & a) {
    if (a.args.empty()) { return smtSymbol(a.pred); }
    std::string out = "(" + smtSymbol(a.pred);
    for (auto const & t : a.args) { out += " " + smtTerm(t); }
    return out + ")";
}

} // namespace

std::string smtTerm(const Term & t) {
    switch (t.kind()) {
        case Term::Kind::Var: return smtSymbol(t.name());
        case Term::Kind::IntConst: return smtInt(t.value());
        case Term::Kind::Nil: return "nil";
        case Term::Kind::Cons: return "(cons " + smtTerm(t.head()) + " " + smtTerm(t.tail()) + ")";
        case Term::Kind::Lin: return smtLinear(t.linExpr());
    }
    return "?";
}

std::string smtConstraint(const ConstraintAtom & c) {
    switch (c.kind()) {
        case ConstraintAtom::Kind::BoolLit: return c.value() ? "true" : "false";
        case ConstraintAtom::Kind::ListEq: return "(= " + smtTerm(c.lhs()) + " " + smtTerm(c.rhs()) + ")";
        case ConstraintAtom::Kind::ListNe: return "(not (= " + smtTerm(c.lhs()) + " " + smtTerm(c.rhs()) + "))";
        case ConstraintAtom::Kind::IntRel: break;
    }
    // Same left/right split as the Prolog printer: positive terms on the left.
    std::vector<std::string> lhs;
    std::vector<std::string> rhs;
    for (auto const & [v, k] : c.expr().coeffs()) {
        if (k > 0) {
            lhs.push_back(smtMonomial(v, k));
        } else {
            rhs.push_back(smtMonomial(v, -k));
        }
    }
    std::int64_t k = c.expr().constant();
    if (k > 0) { lhs.push_back(std::to_string(k)); }
    if (k < 0) { rhs.push_back(std::to_string(-k)); }
    std::string body = smtSum(lhs) + " " + smtSum(rhs);
    switch (c.op()) {
        case RelOp::Eq: return "(= " + body + ")";
        case RelOp::Ne: return "(not (= " + body + "))";
        default: return "(<= " + body + ")";
    }
}

std::string emitSmt2(const Program & p) {
    std::string out = "(set-logic HORN)\n(set-option :produce-models true)\n";
    bool lists = false;
    for (auto const & [name, info] : p.predicates) {
        for (Sort s : info.argSorts) { lists = lists || s == Sort::IntList; }
    }
    lists = lists || p.usesLists();
    if (lists) { out += "(declare-datatypes ((IntList 0)) (((nil) (cons (head Int) (tail IntList)))))\n"; }
    for (auto const & name : p.declOrder) {
        const PredicateInfo & info = p.predicates.at(name);
        out += "(declare-fun " + smtSymbol(name) + " (";
        for (std::size_t i = 0; i < info.argSorts.size(); ++i) {
            if (i > 0) { out += " "; }
            out += sortSymbol(info.argSorts[i]);
        }
        out += ") Bool)\n";
    }
    for (auto const & c : p.clauses) {
        std::vector<std::string> ante;
        for (auto const & k : c.constraint) { ante.push_back(smtConstraint(k)); }
        for (auto const & a : c.body) { ante.push_back(smtAtom(a)); }
        std::string premise;
        if (ante.empty()) {
            premise = "true";
        } else if (ante.size() == 1) {
            premise = ante[0];
        } else {
            premise = "(and";
            for (auto const & a : ante) { premise += " " + a; }
            premise += ")";
        }
        std::string body = "(=> " + premise + " " + (c.head ? smtAtom(*c.head) : "false") + ")";
        auto vars = c.freeVars();
        out += "; clause " + c.id + "\n";
        if (vars.empty()) {
            out += "(assert " + body + ")\n";
        } else {
            std::string binder;
            for (auto const & [v, s] : vars) {
                if (!binder.empty()) { binder += " "; }
                binder += "(" + smtSymbol(v) + " " + sortSymbol(s) + ")";
            }
            out += "(assert (forall (" + binder + ") " + body + "))\n";
        }
    }
    out += "(check-sat)\n(get-model)\n";
    return out;
}

} // namespace chcelim
