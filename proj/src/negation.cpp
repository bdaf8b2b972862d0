/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/negation.hpp"

#include "chcelim/simplify.hpp"
#include "chcelim/substitution.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace chcelim {

namespace {

struct Projected {
    std::vector<Term> head;
    Constraint constraint;
    std::optional<std::vector<Term>> rec;
};

struct Alternative {
    Constraint constraint;
    std::vector<Atom> atoms;
};

std::set<std::string> varsOf(const std::vector<Term> & ts) {
    VarList vs;
    for (auto const & t : ts) { t.collectVars(vs); }
    std::set<std::string> out;
    for (auto const & [v, s] : vs) { out.insert(v); }
    return out;
}

std::set<std::string> varsOf(const Constraint & c) {
    VarList vs;
    for (auto const & a : c) { a.collectVars(vs); }
    std::set<std::string> out;
    for (auto const & [v, s] : vs) { out.insert(v); }
    return out;
}

std::vector<Term> pick(const std::vector<Term> & args, const std::vector<std::size_t> & idx) {
    std::vector<Term> out;
    for (auto i : idx) { out.push_back(args.at(i)); }
    return out;
}

std::vector<Projected> project(const NegSpec & spec, const Program & p) {
    std::vector<Projected> out;
    for (const Clause * d : p.definingClauses(spec.basePred)) {
        if (d->body.size() > 1) {
            throw UnsupportedShape("negation of " + spec.basePred + ": clause " + d->id + " has more than one body atom");
        }
        if (d->body.size() == 1 && d->body[0].pred != spec.basePred) {
            throw UnsupportedShape("negation of " + spec.basePred + ": clause " + d->id + " calls " + d->body[0].pred);
        }
        Projected pr;
        pr.head = pick(d->head->args, spec.visible);
        pr.constraint = d->constraint;
        auto consVars = varsOf(d->constraint);
        auto hiddenHead = varsOf(pick(d->head->args, spec.hidden));
        auto visibleHead = varsOf(pr.head);
        std::set<std::string> recVisible;
        if (!d->body.empty()) {
            const Atom & r = d->body[0];
            pr.rec = pick(r.args, spec.visible);
            recVisible = varsOf(*pr.rec);
            std::set<std::string> seen;
            for (auto const & t : pick(r.args, spec.hidden)) {
                if (!t.isVar() || !seen.insert(t.name()).second) {
                    throw UnsupportedShape("negation of " + spec.basePred + ": clause " + d->id +
                                           " passes a non-variable hidden argument to the recursive call");
                }
                if (visibleHead.count(t.name()) || consVars.count(t.name()) || recVisible.count(t.name())) {
                    throw UnsupportedShape("negation of " + spec.basePred + ": hidden argument " + t.name() +
                                           " of clause " + d->id + " is constrained");
                }
            }
        }
        for (auto const & v : hiddenHead) {
            if (consVars.count(v) || recVisible.count(v)) {
                throw UnsupportedShape("negation of " + spec.basePred + ": hidden variable " + v + " of clause " + d->id +
                                       " is constrained");
            }
        }
        out.push_back(std::move(pr));
    }
    return out;
}

std::string ordinal(std::size_t n) {
    std::string suffix = "th";
    if (n % 100 < 11 || n % 100 > 13) {
        if (n % 10 == 1) { suffix = "st"; }
        if (n % 10 == 2) { suffix = "nd"; }
        if (n % 10 == 3) { suffix = "rd"; }
    }
    return std::to_string(n) + suffix;
}

std::string cellLetter(std::size_t k) {
    static const std::string letters = "XYZUVW";
    if (k < letters.size()) { return std::string(1, letters[k]); }
    return "X" + std::to_string(k);
}

} // namespace

std::string notExistsName(const std::string & base, const std::vector<std::size_t> & hidden) {
    std::string name = "not_exists";
    for (auto h : hidden) { name += "_" + ordinal(h + 1); }
    return name + "_" + base;
}

std::optional<NegSpec> negSpecFromName(const std::string & name, const Program & p) {
    const std::string prefix = "not_exists_";
    if (name.rfind(prefix, 0) != 0) { return std::nullopt; }
    std::string rest = name.substr(prefix.size());
    NegSpec spec;
    spec.newName = name;
    while (true) {
        auto us = rest.find('_');
        if (us == std::string::npos) { break; }
        std::string tok = rest.substr(0, us);
        std::size_t digits = 0;
        while (digits < tok.size() && std::isdigit(static_cast<unsigned char>(tok[digits]))) { ++digits; }
        if (digits == 0 || digits == tok.size()) { break; }
        std::size_t n = std::stoul(tok.substr(0, digits));
        if (n == 0 || ordinal(n) != tok) { break; }
        spec.hidden.push_back(n - 1);
        rest = rest.substr(us + 1);
    }
    const PredicateInfo * base = p.info(rest);
    if (spec.hidden.empty() || base == nullptr) { return std::nullopt; }
    for (auto h : spec.hidden) {
        if (h >= base->arity()) { return std::nullopt; }
    }
    spec.basePred = rest;
    for (std::size_t i = 0; i < base->arity(); ++i) {
        if (std::find(spec.hidden.begin(), spec.hidden.end(), i) == spec.hidden.end()) { spec.visible.push_back(i); }
    }
    return spec;
}

PredicateInfo notExistsInfo(const NegSpec & spec, const Program & p) {
    const PredicateInfo * base = p.info(spec.basePred);
    if (base == nullptr) { throw UnsupportedShape("undeclared predicate " + spec.basePred); }
    PredicateInfo info;
    info.name = spec.newName;
    for (auto i : spec.visible) {
        info.argSorts.push_back(base->argSorts.at(i));
        info.modes.push_back(Mode::In);
    }
    info.role = PredRole::NotExists;
    return info;
}

std::vector<Clause> eliminateNegation(const NegSpec & spec, const Program & p) {
    const PredicateInfo * base = p.info(spec.basePred);
    if (base == nullptr) { throw UnsupportedShape("undeclared predicate " + spec.basePred); }
    // Total on the visible inputs: the projection is everything, the complement empty.
    if (base->totalFunctional) {
        bool hiddenOutputs = std::all_of(spec.hidden.begin(), spec.hidden.end(),
                                         [&](std::size_t h) { return base->modes.at(h) == Mode::Out; });
        if (hiddenOutputs) { return {}; }
    }
    auto projected = project(spec, p);
    Program scratch = p;
    if (!scratch.isDeclared(spec.newName)) { scratch.declare(notExistsInfo(spec, p)); }

    std::vector<std::size_t> split;
    for (std::size_t k = 0; k < spec.visible.size(); ++k) {
        if (base->argSorts[spec.visible[k]] != Sort::IntList) { continue; }
        bool constructor = std::any_of(projected.begin(), projected.end(),
                                       [&](const Projected & pr) { return pr.head[k].isConstructor(); });
        if (constructor) { split.push_back(k); }
    }

    std::vector<Clause> out;
    const std::size_t cells = std::size_t{1} << split.size();
    for (std::size_t mask = 0; mask < cells; ++mask) {
        std::vector<Term> args;
        std::set<std::string> cellVars;
        std::vector<std::string> cellOrder;
        for (std::size_t k = 0; k < spec.visible.size(); ++k) {
            Sort s = base->argSorts[spec.visible[k]];
            std::string x = cellLetter(k);
            auto it = std::find(split.begin(), split.end(), k);
            if (it == split.end()) {
                args.push_back(Term::var(x, s));
                cellVars.insert(x);
                cellOrder.push_back(x);
                continue;
            }
            std::size_t bit = split.size() - 1 - static_cast<std::size_t>(it - split.begin());
            if ((mask >> bit & 1) == 0) {
                args.push_back(Term::nil());
            } else {
                args.push_back(Term::cons(Term::var(x, Sort::Int), Term::var(x + "s", Sort::IntList)));
                cellVars.insert(x);
                cellVars.insert(x + "s");
                cellOrder.push_back(x);
                cellOrder.push_back(x + "s");
            }
        }
        auto cellRank = [&](const std::string & v) {
            auto it = std::find(cellOrder.begin(), cellOrder.end(), v);
            return static_cast<std::size_t>(it - cellOrder.begin());
        };
        KeepPolicy keepCell = [&](const std::string & a, const std::string & b) {
            bool ca = cellVars.count(a) != 0;
            bool cb = cellVars.count(b) != 0;
            if (ca != cb) { return ca; }
            if (ca) { return cellRank(a) < cellRank(b); }
            return a < b;
        };

        bool covered = false;
        std::vector<std::vector<Alternative>> perClause;
        for (auto const & pr0 : projected) {
            // Rename the projected clause apart from the cell variables.
            Clause tmp;
            tmp.head = Atom{spec.newName, pr0.head};
            tmp.constraint = pr0.constraint;
            if (pr0.rec) { tmp.body.push_back(Atom{spec.newName, *pr0.rec}); }
            auto [ren, unused] = renameApart(tmp, cellVars);
            Substitution s;
            Constraint conds;
            bool ok = true;
            for (std::size_t k = 0; k < args.size() && ok; ++k) {
                ok = unify(args[k], ren.head->args[k], s, conds, keepCell);
            }
            if (!ok) { continue; }
            for (auto const & v : cellOrder) {
                const Term * b = s.lookup(v);
                if (b == nullptr) { continue; }
                Term cv = Term::var(v, b->sort());
                conds.push_back(b->sort() == Sort::IntList ? ConstraintAtom::listRel(true, cv, *b)
                                                           : ConstraintAtom::intRel(RelOp::Eq, cv, *b));
            }
            for (auto const & c : ren.constraint) { conds.push_back(s.apply(c)); }
            std::optional<Atom> rec;
            if (!ren.body.empty()) { rec = s.apply(ren.body[0]); }
            Constraint kept;
            bool impossible = false;
            for (auto const & c : conds) {
                if (c.isFalse()) { impossible = true; }
                if (c.isTrue() || std::find(kept.begin(), kept.end(), c) != kept.end()) { continue; }
                kept.push_back(c);
            }
            if (impossible) { continue; }
            std::set<std::string> used = varsOf(kept);
            if (rec) {
                for (auto const & v : varsOf(rec->args)) { used.insert(v); }
            }
            for (auto const & v : used) {
                if (!cellVars.count(v)) {
                    throw UnsupportedShape("negation of " + spec.basePred + ": local variable " + v +
                                           " would be existentially quantified under negation");
                }
            }
            if (kept.empty() && !rec) {
                covered = true;
                break;
            }
            std::vector<Alternative> alts;
            for (std::size_t i = 0; i < kept.size(); ++i) {
                Alternative a;
                a.constraint.assign(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(i));
                a.constraint.push_back(kept[i].negated());
                alts.push_back(std::move(a));
            }
            if (rec) {
                Alternative a;
                a.constraint = kept;
                a.atoms.push_back(*rec);
                alts.push_back(std::move(a));
            }
            perClause.push_back(std::move(alts));
        }
        if (covered) { continue; }

        std::vector<Alternative> combos{Alternative{}};
        for (auto const & alts : perClause) {
            std::vector<Alternative> next;
            for (auto const & base0 : combos) {
                for (auto const & a : alts) {
                    Alternative m = base0;
                    m.constraint.insert(m.constraint.end(), a.constraint.begin(), a.constraint.end());
                    m.atoms.insert(m.atoms.end(), a.atoms.begin(), a.atoms.end());
                    next.push_back(std::move(m));
                }
            }
            combos = std::move(next);
        }
        SimplifyOptions so;
        so.mergeFunctional = false;
        so.solveListEqualities = false;
        for (auto const & m : combos) {
            Clause c;
            c.head = Atom{spec.newName, args};
            c.constraint = m.constraint;
            c.body = m.atoms;
            for (auto & r : simplifyClause(c, scratch, Invariants{}, so)) {
                r.id = spec.newName + "." + std::to_string(out.size() + 1);
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

} // namespace chcelim
