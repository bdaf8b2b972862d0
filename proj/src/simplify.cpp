/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/simplify.hpp"

#include "chcelim/substitution.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace chcelim {

namespace {

constexpr std::size_t kMaxRows = 4000;
constexpr std::int64_t kMaxCoeff = std::int64_t{1} << 40;

// Normalises `e <= 0` by the gcd of its coefficients (integer tightening).
LinExpr tighten(const LinExpr & e) {
    std::int64_t g = e.coeffGcd();
    if (g <= 1) { return e; }
    LinExpr out(ceilDiv(e.constant(), g));
    for (auto const & [v, k] : e.coeffs()) { out.addTerm(v, k / g); }
    return out;
}

// Fourier-Motzkin over rows `e <= 0`. Returns false only when certainly unsat.
bool fmSat(std::vector<LinExpr> rows) {
    while (true) {
        std::set<LinExpr> uniq;
        for (auto const & r0 : rows) {
            LinExpr r = tighten(r0);
            if (r.isConstant()) {
                if (r.constant() > 0) { return false; }
                continue;
            }
            for (auto const & [v, k] : r.coeffs()) {
                if (std::llabs(k) > kMaxCoeff) { return true; }
            }
            uniq.insert(r);
        }
        if (uniq.empty()) { return true; }
        rows.assign(uniq.begin(), uniq.end());
        std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
        for (auto const & r : rows) {
            for (auto const & [v, k] : r.coeffs()) {
                auto & c = counts[v];
                (k > 0 ? c.first : c.second)++;
            }
        }
        std::string best;
        std::size_t bestCost = 0;
        bool first = true;
        for (auto const & [v, c] : counts) {
            std::size_t cost = c.first * c.second;
            if (first || cost < bestCost) {
                best = v;
                bestCost = cost;
                first = false;
            }
        }
        std::vector<LinExpr> pos;
        std::vector<LinExpr> neg;
        std::vector<LinExpr> next;
        for (auto const & r : rows) {
            std::int64_t k = r.coeff(best);
            if (k > 0) {
                pos.push_back(r);
            } else if (k < 0) {
                neg.push_back(r);
            } else {
                next.push_back(r);
            }
        }
        if (next.size() + pos.size() * neg.size() > kMaxRows) { return true; }
        for (auto const & p : pos) {
            for (auto const & n : neg) {
                std::int64_t a = p.coeff(best);
                std::int64_t b = -n.coeff(best);
                std::int64_t g = gcd64(a, b);
                next.push_back(p * (b / g) + n * (a / g));
            }
        }
        rows = std::move(next);
    }
}

void addRows(const ConstraintAtom & c, std::vector<LinExpr> & rows) {
    if (c.kind() == ConstraintAtom::Kind::BoolLit) {
        if (!c.value()) { rows.emplace_back(1); }
        return;
    }
    if (!c.isInt()) { return; }
    if (c.op() == RelOp::Le) {
        rows.push_back(c.expr());
    } else if (c.op() == RelOp::Eq) {
        rows.push_back(c.expr());
        rows.push_back(-c.expr());
    }
}

std::vector<LinExpr> rowsOf(const Constraint & c) {
    std::vector<LinExpr> rows;
    for (auto const & a : c) { addRows(a, rows); }
    return rows;
}

Clause substituteClause(const Substitution & s, const Clause & c) {
    Clause r = c;
    if (s.empty()) { return r; }
    if (r.head) { r.head = s.apply(*r.head); }
    r.constraint = s.apply(c.constraint);
    r.body = s.apply(c.body);
    return r;
}

std::set<std::string> headVars(const Clause & c) {
    std::set<std::string> out;
    if (c.head) {
        VarList vs;
        c.head->collectVars(vs);
        for (auto const & [v, s] : vs) { out.insert(v); }
    }
    return out;
}

std::set<std::string> atomVars(const Clause & c) {
    std::set<std::string> out;
    VarList vs;
    for (auto const & a : c.body) { a.collectVars(vs); }
    for (auto const & [v, s] : vs) { out.insert(v); }
    return out;
}

KeepPolicy rankPolicy(const Clause & c) {
    std::map<std::string, std::size_t> rank;
    for (auto const & [v, s] : c.freeVars()) { rank.emplace(v, rank.size()); }
    return [rank](const std::string & a, const std::string & b) {
        auto ia = rank.find(a);
        auto ib = rank.find(b);
        std::size_t ra = ia == rank.end() ? rank.size() : ia->second;
        std::size_t rb = ib == rank.end() ? rank.size() : ib->second;
        if (ra != rb) { return ra < rb; }
        return a < b;
    };
}

void dedupConstraint(Constraint & c) {
    Constraint out;
    for (auto const & a : c) {
        if (a.isTrue()) { continue; }
        if (std::find(out.begin(), out.end(), a) == out.end()) { out.push_back(a); }
    }
    c = std::move(out);
}

bool hasFalse(const Constraint & c) {
    return std::any_of(c.begin(), c.end(), [](const ConstraintAtom & a) { return a.isFalse(); });
}

enum class Step { Unchanged, Changed, Deleted };

// Resolves list equalities by unification and decides trivial disequalities.
// A disequality between two cons cells is split; the extra clause is pushed to
// `spill`.
Step solveListRelations(Clause & c, std::vector<Clause> & spill, bool solveEqualities) {
    for (std::size_t i = 0; i < c.constraint.size(); ++i) {
        const ConstraintAtom a = c.constraint[i];
        if (a.kind() == ConstraintAtom::Kind::ListEq && solveEqualities) {
            Substitution s;
            Constraint residual;
            if (!unify(a.lhs(), a.rhs(), s, residual, rankPolicy(c))) { return Step::Deleted; }
            c.constraint.erase(c.constraint.begin() + static_cast<std::ptrdiff_t>(i));
            c = substituteClause(s, c);
            c.constraint.insert(c.constraint.end(), residual.begin(), residual.end());
            return Step::Changed;
        }
        if (a.kind() != ConstraintAtom::Kind::ListNe) { continue; }
        const Term & l = a.lhs();
        const Term & r = a.rhs();
        if (l == r) { return Step::Deleted; }
        bool clash = (l.isNil() && r.isCons()) || (l.isCons() && r.isNil()) ||
                     (l.isVar() && r.containsVar(l.name())) || (r.isVar() && l.containsVar(r.name()));
        if (clash) {
            c.constraint.erase(c.constraint.begin() + static_cast<std::ptrdiff_t>(i));
            return Step::Changed;
        }
        if (l.isCons() && r.isCons()) {
            bool sameHead = l.head() == r.head();
            bool sameTail = l.tail() == r.tail();
            Clause headCase = c;
            Clause tailCase = c;
            headCase.constraint[i] = ConstraintAtom::intRel(RelOp::Ne, l.head(), r.head());
            tailCase.constraint[i] = ConstraintAtom::listRel(false, l.tail(), r.tail());
            if (sameHead) {
                c = tailCase;
            } else if (sameTail) {
                c = headCase;
            } else {
                c = headCase;
                spill.push_back(tailCase);
            }
            return Step::Changed;
        }
    }
    return Step::Unchanged;
}

// Eliminates integer variables through unit-coefficient equalities.
Step eliminateEqualities(Clause & c) {
    auto heads = headVars(c);
    auto atoms = atomVars(c);
    auto order = c.freeVars();
    std::map<std::string, std::size_t> pos;
    for (auto const & [v, s] : order) { pos.emplace(v, pos.size()); }
    int bestCat = 0;
    std::size_t bestIdx = 0;
    std::string bestVar;
    std::size_t bestPos = 0;
    for (std::size_t i = 0; i < c.constraint.size(); ++i) {
        const ConstraintAtom & a = c.constraint[i];
        if (!a.isInt() || a.op() != RelOp::Eq) { continue; }
        for (auto const & [v, k] : a.expr().coeffs()) {
            if (k != 1 && k != -1) { continue; }
            LinExpr rest = a.expr();
            rest.addTerm(v, -k);
            LinExpr sol = rest * (-k);
            int cat = 0;
            bool simple = sol.isConstant() || sol.isSingleVar();
            if (!heads.count(v) && !atoms.count(v)) {
                // A variable in a single equation only is left alone: the
                // equation is trivially satisfiable and keeps the clause shape.
                if (c.occurrences(v) < 2) { continue; }
                cat = 3;
            } else if (!heads.count(v) && simple) {
                cat = 2;
            } else if (heads.count(v) && sol.isConstant()) {
                cat = 1;
            }
            if (cat == 0) { continue; }
            std::size_t p = pos.count(v) ? pos[v] : 0;
            if (cat > bestCat || (cat == bestCat && p > bestPos)) {
                bestCat = cat;
                bestIdx = i;
                bestVar = v;
                bestPos = p;
            }
        }
    }
    if (bestCat == 0) { return Step::Unchanged; }
    const ConstraintAtom a = c.constraint[bestIdx];
    std::int64_t k = a.expr().coeff(bestVar);
    LinExpr rest = a.expr();
    rest.addTerm(bestVar, -k);
    Substitution s;
    s.bind(bestVar, Sort::Int, Term::lin(rest * (-k)));
    c.constraint.erase(c.constraint.begin() + static_cast<std::ptrdiff_t>(bestIdx));
    c = substituteClause(s, c);
    return Step::Changed;
}

// Finds two variables forced equal by the integer constraints (e.g. N=M-1
// together with M=N1+1) and keeps only one of them, preferring head variables
// and earlier occurrences.
Step mergeImpliedEqualities(Clause & c) {
    Constraint ints;
    std::vector<std::string> vars;
    for (auto const & a : c.constraint) {
        if (!a.isInt() || a.op() == RelOp::Ne) { continue; }
        ints.push_back(a);
        for (auto const & [v, k] : a.expr().coeffs()) {
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) { vars.push_back(v); }
        }
    }
    if (ints.size() < 2) { return Step::Unchanged; }
    auto heads = headVars(c);
    auto policy = rankPolicy(c);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            const std::string & a = vars[i];
            const std::string & b = vars[j];
            if (heads.count(a) && heads.count(b)) { continue; }
            LinExpr diff = LinExpr::variable(a) - LinExpr::variable(b);
            if (!intImplies(ints, ConstraintAtom::intRel(RelOp::Eq, diff))) { continue; }
            bool keepA = heads.count(a) || (!heads.count(b) && policy(a, b));
            Substitution s;
            const std::string & gone = keepA ? b : a;
            const std::string & kept = keepA ? a : b;
            s.bind(gone, Sort::Int, Term::var(kept, Sort::Int));
            c = substituteClause(s, c);
            return Step::Changed;
        }
    }
    return Step::Unchanged;
}

// Drops integer inequalities and disequalities mentioning a variable that
// occurs nowhere else: they are satisfiable by choosing that variable.
Step dropFreeIntConstraints(Clause & c) {
    for (std::size_t i = 0; i < c.constraint.size(); ++i) {
        const ConstraintAtom & a = c.constraint[i];
        if (a.kind() == ConstraintAtom::Kind::ListNe) {
            // Some value of a variable occurring nowhere else separates the sides.
            VarList vs;
            a.collectVars(vs);
            for (auto const & [v, s] : vs) {
                if (c.occurrences(v) == 1) {
                    c.constraint.erase(c.constraint.begin() + static_cast<std::ptrdiff_t>(i));
                    return Step::Changed;
                }
            }
            continue;
        }
        if (!a.isInt() || a.op() == RelOp::Eq) { continue; }
        for (auto const & [v, k] : a.expr().coeffs()) {
            if (c.occurrences(v) == 1) {
                c.constraint.erase(c.constraint.begin() + static_cast<std::ptrdiff_t>(i));
                return Step::Changed;
            }
        }
    }
    return Step::Unchanged;
}

bool feasible(const Clause & c, const Invariants & inv) {
    Constraint all;
    for (auto const & a : c.constraint) {
        if (a.isInt() || a.kind() == ConstraintAtom::Kind::BoolLit) { all.push_back(a); }
    }
    for (auto const & a : c.body) {
        auto extra = inv.forAtom(a);
        all.insert(all.end(), extra.begin(), extra.end());
    }
    if (!intSatisfiable(all)) { return false; }
    for (auto const & a : c.constraint) {
        if (a.isInt() && a.op() == RelOp::Ne && intImplies(all, ConstraintAtom::intRel(RelOp::Eq, a.expr()))) {
            return false;
        }
    }
    return true;
}

Step mergeFunctionalAtoms(Clause & c, const Program & p) {
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        const PredicateInfo * info = p.info(c.body[i].pred);
        if (info == nullptr || !info->totalFunctional) { continue; }
        for (std::size_t j = i + 1; j < c.body.size(); ++j) {
            if (c.body[j].pred != c.body[i].pred) { continue; }
            bool sameIn = true;
            for (std::size_t k = 0; k < info->arity(); ++k) {
                if (info->modes[k] == Mode::In && !(c.body[i].args[k] == c.body[j].args[k])) { sameIn = false; }
            }
            if (!sameIn) { continue; }
            Atom keep = c.body[i];
            Atom drop = c.body[j];
            c.body.erase(c.body.begin() + static_cast<std::ptrdiff_t>(j));
            Substitution s;
            Constraint residual;
            auto policy = rankPolicy(c);
            for (std::size_t k = 0; k < info->arity(); ++k) {
                if (info->modes[k] != Mode::Out) { continue; }
                if (info->argSorts[k] == Sort::IntList) {
                    if (!unify(keep.args[k], drop.args[k], s, residual, policy)) { return Step::Deleted; }
                } else {
                    residual.push_back(ConstraintAtom::intRel(RelOp::Eq, s.apply(keep.args[k]), s.apply(drop.args[k])));
                }
            }
            c = substituteClause(s, c);
            c.constraint.insert(c.constraint.end(), residual.begin(), residual.end());
            return Step::Changed;
        }
    }
    return Step::Unchanged;
}

// A total functional atom whose outputs are distinct variables that occur
// nowhere else is always satisfiable and can be removed.
bool removableTotalAtom(const Clause & c, std::size_t i, const Program & p) {
    const Atom & a = c.body[i];
    const PredicateInfo * info = p.info(a.pred);
    if (info == nullptr || !info->totalFunctional) { return false; }
    bool anyOut = false;
    for (std::size_t k = 0; k < info->arity(); ++k) {
        if (info->modes[k] != Mode::Out) { continue; }
        anyOut = true;
        if (!a.args[k].isVar() || c.occurrences(a.args[k].name()) != 1) { return false; }
    }
    return anyOut;
}

Step dropUnusedOutputs(Clause & c, const Program & p) {
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (removableTotalAtom(c, i, p)) {
            c.body.erase(c.body.begin() + static_cast<std::ptrdiff_t>(i));
            return Step::Changed;
        }
    }
    return Step::Unchanged;
}

std::optional<LinExpr> intArg(const Term & t) {
    if (t.sort() != Sort::Int) { return std::nullopt; }
    return t.toLinear();
}

} // namespace

bool intSatisfiable(const Constraint & c) {
    return fmSat(rowsOf(c));
}

bool intImplies(const Constraint & c, const ConstraintAtom & a) {
    if (a.isTrue()) { return true; }
    auto rows = rowsOf(c);
    if (a.isFalse()) { return !fmSat(rows); }
    if (!a.isInt()) { return false; }
    auto refutes = [&](const LinExpr & extra) {
        auto r = rows;
        r.push_back(extra);
        return !fmSat(r);
    };
    const LinExpr & e = a.expr();
    switch (a.op()) {
        case RelOp::Le: return refutes(-e + LinExpr(1));
        case RelOp::Eq: return refutes(-e + LinExpr(1)) && refutes(e + LinExpr(1));
        case RelOp::Ne: {
            auto r = rows;
            r.push_back(e);
            r.push_back(-e);
            return !fmSat(r);
        }
        default: return false;
    }
}

Invariants Invariants::compute(const Program & p) {
    Invariants inv;
    for (auto const & [name, info] : p.predicates) {
        std::vector<Bounds> b(info.arity());
        for (std::size_t k = 0; k < info.arity(); ++k) {
            if (info.argSorts[k] == Sort::Int) { b[k] = Bounds{0, 0}; }
        }
        inv.bounds_[name] = b;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto const & c : p.clauses) {
            if (!c.head) { continue; }
            auto & hb = inv.bounds_[c.head->pred];
            Constraint ctx;
            for (auto const & a : c.constraint) {
                if (a.isInt() || a.kind() == ConstraintAtom::Kind::BoolLit) { ctx.push_back(a); }
            }
            for (auto const & a : c.body) {
                auto extra = inv.forAtom(a);
                ctx.insert(ctx.end(), extra.begin(), extra.end());
            }
            for (std::size_t k = 0; k < hb.size(); ++k) {
                auto arg = intArg(c.head->args[k]);
                if (!arg) { continue; }
                if (hb[k].lower && !intImplies(ctx, ConstraintAtom::intRel(RelOp::Le, -*arg))) {
                    hb[k].lower.reset();
                    changed = true;
                }
                if (hb[k].upper && !intImplies(ctx, ConstraintAtom::intRel(RelOp::Le, *arg))) {
                    hb[k].upper.reset();
                    changed = true;
                }
            }
        }
    }
    // Predicates without clauses have an empty least model; bounds on them
    // are vacuous and would only confuse callers.
    for (auto & [name, b] : inv.bounds_) {
        if (p.definingClauses(name).empty()) {
            for (auto & x : b) { x = Bounds{}; }
        }
    }
    return inv;
}

Constraint Invariants::forAtom(const Atom & a) const {
    Constraint out;
    auto it = bounds_.find(a.pred);
    if (it == bounds_.end()) { return out; }
    for (std::size_t k = 0; k < it->second.size() && k < a.args.size(); ++k) {
        auto arg = intArg(a.args[k]);
        if (!arg) { continue; }
        if (it->second[k].lower) { out.push_back(ConstraintAtom::intRel(RelOp::Le, LinExpr(*it->second[k].lower) - *arg)); }
        if (it->second[k].upper) { out.push_back(ConstraintAtom::intRel(RelOp::Le, *arg - LinExpr(*it->second[k].upper))); }
    }
    return out;
}

std::vector<Clause> simplifyClause(const Clause & c0, const Program & p, const Invariants & inv,
                                   const SimplifyOptions & opts) {
    std::vector<Clause> work{c0};
    std::vector<Clause> done;
    while (!work.empty()) {
        Clause c = work.back();
        work.pop_back();
        bool deleted = false;
        while (true) {
            dedupConstraint(c.constraint);
            if (hasFalse(c.constraint)) {
                deleted = true;
                break;
            }
            Step st = solveListRelations(c, work, opts.solveListEqualities);
            if (st == Step::Deleted) {
                deleted = true;
                break;
            }
            if (st == Step::Changed) { continue; }
            if (eliminateEqualities(c) == Step::Changed) { continue; }
            if (mergeImpliedEqualities(c) == Step::Changed) { continue; }
            if (dropFreeIntConstraints(c) == Step::Changed) { continue; }
            if (opts.mergeFunctional) {
                st = mergeFunctionalAtoms(c, p);
                if (st == Step::Deleted) {
                    deleted = true;
                    break;
                }
                if (st == Step::Changed) { continue; }
            }
            if (opts.dropUnusedOutputs && dropUnusedOutputs(c, p) == Step::Changed) { continue; }
            break;
        }
        if (deleted || !feasible(c, inv)) { continue; }
        done.push_back(std::move(c));
    }
    return done;
}

Clause tidyNames(const Clause & c) {
    auto vars = c.freeVars();
    auto baseOf = [](const std::string & v) {
        if (v.empty() || v[0] == '_') { return std::string("V"); }
        auto cut = v.find('_');
        return cut == std::string::npos ? v : v.substr(0, cut);
    };
    std::set<std::string> taken;
    for (auto const & [v, s] : vars) {
        if (baseOf(v) == v) { taken.insert(v); }
    }
    Substitution ren;
    for (auto const & [v, s] : vars) {
        std::string base = baseOf(v);
        if (base == v) { continue; }
        std::string name = base;
        for (int k = 1; taken.count(name); ++k) { name = base + std::to_string(k); }
        taken.insert(name);
        ren.bind(v, s, Term::var(name, s));
    }
    return substituteClause(ren, c);
}

Clause dropSingletons(const Clause & c0, const Program & p) {
    Clause c = c0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < c.constraint.size() && !changed; ++i) {
            const ConstraintAtom & a = c.constraint[i];
            bool drop = false;
            if (a.isList()) {
                for (const Term * side : {&a.lhs(), &a.rhs()}) {
                    const Term & other = side == &a.lhs() ? a.rhs() : a.lhs();
                    if (side->isVar() && !other.containsVar(side->name()) && c.occurrences(side->name()) == 1) {
                        drop = true;
                    }
                }
            } else if (a.isInt()) {
                for (auto const & [v, k] : a.expr().coeffs()) {
                    bool unit = k == 1 || k == -1;
                    if (c.occurrences(v) == 1 && (a.op() != RelOp::Eq || unit)) { drop = true; }
                }
            }
            if (drop) {
                c.constraint.erase(c.constraint.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
            }
        }
        for (std::size_t i = 0; i < c.body.size() && !changed; ++i) {
            if (removableTotalAtom(c, i, p)) {
                c.body.erase(c.body.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
            }
        }
    }
    return c;
}

} // namespace chcelim
