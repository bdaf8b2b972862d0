/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/compare.hpp"

#include "chcelim/simplify.hpp"
#include "chcelim/substitution.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace chcelim {

bool isIntroducedName(const std::string & pred) {
    auto digitsAfter = [&](std::size_t k) {
        return pred.size() > k && std::all_of(pred.begin() + static_cast<long>(k), pred.end(),
                                              [](char c) { return c >= '0' && c <= '9'; });
    };
    if (pred.rfind("new", 0) == 0 && digitsAfter(3)) return true;
    if (pred == "diff" || (pred.rfind("diff", 0) == 0 && digitsAfter(4))) return true;
    return pred.rfind("not_exists_", 0) == 0;
}

namespace {

struct Part {
    std::vector<Atom> a;
    std::vector<Atom> b;
    Constraint ca;
    Constraint cb;
};

std::vector<std::pair<std::string, Sort>> varsOf(const std::vector<Part> & parts, bool left,
                                                 const std::vector<std::pair<std::string, Sort>> & extra) {
    VarList vs = extra;
    for (const auto & p : parts) {
        for (const auto & at : left ? p.a : p.b) at.collectVars(vs);
        for (const auto & c : left ? p.ca : p.cb) c.collectVars(vs);
    }
    return dedupVars(vs);
}

std::int64_t sign(std::int64_t x) { return x < 0 ? -1 : 1; }

/// Existentially quantifies integer variables away: exact substitution via an
/// equation with a unit coefficient, otherwise rational Fourier-Motzkin.
/// Fails when a variable occurs in a list relation or a disequality that
/// cannot be substituted.
std::optional<Constraint> project(Constraint c, const std::vector<std::string> & vars) {
    for (const auto & v : vars) {
        std::optional<std::size_t> eq;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c[i].containsVar(v)) continue;
            if (!c[i].isInt()) return std::nullopt;
            if (c[i].op() != RelOp::Eq) continue;
            if (!eq || std::abs(c[i].expr().coeff(v)) < std::abs(c[*eq].expr().coeff(v))) eq = i;
        }
        Constraint next;
        if (eq) {
            const LinExpr e = c[*eq].expr();
            const std::int64_t a = e.coeff(v);
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i == *eq) continue;
                const std::int64_t b = c[i].isInt() ? c[i].expr().coeff(v) : 0;
                if (b == 0) {
                    next.push_back(c[i]);
                    continue;
                }
                next.push_back(ConstraintAtom::intRel(c[i].op(), c[i].expr() * std::abs(a) - e * (b * sign(a))));
            }
        } else {
            std::vector<LinExpr> lower, upper;
            for (const auto & x : c) {
                if (!x.containsVar(v)) {
                    next.push_back(x);
                    continue;
                }
                if (x.op() != RelOp::Le) return std::nullopt;
                (x.expr().coeff(v) < 0 ? lower : upper).push_back(x.expr());
            }
            for (const auto & l : lower)
                for (const auto & u : upper)
                    next.push_back(ConstraintAtom::intRel(RelOp::Le, l * u.coeff(v) + u * (-l.coeff(v))));
        }
        c.clear();
        for (auto & x : next)
            if (!x.isTrue()) c.push_back(std::move(x));
    }
    return c;
}

class Matcher {
public:
    Matcher(std::vector<Part> parts, PredRenaming & ren, const RenamablePred & renamable)
        : parts_(std::move(parts)), ren_(ren), renamable_(renamable) {
        for (const auto & [from, m] : ren_) usedTargets_.insert(m.target);
        for (std::size_t p = 0; p < parts_.size(); ++p)
            for (std::size_t i = 0; i < parts_[p].a.size(); ++i) slots_.emplace_back(p, i);
        used_.resize(parts_.size());
        for (std::size_t p = 0; p < parts_.size(); ++p) used_[p].assign(parts_[p].b.size(), false);
    }

    /// Variables that must correspond to each other as a group (existentials).
    void addGroup(std::set<std::string> a, std::set<std::string> b) { groups_.emplace_back(std::move(a), std::move(b)); }

    bool run() {
        for (const auto & p : parts_)
            if (p.a.size() != p.b.size()) return false;
        return matchSlot(0);
    }

private:
    bool bindVar(const std::string & va, Sort sa, const std::string & vb, Sort sb) {
        if (sa != sb) return false;
        auto it = fwd_.find(va);
        if (it != fwd_.end()) return it->second == vb;
        if (bwd_.count(vb)) return false;
        for (const auto & [ga, gb] : groups_)
            if (ga.count(va) != gb.count(vb)) return false;
        fwd_[va] = vb;
        bwd_[vb] = va;
        varLog_.push_back(va);
        return true;
    }

    void undoVars(std::size_t mark) {
        while (varLog_.size() > mark) {
            const std::string va = varLog_.back();
            varLog_.pop_back();
            bwd_.erase(fwd_[va]);
            fwd_.erase(va);
        }
    }

    bool matchTerm(const Term & ta, const Term & tb) {
        if (ta.kind() == Term::Kind::Lin || tb.kind() == Term::Kind::Lin) {
            if (ta.kind() != tb.kind()) return false;
            pendingLin_.emplace_back(ta, tb);
            return true;
        }
        if (ta.kind() != tb.kind()) return false;
        switch (ta.kind()) {
        case Term::Kind::Var: return bindVar(ta.name(), ta.sort(), tb.name(), tb.sort());
        case Term::Kind::IntConst: return ta.value() == tb.value();
        case Term::Kind::Nil: return true;
        case Term::Kind::Cons: return matchTerm(ta.head(), tb.head()) && matchTerm(ta.tail(), tb.tail());
        case Term::Kind::Lin: return false;
        }
        return false;
    }

    std::vector<std::vector<std::size_t>> permutations(const Atom & a, const Atom & b) const {
        std::vector<std::vector<std::size_t>> out;
        if (a.args.size() != b.args.size()) return out;
        std::vector<std::size_t> perm(a.args.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (std::size_t i = 0; i < perm.size() && ok; ++i) ok = a.args[i].sort() == b.args[perm[i]].sort();
            if (ok) out.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return out;
    }

    bool matchArgs(const Atom & a, const Atom & b, const std::vector<std::size_t> & perm) {
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (!matchTerm(a.args[i], b.args[perm[i]])) return false;
        return true;
    }

    /// Tries atom a against b, then continues with the next slot.
    bool matchAtomThen(const Atom & a, const Atom & b, std::size_t slot) {
        const std::size_t mark = varLog_.size();
        const std::size_t linMark = pendingLin_.size();
        auto retry = [&] {
            undoVars(mark);
            pendingLin_.resize(linMark);
        };
        if (auto it = ren_.find(a.pred); it != ren_.end()) {
            if (it->second.target != b.pred || it->second.perm.size() != b.args.size()) return false;
            if (matchArgs(a, b, it->second.perm) && matchSlot(slot + 1)) return true;
            retry();
            return false;
        }
        if (a.args.size() != b.args.size()) return false;
        const bool canRename = renamable_(a.pred) && renamable_(b.pred);
        if (!canRename) {
            if (a.pred != b.pred || usedTargets_.count(b.pred)) return false;
            std::vector<std::size_t> id(a.args.size());
            std::iota(id.begin(), id.end(), 0);
            return tryMapping(a, b, id, slot, retry);
        }
        if (usedTargets_.count(b.pred)) return false;
        for (const auto & perm : permutations(a, b))
            if (tryMapping(a, b, perm, slot, retry)) return true;
        return false;
    }

    template <class Retry>
    bool tryMapping(const Atom & a, const Atom & b, const std::vector<std::size_t> & perm, std::size_t slot,
                    Retry & retry) {
        ren_[a.pred] = {b.pred, perm};
        usedTargets_.insert(b.pred);
        if (matchArgs(a, b, perm) && matchSlot(slot + 1)) return true;
        retry();
        ren_.erase(a.pred);
        usedTargets_.erase(b.pred);
        return false;
    }

    bool matchSlot(std::size_t slot) {
        if (slot == slots_.size()) return finish();
        auto [p, i] = slots_[slot];
        const Atom & a = parts_[p].a[i];
        for (std::size_t j = 0; j < parts_[p].b.size(); ++j) {
            if (used_[p][j]) continue;
            const Atom & b = parts_[p].b[j];
            if (a.args.size() != b.args.size()) continue;
            used_[p][j] = true;
            bool ok = matchAtomThen(a, b, slot);
            used_[p][j] = false;
            if (ok) return true;
        }
        return false;
    }

    /// Pairs variables occurring only in constraints, then compares constraints.
    bool finish() {
        auto va = varsOf(parts_, true, {});
        auto vb = varsOf(parts_, false, {});
        VarList restA, restB;
        for (const auto & v : va)
            if (!fwd_.count(v.first)) restA.push_back(v);
        for (const auto & v : vb)
            if (!bwd_.count(v.first)) restB.push_back(v);
        if (restA.size() != restB.size() || restA.size() > 6) return projectedAgree(restA, restB);
        std::vector<std::size_t> perm(restA.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            const std::size_t mark = varLog_.size();
            bool ok = true;
            for (std::size_t i = 0; i < perm.size() && ok; ++i)
                ok = bindVar(restA[i].first, restA[i].second, restB[perm[i]].first, restB[perm[i]].second);
            if (ok && constraintsAgree()) return true;
            undoVars(mark);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return projectedAgree(restA, restB);
    }

    /// Variables left unpaired are read as existentially quantified.
    bool projectedAgree(const VarList & restA, const VarList & restB) const {
        for (const auto & v : restA)
            if (v.second != Sort::Int) return false;
        for (const auto & v : restB)
            if (v.second != Sort::Int) return false;
        std::vector<std::string> la, lb;
        for (const auto & v : restA) la.push_back(v.first);
        for (const auto & v : restB) lb.push_back(v.first);
        const Renaming s = renaming();
        for (const auto & [ta, tb] : pendingLin_)
            if (s.apply(ta) != tb) return false;
        for (const auto & p : parts_) {
            auto pa = project(p.ca, la);
            auto pb = project(p.cb, lb);
            if (!pa || !pb || !equivalent(s.apply(*pa), *pb)) return false;
        }
        return true;
    }

    /// a-variables to b-variables, applied through fresh intermediate names
    /// because both sides may use the same names.
    struct Renaming {
        Substitution toFresh;
        Substitution toTarget;
        template <class T> T apply(const T & x) const { return toTarget.apply(toFresh.apply(x)); }
    };

    Renaming renaming() const {
        Renaming r;
        std::size_t k = 0;
        for (const auto & [name, sort] : varsOf(parts_, true, {})) {
            auto it = fwd_.find(name);
            if (it == fwd_.end()) continue;
            const std::string fresh = "#" + std::to_string(k++);
            r.toFresh.extend(name, sort, Term::var(fresh, sort));
            r.toTarget.extend(fresh, sort, Term::var(it->second, sort));
        }
        return r;
    }

    static bool equivalent(const Constraint & a, const Constraint & b) {
        Constraint ia, ib;
        std::set<ConstraintAtom> ra, rb;
        for (const auto & c : a) {
            if (c.isTrue()) continue;
            if (c.isInt() && c.op() != RelOp::Ne) ia.push_back(c);
            else ra.insert(c);
        }
        for (const auto & c : b) {
            if (c.isTrue()) continue;
            if (c.isInt() && c.op() != RelOp::Ne) ib.push_back(c);
            else rb.insert(c);
        }
        if (ra != rb) return false;
        if (std::set<ConstraintAtom>(ia.begin(), ia.end()) == std::set<ConstraintAtom>(ib.begin(), ib.end()))
            return true;
        for (const auto & c : ib)
            if (!intImplies(ia, c)) return false;
        for (const auto & c : ia)
            if (!intImplies(ib, c)) return false;
        return true;
    }

    bool constraintsAgree() const {
        const Renaming s = renaming();
        for (const auto & [ta, tb] : pendingLin_)
            if (s.apply(ta) != tb) return false;
        for (const auto & p : parts_)
            if (!equivalent(s.apply(p.ca), p.cb)) return false;
        return true;
    }

    std::vector<Part> parts_;
    PredRenaming & ren_;
    const RenamablePred & renamable_;
    std::set<std::string> usedTargets_;
    std::vector<std::pair<std::size_t, std::size_t>> slots_;
    std::vector<std::vector<bool>> used_;
    std::map<std::string, std::string> fwd_;
    std::map<std::string, std::string> bwd_;
    std::vector<std::string> varLog_;
    std::vector<std::pair<Term, Term>> pendingLin_;
    std::vector<std::pair<std::set<std::string>, std::set<std::string>>> groups_;
};

} // namespace

bool clausesEquivalent(const Clause & a, const Clause & b, PredRenaming & ren, const RenamablePred & renamable) {
    if (a.head.has_value() != b.head.has_value()) return false;
    std::vector<Part> parts;
    if (a.head) parts.push_back({{*a.head}, {*b.head}, {}, {}});
    parts.push_back({a.body, b.body, a.constraint, b.constraint});
    PredRenaming trial = ren;
    Matcher m(std::move(parts), trial, renamable);
    if (!m.run()) return false;
    ren = std::move(trial);
    return true;
}

namespace {

bool assignClauses(const std::vector<Clause> & a, const std::vector<Clause> & b, std::size_t i,
                   std::vector<bool> & used, PredRenaming & ren, const RenamablePred & renamable) {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        PredRenaming trial = ren;
        if (!clausesEquivalent(a[i], b[j], trial, renamable)) continue;
        used[j] = true;
        if (assignClauses(a, b, i + 1, used, trial, renamable)) {
            ren = std::move(trial);
            return true;
        }
        used[j] = false;
    }
    return false;
}

} // namespace

std::optional<PredRenaming> clauseSetsEquivalent(const std::vector<Clause> & a, const std::vector<Clause> & b,
                                                 const RenamablePred & renamable, PredRenaming seed) {
    if (a.size() != b.size()) return std::nullopt;
    std::vector<bool> used(b.size(), false);
    if (!assignClauses(a, b, 0, used, seed, renamable)) return std::nullopt;
    return seed;
}

bool lemmasEquivalent(const Lemma & a, const Lemma & b, PredRenaming & ren, const RenamablePred & renamable) {
    if (a.existentials.size() != b.existentials.size()) return false;
    std::vector<Part> parts;
    parts.push_back({a.premiseAtoms, b.premiseAtoms, a.premiseConstraint, b.premiseConstraint});
    parts.push_back({a.conclusionAtoms, b.conclusionAtoms, a.conclusionConstraint, b.conclusionConstraint});
    PredRenaming trial = ren;
    Matcher m(std::move(parts), trial, renamable);
    std::set<std::string> ea, eb;
    for (const auto & v : a.existentials) ea.insert(v.first);
    for (const auto & v : b.existentials) eb.insert(v.first);
    m.addGroup(ea, eb);
    if (!m.run()) return false;
    ren = std::move(trial);
    return true;
}

} // namespace chcelim
