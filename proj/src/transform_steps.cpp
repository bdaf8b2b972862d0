/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/negation.hpp"
#include "chcelim/transform.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace chcelim {

namespace {

std::set<std::string> namesOf(const VarList & vs) {
    std::set<std::string> out;
    for (auto const & [v, s] : vs) { out.insert(v); }
    return out;
}

VarList varsOfAtoms(const std::vector<Atom> & atoms) {
    VarList vs;
    for (auto const & a : atoms) { a.collectVars(vs); }
    return dedupVars(vs);
}

Clause substitute(const Substitution & s, const Clause & c) {
    Clause r = c;
    if (r.head) { r.head = s.apply(*r.head); }
    r.constraint = s.apply(c.constraint);
    r.body = s.apply(c.body);
    return r;
}

template <typename T>
std::vector<T> pickAt(const std::vector<T> & xs, const std::vector<std::size_t> & idx) {
    std::vector<T> out;
    for (auto i : idx) { out.push_back(xs.at(i)); }
    return out;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t> & idx) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) { out.push_back(i); }
    }
    return out;
}

std::optional<Substitution> matchConstraint(const ConstraintAtom & pat, const ConstraintAtom & tgt,
                                            const Substitution & s) {
    if (pat.kind() != tgt.kind()) { return std::nullopt; }
    if (pat.isList()) {
        if (auto m = matchTerm(pat.lhs(), tgt.lhs(), s)) {
            if (auto m2 = matchTerm(pat.rhs(), tgt.rhs(), *m)) { return m2; }
        }
        if (auto m = matchTerm(pat.lhs(), tgt.rhs(), s)) {
            if (auto m2 = matchTerm(pat.rhs(), tgt.lhs(), *m)) { return m2; }
        }
        return std::nullopt;
    }
    VarList vs;
    pat.collectVars(vs);
    for (auto const & [v, so] : vs) {
        if (!s.contains(v)) { return std::nullopt; }
    }
    if (s.apply(pat) == tgt) { return s; }
    return std::nullopt;
}

bool allBound(const VarList & vs, const Substitution & s) {
    return std::all_of(vs.begin(), vs.end(), [&](auto const & v) { return s.contains(v.first); });
}

// Variable renaming that tidyNames would apply to `c`.
Substitution tidyRenaming(const Clause & c) {
    Clause t = tidyNames(c);
    auto before = c.freeVars();
    auto after = t.freeVars();
    Substitution ren;
    for (std::size_t i = 0; i < before.size() && i < after.size(); ++i) {
        if (before[i].first != after[i].first) {
            ren.bind(before[i].first, before[i].second, Term::var(after[i].first, after[i].second));
        }
    }
    return ren;
}

// Variables of M that do not occur in the target, in first-occurrence order.
VarList existentialsOf(const Clause & target, const std::vector<Atom> & mAtoms, const Constraint & mCons) {
    auto targetVars = varNames(target);
    VarList all;
    for (auto const & a : mAtoms) { a.collectVars(all); }
    for (auto const & c : mCons) { c.collectVars(all); }
    VarList out;
    for (auto const & v : dedupVars(all)) {
        if (!targetVars.count(v.first)) { out.push_back(v); }
    }
    return out;
}

// Target with the mismatching atoms and list constraints replaced by `atoms`
// and `cons` (Step 5).
Clause replaceMismatch(const Clause & target, const MatchResult & m, const std::vector<Atom> & atoms,
                       const Constraint & cons) {
    Clause r;
    r.id = target.id + "r";
    r.head = target.head;
    for (auto i : complement(target.constraint.size(), m.mismatchTgtCons)) { r.constraint.push_back(target.constraint[i]); }
    r.constraint.insert(r.constraint.end(), cons.begin(), cons.end());
    for (auto i : complement(target.body.size(), m.mismatchTgt)) { r.body.push_back(target.body[i]); }
    r.body.insert(r.body.end(), atoms.begin(), atoms.end());
    return r;
}

} // namespace

std::string Lemma::str() const {
    auto part = [](const Constraint & c, const std::vector<Atom> & atoms) {
        std::vector<std::string> items;
        for (auto const & a : atoms) { items.push_back(a.str()); }
        for (auto const & x : c) { items.push_back(x.str()); }
        if (items.empty()) { return std::string("true"); }
        std::string s;
        for (std::size_t i = 0; i < items.size(); ++i) { s += (i ? ", " : "") + items[i]; }
        return s;
    };
    std::string out = "forall (" + part(premiseConstraint, premiseAtoms) + " -> ";
    if (!existentials.empty()) {
        out += "exists ";
        for (std::size_t i = 0; i < existentials.size(); ++i) { out += (i ? "," : "") + existentials[i].first; }
        out += ". ";
    }
    return out + part(conclusionConstraint, conclusionAtoms) + ")";
}

std::optional<Clause> fold(const Clause & target, const Clause & def0) {
    if (!def0.head) { return std::nullopt; }
    auto [def, ren] = renameApart(def0, varNames(target));
    auto headNames = namesOf([&] {
        VarList vs;
        def.head->collectVars(vs);
        return vs;
    }());
    VarList defVars = def.freeVars();
    VarList existentials;
    for (auto const & v : defVars) {
        if (!headNames.count(v.first)) { existentials.push_back(v); }
    }

    std::vector<std::size_t> atomMap(def.body.size());
    std::vector<bool> usedAtom(target.body.size(), false);
    std::vector<bool> usedCons(target.constraint.size(), false);

    auto finish = [&](const Substitution & s) -> std::optional<Clause> {
        if (!allBound(defVars, s)) { return std::nullopt; }
        Clause rest;
        rest.head = target.head;
        for (std::size_t j = 0; j < target.constraint.size(); ++j) {
            if (!usedCons[j]) { rest.constraint.push_back(target.constraint[j]); }
        }
        for (std::size_t j = 0; j < target.body.size(); ++j) {
            if (!usedAtom[j]) { rest.body.push_back(target.body[j]); }
        }
        Atom newHead = s.apply(*def.head);
        std::set<std::string> images;
        for (auto const & [v, so] : existentials) {
            const Term * t = s.lookup(v);
            if (t == nullptr || !t->isVar() || !images.insert(t->name()).second) { return std::nullopt; }
            if (rest.occurrences(t->name()) != 0 || newHead.containsVar(t->name())) { return std::nullopt; }
        }
        Clause out;
        out.id = target.id + "f";
        out.head = target.head;
        out.constraint = rest.constraint;
        std::size_t first = def.body.empty() ? target.body.size()
                                             : *std::min_element(atomMap.begin(), atomMap.end());
        for (std::size_t j = 0; j < target.body.size(); ++j) {
            if (j == first) { out.body.push_back(newHead); }
            if (!usedAtom[j]) { out.body.push_back(target.body[j]); }
        }
        if (first == target.body.size()) { out.body.push_back(newHead); }
        return out;
    };

    std::function<std::optional<Clause>(std::size_t, const Substitution &)> consStep;
    consStep = [&](std::size_t k, const Substitution & s) -> std::optional<Clause> {
        if (k == def.constraint.size()) { return finish(s); }
        for (std::size_t j = 0; j < target.constraint.size(); ++j) {
            if (usedCons[j]) { continue; }
            if (auto s2 = matchConstraint(def.constraint[k], target.constraint[j], s)) {
                usedCons[j] = true;
                auto r = consStep(k + 1, *s2);
                usedCons[j] = false;
                if (r) { return r; }
            }
        }
        return std::nullopt;
    };
    std::function<std::optional<Clause>(std::size_t, const Substitution &)> atomStep;
    atomStep = [&](std::size_t k, const Substitution & s) -> std::optional<Clause> {
        if (k == def.body.size()) { return consStep(0, s); }
        for (std::size_t j = 0; j < target.body.size(); ++j) {
            if (usedAtom[j]) { continue; }
            if (auto s2 = matchAtom(def.body[k], target.body[j], s)) {
                usedAtom[j] = true;
                atomMap[k] = j;
                auto r = atomStep(k + 1, *s2);
                usedAtom[j] = false;
                if (r) { return r; }
            }
        }
        return std::nullopt;
    };
    return atomStep(0, Substitution{});
}

std::optional<MatchResult> findEmbedding(const Clause & def0, const Clause & target) {
    auto [def, ren] = renameApart(def0, varNames(target));
    const std::size_t n = def.body.size();
    if (n > target.body.size()) { return std::nullopt; }
    for (auto const & a : def.body) {
        bool found = std::any_of(target.body.begin(), target.body.end(),
                                 [&](const Atom & t) { return matchAtom(a, t, Substitution{}).has_value(); });
        if (!found) { return std::nullopt; }
    }
    std::map<std::string, int> predCount;
    for (auto const & a : def.body) { ++predCount[a.pred]; }

    struct Best {
        bool set = false;
        std::size_t matched = 0;
        std::size_t unique = 0;
        std::vector<std::size_t> tgt;
        std::vector<std::ptrdiff_t> choice;
        Substitution sigma;
    } best;
    std::vector<std::ptrdiff_t> choice(n, -1);
    std::vector<bool> used(target.body.size(), false);

    auto consider = [&](const Substitution & s) {
        std::size_t matched = 0;
        std::size_t unique = 0;
        std::vector<std::size_t> tgt;
        for (std::size_t k = 0; k < n; ++k) {
            if (choice[k] < 0) { continue; }
            ++matched;
            if (predCount[def.body[k].pred] == 1) { ++unique; }
            tgt.push_back(static_cast<std::size_t>(choice[k]));
        }
        std::sort(tgt.begin(), tgt.end());
        bool better = !best.set || matched > best.matched ||
                      (matched == best.matched && (unique > best.unique || (unique == best.unique && tgt < best.tgt)));
        if (better) { best = Best{true, matched, unique, tgt, choice, s}; }
    };
    std::function<void(std::size_t, const Substitution &)> search = [&](std::size_t k, const Substitution & s) {
        if (k == n) {
            consider(s);
            return;
        }
        for (std::size_t j = 0; j < target.body.size(); ++j) {
            if (used[j]) { continue; }
            if (auto s2 = matchAtom(def.body[k], target.body[j], s)) {
                used[j] = true;
                choice[k] = static_cast<std::ptrdiff_t>(j);
                search(k + 1, *s2);
                used[j] = false;
                choice[k] = -1;
            }
        }
        search(k + 1, s);
    };
    search(0, Substitution{});

    MatchResult m;
    m.def = def;
    m.sigma = best.sigma;
    for (std::size_t k = 0; k < n; ++k) {
        if (best.choice[k] >= 0) {
            m.matchingDef.push_back(k);
            m.matchingTgt.push_back(static_cast<std::size_t>(best.choice[k]));
        } else {
            m.mismatchDef.push_back(k);
        }
    }
    m.mismatchTgt = complement(target.body.size(), m.matchingTgt);
    std::vector<bool> consUsed(target.constraint.size(), false);
    for (std::size_t k = 0; k < def.constraint.size(); ++k) {
        const ConstraintAtom & dc = def.constraint[k];
        VarList vs;
        dc.collectVars(vs);
        bool matched = false;
        if (allBound(vs, m.sigma)) {
            ConstraintAtom inst = m.sigma.apply(dc);
            for (std::size_t j = 0; j < target.constraint.size(); ++j) {
                if (!consUsed[j] && target.constraint[j] == inst) {
                    consUsed[j] = true;
                    matched = true;
                    break;
                }
            }
        }
        (matched ? m.matchingDefCons : m.mismatchDefCons).push_back(k);
    }
    for (std::size_t j = 0; j < target.constraint.size(); ++j) {
        if (!consUsed[j] && target.constraint[j].isList()) { m.mismatchTgtCons.push_back(j); }
    }
    return m;
}

std::optional<DiffIntro> introduceDiff(const MatchResult & m, const Clause & target, const Program & p,
                                       const std::string & name) {
    if (!m.mismatchDefCons.empty() || !m.mismatchTgtCons.empty()) { return std::nullopt; }
    if (m.mismatchDef.empty() && m.mismatchTgt.empty()) { return std::nullopt; }
    std::vector<Atom> tgtAtoms = pickAt(target.body, m.mismatchTgt);
    std::vector<Atom> defAtoms = m.sigma.apply(pickAt(m.def.body, m.mismatchDef));

    auto outputs = [&](const std::vector<Atom> & atoms) {
        VarList out;
        for (auto const & a : atoms) {
            const PredicateInfo * info = p.info(a.pred);
            for (std::size_t k = 0; k < a.args.size(); ++k) {
                bool isOut = info != nullptr && k < info->modes.size() && info->modes[k] == Mode::Out;
                if (isOut && a.args[k].isVar() && isBasic(a.args[k].sort())) {
                    out.emplace_back(a.args[k].name(), a.args[k].sort());
                }
            }
        }
        return dedupVars(out);
    };
    VarList defOuts = outputs(defAtoms);
    VarList tgtOuts = outputs(tgtAtoms);
    if (defOuts.empty() && tgtOuts.empty()) { return std::nullopt; }

    std::vector<Atom> body = tgtAtoms;
    body.insert(body.end(), defAtoms.begin(), defAtoms.end());
    auto outNames = namesOf(defOuts);
    for (auto const & v : tgtOuts) { outNames.insert(v.first); }
    VarList inputs;
    for (auto const & v : varsOfAtoms(body)) {
        if (isBasic(v.second) && !outNames.count(v.first)) { inputs.push_back(v); }
    }
    VarList headVars = inputs;
    headVars.insert(headVars.end(), defOuts.begin(), defOuts.end());
    headVars.insert(headVars.end(), tgtOuts.begin(), tgtOuts.end());
    headVars = dedupVars(headVars);
    auto tgtOutNames = namesOf(tgtOuts);
    auto defOutNames = namesOf(defOuts);

    DiffIntro d;
    d.diffInfo.name = name;
    d.diffInfo.role = PredRole::Difference;
    Atom head{name, {}};
    for (auto const & [v, s] : headVars) {
        head.args.push_back(Term::var(v, s));
        d.diffInfo.argSorts.push_back(s);
        bool out = tgtOutNames.count(v) && !defOutNames.count(v);
        d.diffInfo.modes.push_back(out ? Mode::Out : Mode::In);
    }
    d.diffDef.id = name;
    d.diffDef.head = head;
    d.diffDef.body = body;

    std::vector<Atom> added = defAtoms;
    added.push_back(head);
    d.replaced = replaceMismatch(target, m, added, {});
    auto folded = fold(d.replaced, m.def);
    if (!folded) { return std::nullopt; }
    d.folded = *folded;

    d.implication.premiseAtoms = tgtAtoms;
    d.implication.conclusionAtoms = added;
    auto premiseNames = namesOf(varsOfAtoms(tgtAtoms));
    for (auto const & v : varsOfAtoms(added)) {
        if (!premiseNames.count(v.first)) { d.implication.existentials.push_back(v); }
    }
    return d;
}

LemmaQueries lemmaQueries(const Lemma & l, const Program & p) {
    const std::vector<Atom> & mAtoms = l.conclusionAtoms;
    const Constraint & mCons = l.conclusionConstraint;
    LemmaQueries out;

    std::set<std::string> unknown = namesOf(l.existentials);
    std::vector<std::size_t> remaining(mAtoms.size());
    for (std::size_t i = 0; i < mAtoms.size(); ++i) { remaining[i] = i; }
    std::optional<std::size_t> cond;
    std::vector<std::size_t> hidden;
    while (!remaining.empty()) {
        bool progress = false;
        for (std::size_t r = 0; r < remaining.size() && !progress; ++r) {
            const Atom & a = mAtoms[remaining[r]];
            const PredicateInfo * info = p.info(a.pred);
            if (info == nullptr || !info->totalFunctional) { continue; }
            bool ok = true;
            std::set<std::string> outs;
            for (std::size_t k = 0; k < a.args.size() && ok; ++k) {
                const Term & t = a.args[k];
                if (info->modes[k] == Mode::Out) {
                    ok = t.isVar() && unknown.count(t.name()) && outs.insert(t.name()).second;
                } else {
                    VarList vs;
                    t.collectVars(vs);
                    for (auto const & v : vs) { ok = ok && !unknown.count(v.first); }
                }
            }
            if (!ok) { continue; }
            for (auto const & v : outs) { unknown.erase(v); }
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(r));
            progress = true;
        }
        if (progress) { continue; }
        if (cond) { throw UnsupportedShape("conclusion of lemma has more than one atom constraining its inputs"); }
        std::size_t idx = remaining.front();
        const Atom & a = mAtoms[idx];
        std::set<std::string> seen;
        for (std::size_t k = 0; k < a.args.size(); ++k) {
            const Term & t = a.args[k];
            if (t.isVar() && unknown.count(t.name())) {
                if (!seen.insert(t.name()).second) {
                    throw UnsupportedShape("existential variable repeated in " + a.str());
                }
                hidden.push_back(k);
                continue;
            }
            VarList vs;
            t.collectVars(vs);
            for (auto const & v : vs) {
                if (unknown.count(v.first)) {
                    throw UnsupportedShape("existential variable under a constructor in " + a.str());
                }
            }
        }
        for (auto const & v : seen) { unknown.erase(v); }
        cond = idx;
        remaining.erase(remaining.begin());
    }
    if (!unknown.empty()) { throw UnsupportedShape("existential variable not determined by the conclusion"); }

    Program scratch = p;
    std::vector<Clause> raw;
    Clause base;
    base.constraint = l.premiseConstraint;
    base.body = l.premiseAtoms;
    if (cond) {
        const Atom & a = mAtoms[*cond];
        NegSpec spec;
        spec.basePred = a.pred;
        spec.hidden = hidden;
        spec.visible = complement(a.args.size(), hidden);
        spec.newName = notExistsName(a.pred, hidden);
        if (!scratch.isDeclared(spec.newName)) {
            PredicateInfo info = notExistsInfo(spec, p);
            out.negClauses = eliminateNegation(spec, p);
            out.negInfos.push_back(info);
            scratch.declare(info);
        }
        Clause q = base;
        q.body.push_back(Atom{spec.newName, pickAt(a.args, spec.visible)});
        raw.push_back(std::move(q));
    }
    for (std::size_t i = 0; i < mCons.size(); ++i) {
        Clause q = base;
        q.body.insert(q.body.end(), mAtoms.begin(), mAtoms.end());
        q.constraint.insert(q.constraint.end(), mCons.begin(), mCons.begin() + static_cast<std::ptrdiff_t>(i));
        q.constraint.push_back(mCons[i].negated());
        raw.push_back(std::move(q));
    }
    for (auto const & q : raw) {
        Clause d = dropSingletons(q, scratch);
        if (!simplifyClause(d, scratch, Invariants{}).empty()) { out.queries.push_back(tidyNames(d)); }
    }
    return out;
}

AuxIntro introduceAuxQueries(const MatchResult & m, const Clause & target, const Program & p) {
    std::vector<Atom> mAtoms = m.sigma.apply(pickAt(m.def.body, m.mismatchDef));
    Constraint mCons = m.sigma.apply(pickAt(m.def.constraint, m.mismatchDefCons));
    std::vector<Atom> nAtoms = pickAt(target.body, m.mismatchTgt);
    Constraint nCons = pickAt(target.constraint, m.mismatchTgtCons);

    // Short names for the definition's existential variables; target
    // variables keep their names.
    Substitution ren;
    {
        Clause bundle;
        bundle.head = target.head;
        bundle.constraint = target.constraint;
        bundle.constraint.insert(bundle.constraint.end(), mCons.begin(), mCons.end());
        bundle.body = target.body;
        bundle.body.insert(bundle.body.end(), mAtoms.begin(), mAtoms.end());
        auto targetVars = varNames(target);
        Substitution full = tidyRenaming(bundle);
        for (auto const & [v, t] : full.bindings()) {
            if (!targetVars.count(v)) { ren.bind(v, t.sort(), t); }
        }
        mAtoms = ren.apply(mAtoms);
        mCons = ren.apply(mCons);
    }
    VarList ys = existentialsOf(target, mAtoms, mCons);

    AuxIntro out;
    out.lemma.premiseConstraint = nCons;
    out.lemma.premiseAtoms = nAtoms;
    out.lemma.existentials = ys;
    out.lemma.conclusionConstraint = mCons;
    out.lemma.conclusionAtoms = mAtoms;
    LemmaQueries lq = lemmaQueries(out.lemma, p);
    out.queries = std::move(lq.queries);
    out.negInfos = std::move(lq.negInfos);
    out.negClauses = std::move(lq.negClauses);

    // Without existential variables the conclusion is fixed by the premise
    // and the replacement amounts to a plain rewrite; such lemmas are only
    // used when simplification already discharges them.
    if (ys.empty() && !out.queries.empty()) {
        throw UnsupportedShape("lemma without existential variables is not discharged by simplification");
    }

    out.replaced = replaceMismatch(target, m, mAtoms, mCons);
    auto folded = fold(out.replaced, m.def);
    out.folded = folded ? *folded : out.replaced;
    return out;
}

namespace {

// Term p(B, [A|C], D) -> exists B1. p(B1, C, D) for position k.
Lemma suffixLemma(const Atom & t, std::size_t k, const PredicateInfo & info) {
    static const std::string letters = "BDEFGHIJKLMNOPQRSTUVW";
    Lemma l;
    Atom prem{t.pred, {}};
    Atom concl{t.pred, {}};
    std::size_t next = 0;
    for (std::size_t j = 0; j < t.args.size(); ++j) {
        Sort s = info.argSorts[j];
        if (j == k) {
            Term c = Term::var("C", Sort::IntList);
            prem.args.push_back(Term::cons(Term::var("A", Sort::Int), c));
            concl.args.push_back(c);
            continue;
        }
        std::string v(1, letters[next++ % letters.size()]);
        prem.args.push_back(Term::var(v, s));
        if (info.modes[j] == Mode::In) {
            concl.args.push_back(Term::var(v + "1", s));
            l.existentials.emplace_back(v + "1", s);
        } else {
            concl.args.push_back(Term::var(v, s));
        }
    }
    l.premiseAtoms.push_back(prem);
    l.conclusionAtoms.push_back(concl);
    return l;
}

bool basicAtom(const Atom & a) {
    return std::all_of(a.args.begin(), a.args.end(), [](const Term & t) { return isBasic(t.sort()); });
}

} // namespace

std::optional<Generalization> generalizeFold(const Clause & target, const Clause & def, const Program & p) {
    if (def.body.size() != 1 || !def.constraint.empty() || !def.head) { return std::nullopt; }
    const std::string & pred = def.body[0].pred;
    const PredicateInfo * info = p.info(pred);
    if (info == nullptr) { return std::nullopt; }
    auto taken = varNames(target);
    int fresh = 0;
    auto freshVar = [&](Sort s) {
        std::string v;
        do { v = "G" + std::to_string(++fresh); } while (taken.count(v));
        taken.insert(v);
        return Term::var(v, s);
    };
    for (std::size_t i = 0; i < target.body.size(); ++i) {
        const Atom & t = target.body[i];
        if (t.pred != pred) { continue; }
        std::vector<std::optional<std::size_t>> cuts{std::nullopt};
        for (std::size_t k = 0; k < t.args.size(); ++k) {
            if (info->modes[k] == Mode::In && t.args[k].isCons()) { cuts.emplace_back(k); }
        }
        for (auto const & cut : cuts) {
            Atom kept = t;
            if (cut) {
                for (std::size_t j = 0; j < t.args.size(); ++j) {
                    if (j == *cut) {
                        kept.args[j] = t.args[j].tail();
                    } else if (info->modes[j] == Mode::In) {
                        kept.args[j] = freshVar(info->argSorts[j]);
                    }
                }
            }
            Clause r;
            r.id = target.id + "g";
            r.head = target.head;
            for (auto const & c : target.constraint) {
                if (!c.isList()) { r.constraint.push_back(c); }
            }
            for (std::size_t j = 0; j < target.body.size(); ++j) {
                if (j != i && basicAtom(target.body[j])) { r.body.push_back(target.body[j]); }
            }
            r.body.push_back(kept);
            auto folded = fold(r, def);
            if (!folded || !folded->hasBasicTypes()) { continue; }
            Generalization g;
            if (cut) { g.lemma = suffixLemma(t, *cut, *info); }
            g.replaced = std::move(r);
            g.folded = std::move(*folded);
            return g;
        }
    }
    return std::nullopt;
}

namespace {

std::vector<Clause> resolvents(const Clause & c, std::size_t index, const Program & p) {
    const Atom & a = c.body.at(index);
    std::map<std::string, std::size_t> rank;
    for (auto const & [v, s] : c.freeVars()) { rank.emplace(v, rank.size()); }
    KeepPolicy keep = [&rank](const std::string & x, const std::string & y) {
        auto ix = rank.find(x);
        auto iy = rank.find(y);
        std::size_t rx = ix == rank.end() ? rank.size() : ix->second;
        std::size_t ry = iy == rank.end() ? rank.size() : iy->second;
        if (rx != ry) { return rx < ry; }
        return x < y;
    };
    auto forbidden = varNames(c);
    std::vector<Clause> out;
    for (const Clause * d : p.definingClauses(a.pred)) {
        auto [dr, unused] = renameApart(*d, forbidden);
        Substitution s;
        Constraint residual;
        bool ok = true;
        for (std::size_t k = 0; k < a.args.size() && ok; ++k) { ok = unify(a.args[k], dr.head->args[k], s, residual, keep); }
        if (!ok) { continue; }
        Clause r;
        r.id = c.id;
        r.head = c.head;
        r.constraint = c.constraint;
        r.constraint.insert(r.constraint.end(), residual.begin(), residual.end());
        r.constraint.insert(r.constraint.end(), dr.constraint.begin(), dr.constraint.end());
        r.body.assign(c.body.begin(), c.body.begin() + static_cast<std::ptrdiff_t>(index));
        r.body.insert(r.body.end(), dr.body.begin(), dr.body.end());
        r.body.insert(r.body.end(), c.body.begin() + static_cast<std::ptrdiff_t>(index) + 1, c.body.end());
        out.push_back(substitute(s, r));
    }
    return out;
}

bool unfoldable(const Atom & a, const Program & p) {
    const PredicateInfo * info = p.info(a.pred);
    return info != nullptr && (info->role == PredRole::Input || info->role == PredRole::NotExists);
}

// Homeomorphic embedding on list structure; integer terms are not compared.
bool embeds(const Term & a, const Term & b) {
    if (a.sort() != Sort::IntList || b.sort() != Sort::IntList) {
        if (a.sort() != Sort::IntList && b.sort() != Sort::IntList) { return true; }
    } else if (a.isVar() && b.isVar()) {
        return true;
    } else if (a.isNil() && b.isNil()) {
        return true;
    } else if (a.isCons() && b.isCons() && embeds(a.head(), b.head()) && embeds(a.tail(), b.tail())) {
        return true;
    }
    return b.isCons() && (embeds(a, b.head()) || embeds(a, b.tail()));
}

bool embeds(const Atom & a, const Atom & b) {
    if (a.pred != b.pred || a.args.size() != b.args.size()) { return false; }
    for (std::size_t k = 0; k < a.args.size(); ++k) {
        if (!embeds(a.args[k], b.args[k])) { return false; }
    }
    return true;
}

// An instantiated atom (some argument is not a variable) whose defining
// clauses leave at most one resolvent with a satisfiable integer
// constraint, or whose constructor arguments meet constructors in the
// clause heads.
bool worthUnfolding(const Clause & c, std::size_t index, const Program & p, const Invariants & inv) {
    const Atom & a = c.body[index];
    if (!unfoldable(a, p)) { return false; }
    if (std::all_of(a.args.begin(), a.args.end(), [](const Term & t) { return t.isVar(); })) { return false; }
    auto defs = p.definingClauses(a.pred);
    bool patterned = false;
    for (std::size_t k = 0; k < a.args.size(); ++k) {
        if (!a.args[k].isConstructor()) { continue; }
        patterned = patterned || std::any_of(defs.begin(), defs.end(), [&](const Clause * d) {
            return d->head->args[k].isConstructor();
        });
    }
    int alive = 0;
    for (auto const & r : resolvents(c, index, p)) {
        Constraint ints;
        for (auto const & x : r.constraint) {
            if (!x.isList()) { ints.push_back(x); }
        }
        for (auto const & b : r.body) {
            for (auto const & x : inv.forAtom(b)) { ints.push_back(x); }
        }
        if (!intSatisfiable(ints)) { continue; }
        if (++alive > 1 && !patterned) { return false; }
        // Unfolding that reproduces a larger copy of the atom never ends.
        const std::size_t children = r.body.size() + 1 - c.body.size();
        for (std::size_t k = index; k < index + children; ++k) {
            if (embeds(a, r.body[k])) { return false; }
        }
    }
    return true;
}

} // namespace

std::vector<Clause> unfoldAtom(const Clause & c, std::size_t index, const Program & p, const Invariants & inv) {
    std::vector<Clause> out;
    for (auto const & r : resolvents(c, index, p)) {
        for (auto & s : simplifyClause(r, p, inv)) { out.push_back(tidyNames(s)); }
    }
    return out;
}

std::optional<std::size_t> selectUnfoldAtom(const Clause & c, const Program & p) {
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        const Atom & a = c.body[i];
        const PredicateInfo * info = p.info(a.pred);
        if (info == nullptr || !unfoldable(a, p)) { continue; }
        auto defs = p.definingClauses(a.pred);
        if (defs.empty()) { continue; }
        for (std::size_t k = 0; k < a.args.size(); ++k) {
            if (info->modes[k] != Mode::In || !a.args[k].isVar() || a.args[k].sort() != Sort::IntList) { continue; }
            bool discriminating = std::all_of(defs.begin(), defs.end(),
                                              [&](const Clause * d) { return d->head->args[k].isConstructor(); });
            if (discriminating) { return i; }
        }
    }
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        const Atom & a = c.body[i];
        if (!unfoldable(a, p)) { continue; }
        bool nonBasic = std::any_of(a.args.begin(), a.args.end(), [](const Term & t) { return !isBasic(t.sort()); });
        if (nonBasic) { return i; }
    }
    return std::nullopt;
}

std::vector<Clause> unfoldDefinition(const Clause & def, const Program & p, const Invariants & inv, int maxDepth) {
    auto first = selectUnfoldAtom(def, p);
    if (!first) { return {def}; }
    std::vector<std::pair<Clause, int>> work;
    auto initial = unfoldAtom(def, *first, p, inv);
    for (auto it = initial.rbegin(); it != initial.rend(); ++it) { work.emplace_back(*it, 1); }
    std::vector<Clause> out;
    while (!work.empty()) {
        auto [c, depth] = work.back();
        work.pop_back();
        std::optional<std::size_t> next;
        for (std::size_t i = 0; i < c.body.size() && !next; ++i) {
            if (worthUnfolding(c, i, p, inv)) { next = i; }
        }
        if (!next) {
            out.push_back(std::move(c));
            continue;
        }
        if (depth >= maxDepth) {
            throw UnfoldDepthExceeded("unfolding " + def.id + " exceeded depth " + std::to_string(maxDepth));
        }
        auto rs = unfoldAtom(c, *next, p, inv);
        for (auto it = rs.rbegin(); it != rs.rend(); ++it) { work.emplace_back(*it, depth + 1); }
    }
    return out;
}

std::vector<Clause> replaceStep(const std::vector<Clause> & cls, const Program & p, const Invariants & inv) {
    SimplifyOptions opts;
    opts.dropUnusedOutputs = true;
    std::vector<Clause> out;
    for (auto const & c : cls) {
        for (auto & s : simplifyClause(c, p, inv, opts)) { out.push_back(tidyNames(s)); }
    }
    return out;
}

} // namespace chcelim
