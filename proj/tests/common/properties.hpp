/*
 * SPDX-License-Identifier: MIT
 */

// Seeded randomised properties shared by the unit tests and the acceptance
// report. Each property returns the number of cases run and the first failure.

#ifndef CHCELIM_TESTS_PROPERTIES_HPP
#define CHCELIM_TESTS_PROPERTIES_HPP

#include "chcelim/compare.hpp"
#include "chcelim/oracle.hpp"
#include "chcelim/parser.hpp"
#include "chcelim/substitution.hpp"
#include "chcelim/transform.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace chcelim::properties {

struct Result {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string firstFailure;

    bool ok() const { return failures == 0; }
    void fail(int seed, const std::string & what) {
        if (failures++ == 0) firstFailure = "seed " + std::to_string(seed) + ": " + what;
    }
};

inline constexpr int kDefaultCases = 150;

inline const char * kDecls = ":- declare p(int:in, ilist:out).\n"
                             ":- declare q(ilist:in, ilist:in, int:out).\n"
                             ":- declare r(int:in).\n";

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(int percent) { return range(1, 100) <= percent; }
    template <class T> T pick(const std::vector<T> & xs) {
        return xs[static_cast<std::size_t>(range(0, static_cast<int>(xs.size()) - 1))];
    }

    Term intVar() { return Term::var(pick<std::string>({"X", "Y", "Z", "N", "M"}), Sort::Int); }
    Term listVar() { return Term::var(pick<std::string>({"L", "K", "Xs", "Ys"}), Sort::IntList); }

    Term intTerm(bool allowLin) {
        int k = range(0, allowLin ? 3 : 2);
        if (k == 0) return Term::intConst(range(-3, 3));
        if (k == 3) {
            LinExpr e = LinExpr::variable(intVar().name(), pick<std::int64_t>({-2, -1, 1, 2, 3}));
            e.addTerm(intVar().name(), pick<std::int64_t>({-1, 1}));
            e.addConstant(range(-2, 2));
            return Term::lin(e);
        }
        return intVar();
    }

    Term listTerm(int depth, bool allowLin) {
        int k = range(0, depth > 0 ? 2 : 1);
        if (k == 0) return Term::nil();
        if (k == 1) return listVar();
        return Term::cons(intTerm(allowLin), listTerm(depth - 1, allowLin));
    }

    Term term(Sort s, bool allowLin) { return s == Sort::Int ? intTerm(allowLin) : listTerm(2, allowLin); }

    Atom atom(const Program & p, bool allowLin) {
        const std::string pred = pick(p.declOrder);
        Atom a{pred, {}};
        for (Sort s : p.predicates.at(pred).argSorts) a.args.push_back(term(s, allowLin));
        return a;
    }

    ConstraintAtom constraint() {
        if (chance(25)) return ConstraintAtom::listRel(chance(50), listTerm(1, true), listTerm(1, true));
        RelOp op = pick<RelOp>({RelOp::Eq, RelOp::Ne, RelOp::Le, RelOp::Lt, RelOp::Ge, RelOp::Gt});
        return ConstraintAtom::intRel(op, intTerm(true), intTerm(true));
    }

    Clause clause(const Program & p, int id) {
        Clause c;
        c.id = std::to_string(id);
        if (!chance(20)) c.head = atom(p, true);
        int nc = range(0, 3);
        for (int i = 0; i < nc; ++i) {
            ConstraintAtom ca = constraint();
            if (!ca.isTrue()) c.constraint.push_back(ca);
        }
        int nb = range(0, 3);
        for (int i = 0; i < nb; ++i) c.body.push_back(atom(p, true));
        return c;
    }

private:
    std::mt19937 rng_;
};

/// print(parse(print(P))) == print(P) and the reparsed program equals P.
inline Result parsePrintRoundTrip(int cases = kDefaultCases) {
    Result res{"parse/print round-trip"};
    const Program decls = parseProgramOrThrow(kDecls);
    for (int seed = 0; seed < cases; ++seed, ++res.cases) {
        Gen g(static_cast<unsigned>(seed));
        Program p = decls;
        int n = g.range(1, 5);
        for (int i = 0; i < n; ++i) p.clauses.push_back(g.clause(p, i + 1));
        const std::string text = printProgram(p);
        try {
            Program back = parseProgramOrThrow(text);
            if (printProgram(back) != text) res.fail(seed, "reprint differs:\n" + text);
            else if (!(back == p)) res.fail(seed, "reparsed program differs:\n" + text);
        } catch (const std::exception & e) {
            res.fail(seed, std::string(e.what()) + "\n" + text);
        }
    }
    return res;
}

/// Renaming a clause apart and applying the inverse renaming restores it.
inline Result substitutionRoundTrip(int cases = kDefaultCases) {
    Result res{"substitution round-trip"};
    const Program decls = parseProgramOrThrow(kDecls);
    for (int seed = 0; seed < cases; ++seed, ++res.cases) {
        Gen g(1000u + static_cast<unsigned>(seed));
        Clause c = g.clause(decls, 1);
        const auto original = varNames(c);
        auto [renamed, ren] = renameApart(c, original);
        bool clash = false;
        for (const auto & v : varNames(renamed)) clash = clash || original.count(v) != 0;
        if (clash) {
            res.fail(seed, "renamed clause shares variables: " + renamed.str());
            continue;
        }
        Substitution back;
        for (const auto & [from, to] : ren.bindings()) back.extend(to.name(), to.sort(), Term::var(from, to.sort()));
        Clause restored = applySubst(back, renamed);
        if (restored.str() != c.str() || restored.head != c.head || restored.body != c.body ||
            restored.constraint != c.constraint)
            res.fail(seed, restored.str() + " vs " + c.str());
    }
    return res;
}

/// For target = sigma(pattern), matching finds theta with theta(pattern) == target
/// binding only pattern variables.
inline Result matchThenApply(int cases = kDefaultCases) {
    Result res{"match-then-apply"};
    const Program decls = parseProgramOrThrow(kDecls);
    for (int seed = 0; seed < cases; ++seed, ++res.cases) {
        Gen g(2000u + static_cast<unsigned>(seed));
        Atom pattern = g.atom(decls, false);
        VarList vars;
        pattern.collectVars(vars);
        Substitution sigma;
        for (const auto & [name, sort] : dedupVars(vars)) sigma.extend(name, sort, g.term(sort, true));
        Atom target = sigma.apply(pattern);
        auto theta = matchAtom(pattern, target, Substitution{});
        const std::string pair = pattern.str() + " vs " + target.str();
        if (!theta) {
            res.fail(seed, "no match: " + pair);
            continue;
        }
        if (!(theta->apply(pattern) == target)) {
            res.fail(seed, "apply differs: " + pair);
            continue;
        }
        for (const auto & [name, t] : theta->bindings())
            if (!pattern.containsVar(name)) {
                res.fail(seed, "binds foreign variable " + name + ": " + pair);
                break;
            }
    }
    return res;
}

/// Folding a clause with a definition and unfolding the new atom against that
/// definition gives back the clause up to variable renaming.
inline Result foldUnfoldInversion(int cases = kDefaultCases) {
    Result res{"fold/unfold inversion"};
    const Program base = parseProgramOrThrow(kDecls);
    for (int seed = 0; res.cases < cases && seed < cases * 20; ++seed) {
        Gen g(3000u + static_cast<unsigned>(seed));
        // Body atoms over fresh variables, occasionally shared; the definition
        // head exposes a random subset, the rest stay local to the conjunction.
        int n = g.range(1, 3);
        std::vector<Atom> atoms;
        VarList vars;
        int fresh = 0;
        for (int i = 0; i < n; ++i) {
            const std::string pred = g.pick(base.declOrder);
            Atom a{pred, {}};
            for (Sort s : base.predicates.at(pred).argSorts) {
                VarList same;
                for (const auto & v : vars)
                    if (v.second == s) same.push_back(v);
                if (!same.empty() && g.chance(40)) {
                    a.args.push_back(Term::var(g.pick(same).first, s));
                } else {
                    std::string name = (s == Sort::Int ? "N" : "L") + std::to_string(fresh++);
                    vars.emplace_back(name, s);
                    a.args.push_back(Term::var(name, s));
                }
            }
            atoms.push_back(a);
        }
        vars = dedupVars(vars);
        VarList headVars;
        for (const auto & v : vars)
            if (v.second == Sort::Int || g.chance(50)) headVars.push_back(v);
        if (headVars.empty()) continue;
        ++res.cases;

        Program p = base;
        PredicateInfo info{"newp", {}, {}, false, PredRole::Definition};
        Atom head{"newp", {}};
        for (const auto & [name, sort] : headVars) {
            info.argSorts.push_back(sort);
            info.modes.push_back(Mode::In);
            head.args.push_back(Term::var(name, sort));
        }
        p.declare(info);
        Clause def{"D", head, {}, atoms};
        p.clauses.push_back(def);

        Substitution inst;
        for (const auto & [name, sort] : vars) inst.extend(name, sort, Term::var("T" + name, sort));
        Clause target{"T", std::nullopt, {}, inst.apply(atoms)};
        for (const auto & [name, sort] : headVars) {
            if (sort != Sort::Int) continue;
            target.constraint.push_back(ConstraintAtom::intRel(RelOp::Ge, Term::var("T" + name, sort), Term::intConst(1)));
            break;
        }

        auto folded = fold(target, def);
        if (!folded || folded->body.size() != 1 || folded->body[0].pred != "newp") {
            res.fail(seed, "fold failed: " + target.str() + " with " + def.str());
            continue;
        }
        auto unfolded = unfoldAtom(*folded, 0, p, Invariants{});
        PredRenaming ren;
        if (unfolded.size() != 1 ||
            !clausesEquivalent(unfolded[0], target, ren, [](const std::string &) { return false; }))
            res.fail(seed, "unfold differs from " + target.str());
    }
    if (res.cases < cases) res.fail(-1, "generator produced too few foldable cases");
    return res;
}

/// Enlarging the bounds never removes atoms from the bounded least model.
inline Result boundedModelMonotone(const std::vector<Program> & programs, int cases = kDefaultCases) {
    Result res{"bounded-model monotonicity"};
    for (int seed = 0; seed < cases; ++seed, ++res.cases) {
        Gen g(4000u + static_cast<unsigned>(seed));
        const Program & p = programs[static_cast<std::size_t>(g.range(0, static_cast<int>(programs.size()) - 1))];
        Bounds small;
        small.maxListLen = g.range(0, 2);
        small.intLo = g.range(-1, 0);
        small.intHi = g.range(0, 1);
        Bounds large = small;
        large.maxListLen += g.range(0, 1);
        large.intLo -= g.range(0, 1);
        large.intHi += g.range(0, 1);
        auto a = boundedLeastModel(p, small).atoms();
        auto b = boundedLeastModel(p, large).atoms();
        for (const auto & atom : a)
            if (!std::binary_search(b.begin(), b.end(), atom)) {
                res.fail(seed, atom + " lost when the bounds grow");
                break;
            }
    }
    return res;
}

} // namespace chcelim::properties

#endif
