/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_TRANSFORM_HPP
#define CHCELIM_TRANSFORM_HPP

#include "chcelim/program.hpp"
#include "chcelim/simplify.hpp"
#include "chcelim/substitution.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace chcelim {

struct EngineOptions {
    int maxIterations = 50;
    /// Bound on the chain of unfolding steps applied to one definition.
    int maxUnfoldDepth = 10;
    /// Bound on nested auxiliary queries (queries raised while transforming
    /// queries raised by a lemma, ...).
    int maxLemmaDepth = 4;
};

enum class StepKind { Define, Fold, Unfold, Replace, Embed, Match, DiffIntro, AuxQuery, NegElim };
std::string stepKindName(StepKind k);

struct TraceEvent {
    StepKind kind = StepKind::Define;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string note;
};

/// Ordered derivation log plus the text of every clause it mentions.
struct Trace {
    std::vector<TraceEvent> events;
    std::map<std::string, std::string> clauses;

    void record(const Clause & c);
    void add(StepKind kind, std::vector<std::string> in, std::vector<std::string> out, std::string note = {});
    /// One line per event: `Kind in=[..] out=[..] note`, then the clause store.
    std::string text() const;
    /// One JSON object per line; events first, then `{"clause": id, "text": ...}`.
    std::string jsonLines() const;
};

/// forall(premise -> exists existentials. conclusion)
struct Lemma {
    std::string id;
    Constraint premiseConstraint;
    std::vector<Atom> premiseAtoms;
    VarList existentials;
    Constraint conclusionConstraint;
    std::vector<Atom> conclusionAtoms;

    std::string str() const;
};

/// Step 3: sigma maps the (renamed-apart) definition's variables onto the
/// target; atom indices refer to the respective clause bodies.
struct MatchResult {
    Clause def;
    Substitution sigma;
    std::vector<std::size_t> matchingDef;
    std::vector<std::size_t> matchingTgt;
    std::vector<std::size_t> mismatchDef;
    std::vector<std::size_t> mismatchTgt;
    /// Indices into the constraints. Definition constraints whose instance
    /// occurs in the target are matched; every other definition constraint
    /// and every list constraint of the target is a mismatch.
    std::vector<std::size_t> matchingDefCons;
    std::vector<std::size_t> mismatchDefCons;
    std::vector<std::size_t> mismatchTgtCons;
};

/// Replaces a sub-conjunction of `target` that is an instance of `def`'s body
/// (atoms and constraints) by the instantiated head. Existential variables of
/// the definition must map to distinct variables not used elsewhere.
std::optional<Clause> fold(const Clause & target, const Clause & def);

/// Steps 1-3. Requires every definition atom to have an instance among the
/// target atoms, then picks the consistent partial matching with most
/// matched atoms; ties go to matchings of atoms whose predicate occurs once
/// in the definition, then to the lexicographically smallest target indices.
std::optional<MatchResult> findEmbedding(const Clause & def, const Clause & target);

struct DiffIntro {
    Clause diffDef;
    PredicateInfo diffInfo;
    Clause replaced;
    Clause folded;
    Lemma implication;
};

/// Steps 4-6 with a difference predicate named `name`. Returns nullopt when
/// no integer variable occurs at an output position of the mismatching
/// conjunctions, when they contain list constraints, or when both are empty.
std::optional<DiffIntro> introduceDiff(const MatchResult & m, const Clause & target, const Program & p,
                                       const std::string & name);

struct AuxIntro {
    Lemma lemma;
    std::vector<Clause> queries;
    /// Declarations and clauses of newly introduced not_exists predicates.
    std::vector<PredicateInfo> negInfos;
    std::vector<Clause> negClauses;
    Clause replaced;
    Clause folded;
};

struct LemmaQueries {
    std::vector<Clause> queries;
    std::vector<PredicateInfo> negInfos;
    std::vector<Clause> negClauses;
};

/// Queries whose satisfiability establishes `l`: the premise with the
/// negated projection of the conclusion's constraining atom, and one query
/// per conclusion constraint with that constraint negated.
LemmaQueries lemmaQueries(const Lemma & l, const Program & p);

/// Step 4* (with Steps 5-6). Throws UnsupportedShape when the conclusion
/// has more than one atom constraining an existential input, or such an
/// atom's predicate is not total functional.
AuxIntro introduceAuxQueries(const MatchResult & m, const Clause & target, const Program & p);

struct Generalization {
    /// Set when an argument was shortened: p(.., [A|C], ..) implies
    /// p(.., C, ..) with the other inputs existentially quantified.
    std::optional<Lemma> lemma;
    Clause replaced;
    Clause folded;
};

/// Folds `target` with a single-atom definition after generalizing it: one
/// body atom is kept, possibly with a list input shortened by its first
/// element, and every other atom or constraint that is not over basic
/// types is dropped. Only results without list arguments are returned.
std::optional<Generalization> generalizeFold(const Clause & target, const Clause & def, const Program & p);

/// Resolves body atom `index` of `c` against every defining clause in `p`,
/// simplifying each resolvent.
std::vector<Clause> unfoldAtom(const Clause & c, std::size_t index, const Program & p, const Invariants & inv);

/// Index of the atom the first unfolding step selects, if any.
std::optional<std::size_t> selectUnfoldAtom(const Clause & c, const Program & p);

class UnfoldDepthExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unfolds a definition: the selected atom first, then any atom whose
/// unfolding is deterministic (at most one resolvent survives) or that has
/// a constructor where the defining clauses match on constructors, until
/// none is left. Unfolding that would reproduce an atom embedding its parent
/// is not performed. Throws UnfoldDepthExceeded past `maxDepth` steps.
std::vector<Clause> unfoldDefinition(const Clause & def, const Program & p, const Invariants & inv, int maxDepth);

/// Cleanups of the Replace rule: constraint simplification and deletion of
/// unsatisfiable clauses, merging of functional atoms with equal inputs,
/// and deletion of total atoms whose outputs are unused.
std::vector<Clause> replaceStep(const std::vector<Clause> & cls, const Program & p, const Invariants & inv);

enum class EngineStatus { Ok, Diverged, Stuck, UnfoldDepthExceeded };
std::string engineStatusName(EngineStatus s);

struct TransfResult {
    EngineStatus status = EngineStatus::Ok;
    std::string message;
    /// TransfCls with declarations of every predicate it uses.
    Program programOut;
    /// Input clauses plus every definition and not_exists clause introduced,
    /// i.e. the program in which lemmas are to be checked.
    Program extended;
    std::vector<Clause> definitions;
    std::vector<Lemma> lemmas;
    std::vector<Clause> auxQueries;
    Trace trace;
    int iterations = 0;
};

/// The Elimination Algorithm extended with difference predicates and
/// auxiliary queries. `qs` are transformed w.r.t. the non-query clauses of `p`.
TransfResult eliminate(const Program & p, const std::vector<Clause> & qs, const EngineOptions & opts = {});

/// As above with the queries of `p`.
TransfResult eliminate(const Program & p, const EngineOptions & opts = {});

} // namespace chcelim

#endif
