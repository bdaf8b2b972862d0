/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/transform.hpp"

#include "chcelim/negation.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace chcelim {

std::string stepKindName(StepKind k) {
    switch (k) {
        case StepKind::Define: return "Define";
        case StepKind::Fold: return "Fold";
        case StepKind::Unfold: return "Unfold";
        case StepKind::Replace: return "Replace";
        case StepKind::Embed: return "Embed";
        case StepKind::Match: return "Match";
        case StepKind::DiffIntro: return "DiffIntro";
        case StepKind::AuxQuery: return "AuxQuery";
        case StepKind::NegElim: return "NegElim";
    }
    return "?";
}

std::string engineStatusName(EngineStatus s) {
    switch (s) {
        case EngineStatus::Ok: return "Ok";
        case EngineStatus::Diverged: return "Diverged";
        case EngineStatus::Stuck: return "Stuck";
        case EngineStatus::UnfoldDepthExceeded: return "UnfoldDepthExceeded";
    }
    return "?";
}

void Trace::record(const Clause & c) { clauses[c.id] = c.str(); }

void Trace::add(StepKind kind, std::vector<std::string> in, std::vector<std::string> out, std::string note) {
    events.push_back(TraceEvent{kind, std::move(in), std::move(out), std::move(note)});
}

std::string Trace::text() const {
    auto list = [](const std::vector<std::string> & xs) {
        std::string s = "[";
        for (std::size_t i = 0; i < xs.size(); ++i) { s += (i ? "," : "") + xs[i]; }
        return s + "]";
    };
    std::ostringstream os;
    for (auto const & e : events) {
        os << stepKindName(e.kind) << " in=" << list(e.inputs) << " out=" << list(e.outputs);
        if (!e.note.empty()) { os << " " << e.note; }
        os << "\n";
    }
    for (auto const & [id, text] : clauses) { os << id << ": " << text << "\n"; }
    return os.str();
}

std::string Trace::jsonLines() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < events.size(); ++i) {
        auto const & e = events[i];
        nlohmann::ordered_json j;
        j["step"] = i;
        j["kind"] = stepKindName(e.kind);
        j["inputs"] = e.inputs;
        j["outputs"] = e.outputs;
        j["note"] = e.note;
        os << j.dump() << "\n";
    }
    for (auto const & [id, text] : clauses) {
        nlohmann::ordered_json j;
        j["clause"] = id;
        j["text"] = text;
        os << j.dump() << "\n";
    }
    return os.str();
}

namespace {

bool hasListEquality(const Clause & c) {
    return std::any_of(c.constraint.begin(), c.constraint.end(),
                       [](const ConstraintAtom & a) { return a.kind() == ConstraintAtom::Kind::ListEq; });
}

class Engine {
public:
    Engine(const Program & p, const EngineOptions & opts) : opts_(opts) {
        ext_.predicates = p.predicates;
        ext_.declOrder = p.declOrder;
        ext_.clauses = p.nonQueries();
        for (auto const & [name, info] : p.predicates) { inputPreds_.insert(name); }
        inv_ = Invariants::compute(ext_);
    }

    TransfResult run(const std::vector<Clause> & qs) {
        std::vector<Item> in;
        for (auto const & q : qs) {
            res_.trace.record(q);
            in.push_back(Item{q, 0});
        }
        try {
            while (!in.empty()) {
                if (++res_.iterations > opts_.maxIterations) {
                    res_.status = EngineStatus::Diverged;
                    res_.message = "iteration bound " + std::to_string(opts_.maxIterations) + " reached";
                    break;
                }
                newDefs_.clear();
                pending_.clear();
                for (auto const & it : in) { defineFold(it.clause, it.depth); }
                inv_ = Invariants::compute(ext_);
                std::vector<Item> next;
                for (auto const & d : newDefs_) {
                    auto unf = unfoldDefinition(d.clause, ext_, inv_, opts_.maxUnfoldDepth);
                    std::vector<std::string> unfIds;
                    for (auto & u : unf) {
                        u.id = freshId("U");
                        res_.trace.record(u);
                        unfIds.push_back(u.id);
                    }
                    res_.trace.add(StepKind::Unfold, {d.clause.id}, unfIds);
                    std::vector<std::string> repIds;
                    for (auto const & u : unf) {
                        for (auto & r : replaceStep({u}, ext_, inv_)) {
                            if (!(r.constraint == u.constraint && r.body == u.body && r.head == u.head)) {
                                r.id = freshId("R");
                                res_.trace.record(r);
                            }
                            repIds.push_back(r.id);
                            next.push_back(Item{r, d.depth});
                        }
                    }
                    res_.trace.add(StepKind::Replace, unfIds, repIds);
                }
                next.insert(next.end(), pending_.begin(), pending_.end());
                in = std::move(next);
            }
        } catch (const UnfoldDepthExceeded & e) {
            res_.status = EngineStatus::UnfoldDepthExceeded;
            res_.message = e.what();
        } catch (const std::exception & e) {
            res_.status = EngineStatus::Stuck;
            res_.message = e.what();
        }
        finish();
        return std::move(res_);
    }

private:
    struct Item {
        Clause clause;
        int depth = 0;
    };

    std::string freshId(const std::string & prefix) { return prefix + std::to_string(++counters_[prefix]); }

    std::string freshPred(const std::string & base, int & counter, bool bareFirst) {
        while (true) {
            ++counter;
            std::string name = (bareFirst && counter == 1) ? base : base + std::to_string(counter);
            if (!ext_.isDeclared(name)) { return name; }
        }
    }

    void emit(Clause c) {
        res_.trace.record(c);
        transf_.push_back(std::move(c));
    }

    void defineFold(const Clause & c0, int depth) {
        res_.trace.record(c0);
        if (c0.hasBasicTypes()) {
            emit(c0);
            return;
        }
        if (hasListEquality(c0)) {
            auto pieces = simplifyClause(c0, ext_, inv_);
            std::vector<std::string> ids;
            for (auto & s : pieces) {
                s = tidyNames(s);
                s.id = freshId("R");
                ids.push_back(s.id);
                res_.trace.record(s);
            }
            res_.trace.add(StepKind::Replace, {c0.id}, ids, "solve list equalities");
            for (auto const & s : pieces) { defineFold(s, depth); }
            return;
        }
        if (tryPlainFold(c0)) { return; }
        for (std::size_t k = 0; k < defs_.size(); ++k) {
            if (tryEmbedding(c0, defs_[k], depth)) { return; }
        }
        if (tryGeneralize(c0, depth)) { return; }
        newDefinition(c0, depth);
    }

    bool tryPlainFold(const Clause & c) {
        Clause cur = c;
        std::vector<std::string> used;
        bool changed = true;
        while (changed && !cur.hasBasicTypes()) {
            changed = false;
            for (auto const & d : defs_) {
                if (auto f = fold(cur, d)) {
                    cur = *f;
                    used.push_back(d.id);
                    changed = true;
                    break;
                }
            }
        }
        if (!cur.hasBasicTypes()) { return false; }
        cur.id = c.id + "f";
        std::vector<std::string> in{c.id};
        in.insert(in.end(), used.begin(), used.end());
        res_.trace.add(StepKind::Fold, in, {cur.id});
        emit(cur);
        return true;
    }

    bool tryEmbedding(const Clause & c, const Clause def, int depth) {
        auto m = findEmbedding(def, c);
        if (!m || m->matchingDef.empty()) { return false; }
        std::string diffName = peekPred("diff", diffCounter_, true);
        if (auto d = introduceDiff(*m, c, ext_, diffName)) {
            if (!d->folded.hasBasicTypes()) { return false; }
            freshPred("diff", diffCounter_, true);
            res_.trace.add(StepKind::Embed, {def.id, c.id}, {});
            res_.trace.add(StepKind::Match, {def.id, c.id}, {}, m->sigma.str());
            d->diffDef.id = freshId("D");
            ext_.declare(d->diffInfo);
            ext_.clauses.push_back(d->diffDef);
            defs_.push_back(d->diffDef);
            newDefs_.push_back(Item{d->diffDef, depth});
            res_.definitions.push_back(d->diffDef);
            res_.trace.record(d->diffDef);
            d->replaced = tidyNames(d->replaced);
            d->folded = tidyNames(d->folded);
            d->replaced.id = c.id + "r";
            d->folded.id = c.id + "f";
            res_.trace.record(d->replaced);
            d->implication.id = "I" + std::to_string(++implCounter_);
            res_.lemmas.push_back(d->implication);
            res_.trace.add(StepKind::DiffIntro, {def.id, c.id}, {d->diffDef.id, d->replaced.id},
                           d->implication.id + ": " + d->implication.str());
            res_.trace.add(StepKind::Fold, {d->replaced.id, def.id}, {d->folded.id});
            emit(d->folded);
            return true;
        }
        if (depth >= opts_.maxLemmaDepth) { return false; }
        AuxIntro aux;
        try {
            aux = introduceAuxQueries(*m, c, ext_);
        } catch (const UnsupportedShape &) {
            return false;
        }
        if (!aux.folded.hasBasicTypes()) { return false; }
        res_.trace.add(StepKind::Embed, {def.id, c.id}, {});
        res_.trace.add(StepKind::Match, {def.id, c.id}, {}, m->sigma.str());
        addNegations(aux.negInfos, aux.negClauses);
        if (aux.queries.empty()) {
            res_.trace.add(StepKind::AuxQuery, {def.id, c.id}, {}, "trivial: " + aux.lemma.str());
        } else {
            recordLemma(aux.lemma, aux.queries, {def.id, c.id}, depth);
        }
        aux.replaced.id = c.id + "r";
        aux.folded.id = c.id + "f";
        res_.trace.record(aux.replaced);
        res_.trace.add(StepKind::Replace, {c.id}, {aux.replaced.id}, "apply lemma");
        res_.trace.add(StepKind::Fold, {aux.replaced.id, def.id}, {aux.folded.id});
        emit(aux.folded);
        return true;
    }

    bool tryGeneralize(const Clause & c, int depth) {
        for (std::size_t k = 0; k < defs_.size(); ++k) {
            const Clause def = defs_[k];
            auto g = generalizeFold(c, def, ext_);
            if (!g) { continue; }
            if (g->lemma) {
                if (depth >= opts_.maxLemmaDepth) { continue; }
                LemmaQueries lq;
                try {
                    lq = lemmaQueries(*g->lemma, ext_);
                } catch (const UnsupportedShape &) {
                    continue;
                }
                addNegations(lq.negInfos, lq.negClauses);
                recordLemma(*g->lemma, lq.queries, {c.id}, depth);
            }
            g->replaced = tidyNames(g->replaced);
            g->folded = tidyNames(g->folded);
            g->replaced.id = c.id + "g";
            g->folded.id = c.id + "f";
            res_.trace.record(g->replaced);
            res_.trace.add(StepKind::Replace, {c.id}, {g->replaced.id}, g->lemma ? "generalize by lemma" : "generalize");
            res_.trace.add(StepKind::Fold, {g->replaced.id, def.id}, {g->folded.id});
            emit(g->folded);
            return true;
        }
        return false;
    }

    void addNegations(const std::vector<PredicateInfo> & infos, const std::vector<Clause> & clauses) {
        if (infos.empty()) { return; }
        for (auto const & info : infos) { ext_.declare(info); }
        std::vector<std::string> ids;
        for (auto const & nc : clauses) {
            ext_.clauses.push_back(nc);
            res_.trace.record(nc);
            ids.push_back(nc.id);
        }
        res_.trace.add(StepKind::NegElim, {}, ids, infos.front().name);
        inv_ = Invariants::compute(ext_);
    }

    // A lemma that is a variant of one already raised reuses its queries.
    void recordLemma(Lemma l, std::vector<Clause> queries, std::vector<std::string> inputs, int depth) {
        std::string key = lemmaKey(l);
        if (auto it = lemmaIds_.find(key); it != lemmaIds_.end()) {
            res_.trace.add(StepKind::AuxQuery, inputs, {}, "reuse " + it->second);
            return;
        }
        l.id = "L" + std::to_string(++lemmaCounter_);
        lemmaIds_.emplace(key, l.id);
        std::vector<std::string> qIds;
        for (std::size_t j = 0; j < queries.size(); ++j) {
            Clause & q = queries[j];
            q.id = "Q" + std::to_string(lemmaCounter_) + (queries.size() > 1 ? "." + std::to_string(j + 1) : std::string{});
            res_.trace.record(q);
            qIds.push_back(q.id);
            res_.auxQueries.push_back(q);
            pending_.push_back(Item{q, depth + 1});
        }
        res_.lemmas.push_back(l);
        res_.trace.add(StepKind::AuxQuery, inputs, qIds, l.id + ": " + l.str());
    }

    static std::string lemmaKey(const Lemma & l) {
        VarList vs;
        for (auto const & a : l.premiseAtoms) { a.collectVars(vs); }
        for (auto const & x : l.premiseConstraint) { x.collectVars(vs); }
        for (auto const & a : l.conclusionAtoms) { a.collectVars(vs); }
        for (auto const & x : l.conclusionConstraint) { x.collectVars(vs); }
        Substitution ren;
        int n = 0;
        for (auto const & [v, s] : dedupVars(vs)) { ren.bind(v, s, Term::var("_K" + std::to_string(++n), s)); }
        Lemma r;
        r.premiseAtoms = ren.apply(l.premiseAtoms);
        r.premiseConstraint = ren.apply(l.premiseConstraint);
        r.conclusionAtoms = ren.apply(l.conclusionAtoms);
        r.conclusionConstraint = ren.apply(l.conclusionConstraint);
        for (auto const & [v, s] : l.existentials) { r.existentials.emplace_back(ren.apply(Term::var(v, s)).name(), s); }
        return r.str();
    }

    std::string peekPred(const std::string & base, int counter, bool bareFirst) {
        return freshPred(base, counter, bareFirst);
    }

    void newDefinition(const Clause & c, int depth) {
        VarList vs;
        for (auto const & a : c.body) { a.collectVars(vs); }
        for (auto const & x : c.constraint) {
            if (x.isList()) { x.collectVars(vs); }
        }
        PredicateInfo info;
        info.name = freshPred("new", defCounter_, false);
        info.role = PredRole::Definition;
        Atom head{info.name, {}};
        for (auto const & [v, s] : dedupVars(vs)) {
            if (!isBasic(s)) { continue; }
            head.args.push_back(Term::var(v, s));
            info.argSorts.push_back(s);
            info.modes.push_back(Mode::In);
        }
        Clause def;
        def.id = freshId("D");
        def.head = head;
        def.body = c.body;
        Clause folded;
        folded.id = c.id + "f";
        folded.head = c.head;
        for (auto const & x : c.constraint) {
            if (x.isList()) {
                def.constraint.push_back(x);
            } else {
                folded.constraint.push_back(x);
            }
        }
        folded.body.push_back(head);
        ext_.declare(info);
        ext_.clauses.push_back(def);
        defs_.push_back(def);
        newDefs_.push_back(Item{def, depth});
        res_.definitions.push_back(def);
        res_.trace.record(def);
        res_.trace.add(StepKind::Define, {c.id}, {def.id}, info.name);
        res_.trace.add(StepKind::Fold, {c.id, def.id}, {folded.id});
        emit(folded);
    }

    void finish() {
        Program out;
        std::set<std::string> needed;
        std::vector<Clause> clauses = transf_;
        // Predicates of the input used by the result come along with their
        // defining clauses.
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            for (auto const & a : clauses[i].body) {
                if (!needed.insert(a.pred).second) { continue; }
                if (inputPreds_.count(a.pred)) {
                    for (const Clause * d : ext_.definingClauses(a.pred)) { clauses.push_back(*d); }
                }
            }
            if (clauses[i].head) { needed.insert(clauses[i].head->pred); }
        }
        for (auto const & name : ext_.declOrder) {
            if (needed.count(name)) { out.declare(ext_.predicates.at(name)); }
        }
        out.clauses = clauses;
        res_.programOut = std::move(out);
        res_.extended = ext_;
    }

    const EngineOptions & opts_;
    Program ext_;
    Invariants inv_;
    TransfResult res_;
    std::vector<Clause> defs_;
    std::vector<Item> newDefs_;
    std::vector<Item> pending_;
    std::vector<Clause> transf_;
    std::set<std::string> inputPreds_;
    std::map<std::string, int> counters_;
    int defCounter_ = 0;
    int diffCounter_ = 0;
    int lemmaCounter_ = 0;
    int implCounter_ = 0;
    std::map<std::string, std::string> lemmaIds_;
};

} // namespace

TransfResult eliminate(const Program & p, const std::vector<Clause> & qs, const EngineOptions & opts) {
    Engine e(p, opts);
    return e.run(qs);
}

TransfResult eliminate(const Program & p, const EngineOptions & opts) { return eliminate(p, p.queries(), opts); }

} // namespace chcelim
