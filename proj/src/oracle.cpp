/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/oracle.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace chcelim {

namespace {

using i64 = std::int64_t;
using Tuple = std::vector<i64>;

struct TupleHash {
    std::size_t operator()(const Tuple & t) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (i64 x : t) { h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL; }
        return h;
    }
};

// Lists with elements in [lo, hi] numbered by length, then lexicographically:
// code(xs) = off[len] + digits in base r = hi-lo+1.
class ListCodec {
public:
    ListCodec(i64 lo, i64 hi) : lo_(lo), r_(hi - lo + 1) {
        if (r_ < 1) { throw OracleError("empty integer range"); }
        off_.push_back(0);
        pow_.push_back(1);
        while (off_.size() < 64) {
            i64 p = pow_.back();
            if (p > (INT64_MAX / 4) / r_) { break; }
            off_.push_back(off_.back() + p);
            pow_.push_back(p * r_);
        }
    }

    int capacity() const { return static_cast<int>(off_.size()) - 2; }
    // Codes below this bound are exactly the lists of length <= maxLen.
    i64 limit(int maxLen) const { return off_.at(static_cast<std::size_t>(std::min(maxLen, capacity()) + 1)); }
    int length(i64 code) const {
        return static_cast<int>(std::upper_bound(off_.begin(), off_.end(), code) - off_.begin()) - 1;
    }
    i64 head(i64 code, int n) const { return (code - off_[n]) / pow_[n - 1] + lo_; }
    i64 tail(i64 code, int n) const { return off_[n - 1] + (code - off_[n]) % pow_[n - 1]; }
    std::optional<i64> cons(i64 h, i64 t) const {
        if (h < lo_ || h >= lo_ + r_) { return std::nullopt; }
        int n = length(t);
        if (n + 1 > capacity()) { return std::nullopt; }
        return off_[n + 1] + (h - lo_) * pow_[n] + (t - off_[n]);
    }
    std::vector<i64> decode(i64 code) const {
        std::vector<i64> out;
        for (int n = length(code); n > 0; --n) {
            out.push_back(head(code, n));
            code = tail(code, n);
        }
        return out;
    }
    std::optional<i64> encode(const std::vector<i64> & xs) const {
        i64 c = 0;
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
            auto n = cons(*it, c);
            if (!n) { return std::nullopt; }
            c = *n;
        }
        return c;
    }
    std::string render(i64 code) const {
        std::string s = "[";
        auto xs = decode(code);
        for (std::size_t i = 0; i < xs.size(); ++i) { s += (i ? "," : "") + std::to_string(xs[i]); }
        return s + "]";
    }

private:
    i64 lo_;
    i64 r_;
    std::vector<i64> off_;
    std::vector<i64> pow_;
};

struct CTerm {
    enum class K { Var, Const, Nil, Cons, Lin };
    K k = K::Const;
    int var = -1;
    i64 c = 0;
    std::vector<CTerm> sub;
    std::vector<std::pair<int, i64>> lin;
};

struct CAtom {
    int pred = -1;
    std::vector<CTerm> args;
};

struct CCons {
    enum class K { Int, ListEq, ListNe, Bool };
    K k = K::Bool;
    RelOp op = RelOp::Eq;
    bool value = true;
    std::vector<std::pair<int, i64>> lin;
    i64 c = 0;
    CTerm l;
    CTerm r;
};

struct VarTable {
    std::map<std::string, int> index;
    std::vector<std::string> names;
    std::vector<Sort> sorts;

    int get(const std::string & name, Sort s) {
        auto [it, fresh] = index.emplace(name, static_cast<int>(names.size()));
        if (fresh) {
            names.push_back(name);
            sorts.push_back(s);
        }
        return it->second;
    }
    int size() const { return static_cast<int>(names.size()); }
};

struct PredTable {
    std::map<std::string, int> ids;
    std::vector<std::string> names;
    std::vector<std::vector<Sort>> sorts;

    int id(const std::string & name, const std::vector<Sort> & argSorts) {
        auto [it, fresh] = ids.emplace(name, static_cast<int>(names.size()));
        if (fresh) {
            names.push_back(name);
            sorts.push_back(argSorts);
        }
        return it->second;
    }
};

struct CClause {
    std::string id;
    std::optional<CAtom> head;
    std::vector<CAtom> body;
    std::vector<CCons> cons;
    VarTable vars;
    std::vector<int> allVars;
};

class Compiler {
public:
    Compiler(PredTable & preds, VarTable & vars) : preds_(preds), vars_(vars) {}

    CTerm term(const Term & t) {
        CTerm c;
        switch (t.kind()) {
        case Term::Kind::Var:
            c.k = CTerm::K::Var;
            c.var = vars_.get(t.name(), t.sort());
            break;
        case Term::Kind::IntConst:
            c.k = CTerm::K::Const;
            c.c = t.value();
            break;
        case Term::Kind::Nil: c.k = CTerm::K::Nil; break;
        case Term::Kind::Cons:
            c.k = CTerm::K::Cons;
            c.sub.push_back(term(t.head()));
            c.sub.push_back(term(t.tail()));
            break;
        case Term::Kind::Lin:
            c.k = CTerm::K::Lin;
            c.lin = linear(t.linExpr());
            c.c = t.linExpr().constant();
            break;
        }
        return c;
    }

    std::vector<std::pair<int, i64>> linear(const LinExpr & e) {
        std::vector<std::pair<int, i64>> out;
        for (auto const & [v, k] : e.coeffs()) { out.emplace_back(vars_.get(v, Sort::Int), k); }
        return out;
    }

    CAtom atom(const Atom & a) {
        CAtom c;
        std::vector<Sort> sorts;
        for (auto const & t : a.args) {
            c.args.push_back(term(t));
            sorts.push_back(t.sort());
        }
        c.pred = preds_.id(a.pred, sorts);
        return c;
    }

    CCons constraint(const ConstraintAtom & a) {
        CCons c;
        switch (a.kind()) {
        case ConstraintAtom::Kind::IntRel:
            c.k = CCons::K::Int;
            c.op = a.op();
            c.lin = linear(a.expr());
            c.c = a.expr().constant();
            break;
        case ConstraintAtom::Kind::BoolLit:
            c.k = CCons::K::Bool;
            c.value = a.value();
            break;
        case ConstraintAtom::Kind::ListEq:
        case ConstraintAtom::Kind::ListNe:
            c.k = a.kind() == ConstraintAtom::Kind::ListEq ? CCons::K::ListEq : CCons::K::ListNe;
            c.l = term(a.lhs());
            c.r = term(a.rhs());
            break;
        }
        return c;
    }

private:
    PredTable & preds_;
    VarTable & vars_;
};

CClause compileClause(const Clause & cl, PredTable & preds) {
    CClause c;
    c.id = cl.id;
    Compiler comp(preds, c.vars);
    if (cl.head) { c.head = comp.atom(*cl.head); }
    for (auto const & a : cl.body) { c.body.push_back(comp.atom(a)); }
    for (auto const & x : cl.constraint) { c.cons.push_back(comp.constraint(x)); }
    for (int v = 0; v < c.vars.size(); ++v) { c.allVars.push_back(v); }
    return c;
}

void declareAll(const Program & p, PredTable & preds) {
    for (auto const & name : p.declOrder) {
        const PredicateInfo * info = p.info(name);
        if (info != nullptr) { preds.id(name, info->argSorts); }
    }
}

struct Env {
    std::vector<i64> val;
    std::vector<char> bound;
    std::vector<int> trail;
    std::vector<std::pair<const CTerm *, i64>> deferred;

    explicit Env(int n = 0) : val(static_cast<std::size_t>(n), 0), bound(static_cast<std::size_t>(n), 0) {}
    void grow(int n) {
        if (static_cast<int>(val.size()) < n) {
            val.resize(static_cast<std::size_t>(n), 0);
            bound.resize(static_cast<std::size_t>(n), 0);
        }
    }

    struct Mark {
        std::size_t t;
        std::size_t d;
    };
    Mark mark() const { return {trail.size(), deferred.size()}; }
    void undo(Mark m) {
        while (trail.size() > m.t) {
            bound[static_cast<std::size_t>(trail.back())] = 0;
            trail.pop_back();
        }
        deferred.resize(m.d);
    }
    void bind(int v, i64 x) {
        val[static_cast<std::size_t>(v)] = x;
        bound[static_cast<std::size_t>(v)] = 1;
        trail.push_back(v);
    }
    bool isBound(int v) const { return bound[static_cast<std::size_t>(v)] != 0; }
    i64 get(int v) const { return val[static_cast<std::size_t>(v)]; }
};

enum class Ev { Ok, Unbound, Unrepresentable };

using Cont = std::function<bool()>;

class Solver;

struct AtomSource {
    virtual ~AtomSource() = default;
    // Calls k for every way of making `a` hold; false from k stops the search.
    virtual bool enumerate(const Solver & s, const CAtom & a, std::size_t pos, Env & e, const Cont & k) = 0;
};

class Solver {
public:
    Solver(const ListCodec & codec, i64 lo, i64 hi, int enumLen)
        : codec_(codec), lo_(lo), hi_(hi), enumLimit_(codec.limit(enumLen)) {}

    const ListCodec & codec() const { return codec_; }

    Ev eval(const CTerm & t, const Env & e, i64 & out) const {
        switch (t.k) {
        case CTerm::K::Var:
            if (!e.isBound(t.var)) { return Ev::Unbound; }
            out = e.get(t.var);
            return Ev::Ok;
        case CTerm::K::Const: out = t.c; return Ev::Ok;
        case CTerm::K::Nil: out = 0; return Ev::Ok;
        case CTerm::K::Cons: {
            i64 h = 0;
            i64 tl = 0;
            Ev a = eval(t.sub[0], e, h);
            Ev b = eval(t.sub[1], e, tl);
            if (a == Ev::Unbound || b == Ev::Unbound) { return Ev::Unbound; }
            if (a != Ev::Ok || b != Ev::Ok) { return Ev::Unrepresentable; }
            auto c = codec_.cons(h, tl);
            if (!c) { return Ev::Unrepresentable; }
            out = *c;
            return Ev::Ok;
        }
        case CTerm::K::Lin: {
            i64 sum = t.c;
            for (auto const & [v, k] : t.lin) {
                if (!e.isBound(v)) { return Ev::Unbound; }
                sum += k * e.get(v);
            }
            out = sum;
            return Ev::Ok;
        }
        }
        return Ev::Unbound;
    }

    // Binds variables of `t` so that it denotes `v`. Linear terms with more
    // than one unknown are deferred to the constraint phase.
    bool match(const CTerm & t, i64 v, Env & e) const {
        switch (t.k) {
        case CTerm::K::Var:
            if (e.isBound(t.var)) { return e.get(t.var) == v; }
            e.bind(t.var, v);
            return true;
        case CTerm::K::Const: return t.c == v;
        case CTerm::K::Nil: return v == 0;
        case CTerm::K::Cons: {
            int n = codec_.length(v);
            if (n == 0) { return false; }
            return match(t.sub[0], codec_.head(v, n), e) && match(t.sub[1], codec_.tail(v, n), e);
        }
        case CTerm::K::Lin: {
            i64 rest = t.c;
            int unknown = -1;
            i64 coeff = 0;
            int count = 0;
            for (auto const & [x, k] : t.lin) {
                if (e.isBound(x)) {
                    rest += k * e.get(x);
                } else {
                    unknown = x;
                    coeff = k;
                    ++count;
                }
            }
            if (count == 0) { return rest == v; }
            if (count > 1) {
                e.deferred.emplace_back(&t, v);
                return true;
            }
            if ((v - rest) % coeff != 0) { return false; }
            e.bind(unknown, (v - rest) / coeff);
            return true;
        }
        }
        return false;
    }

    // 1 = holds, 0 = fails, -1 = not yet decided.
    int check(const CCons & c, const Env & e) const {
        switch (c.k) {
        case CCons::K::Bool: return c.value ? 1 : 0;
        case CCons::K::Int: {
            i64 sum = c.c;
            for (auto const & [v, k] : c.lin) {
                if (!e.isBound(v)) { return -1; }
                sum += k * e.get(v);
            }
            return relHolds(c.op, sum) ? 1 : 0;
        }
        case CCons::K::ListEq:
        case CCons::K::ListNe: {
            i64 a = 0;
            i64 b = 0;
            Ev x = eval(c.l, e, a);
            Ev y = eval(c.r, e, b);
            if (x == Ev::Unbound || y == Ev::Unbound) { return -1; }
            bool equal = x == Ev::Ok && y == Ev::Ok && a == b;
            if (x != Ev::Ok && y != Ev::Ok) { return -1; }
            return (c.k == CCons::K::ListEq) == equal ? 1 : 0;
        }
        }
        return -1;
    }

    static bool relHolds(RelOp op, i64 v) {
        switch (op) {
        case RelOp::Eq: return v == 0;
        case RelOp::Ne: return v != 0;
        case RelOp::Le: return v <= 0;
        case RelOp::Lt: return v < 0;
        case RelOp::Ge: return v >= 0;
        case RelOp::Gt: return v > 0;
        }
        return false;
    }

    // Solves equalities with a single unknown; false on contradiction or
    // when a decided constraint fails.
    bool propagate(const std::vector<CCons> & cons, Env & e) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto const & c : cons) {
                if (c.k == CCons::K::Int && c.op == RelOp::Eq) {
                    int r = solveLinear(c.lin, c.c, 0, e);
                    if (r < 0) { return false; }
                    changed = changed || r > 0;
                } else if (c.k == CCons::K::ListEq) {
                    i64 a = 0;
                    i64 b = 0;
                    Ev x = eval(c.l, e, a);
                    Ev y = eval(c.r, e, b);
                    if (x == Ev::Ok && y == Ev::Unbound) {
                        if (!match(c.r, a, e)) { return false; }
                        changed = true;
                    } else if (y == Ev::Ok && x == Ev::Unbound) {
                        if (!match(c.l, b, e)) { return false; }
                        changed = true;
                    }
                }
            }
            for (std::size_t i = 0; i < e.deferred.size(); ++i) {
                auto [t, v] = e.deferred[i];
                int r = solveLinear(t->lin, t->c, v, e);
                if (r < 0) { return false; }
                changed = changed || r > 0;
            }
        }
        return std::none_of(cons.begin(), cons.end(), [&](const CCons & c) { return check(c, e) == 0; });
    }

    // sum(lin) + c == target: -1 contradiction, 1 bound a variable, 0 otherwise.
    static int solveLinear(const std::vector<std::pair<int, i64>> & lin, i64 c, i64 target, Env & e) {
        i64 rest = c;
        int unknown = -1;
        i64 coeff = 0;
        int count = 0;
        for (auto const & [x, k] : lin) {
            if (e.isBound(x)) {
                rest += k * e.get(x);
            } else {
                unknown = x;
                coeff = k;
                ++count;
            }
        }
        if (count != 1) { return 0; }
        if ((target - rest) % coeff != 0) { return -1; }
        e.bind(unknown, (target - rest) / coeff);
        return 1;
    }

    bool allHold(const std::vector<CCons> & cons, const Env & e) const {
        for (auto const & c : cons) {
            if (check(c, e) != 1) { return false; }
        }
        for (auto const & [t, v] : e.deferred) {
            i64 x = 0;
            if (eval(*t, e, x) != Ev::Ok || x != v) { return false; }
        }
        return true;
    }

    // Enumerates the still unbound `vars` over the domains, then checks.
    bool finish(const std::vector<CCons> & cons, const std::vector<int> & vars, const std::vector<Sort> & sorts,
                Env & e, std::size_t from, const Cont & k) const {
        auto m = e.mark();
        bool cont = true;
        if (propagate(cons, e)) {
            std::size_t i = from;
            while (i < vars.size() && e.isBound(vars[i])) { ++i; }
            if (i == vars.size()) {
                if (allHold(cons, e)) { cont = k(); }
            } else {
                int v = vars[i];
                Sort s = sorts[static_cast<std::size_t>(v)];
                i64 lo = s == Sort::IntList ? 0 : (s == Sort::Bool ? 0 : lo_);
                i64 hi = s == Sort::IntList ? enumLimit_ - 1 : (s == Sort::Bool ? 1 : hi_);
                for (i64 x = lo; x <= hi && cont; ++x) {
                    auto m2 = e.mark();
                    e.bind(v, x);
                    cont = finish(cons, vars, sorts, e, i + 1, k);
                    e.undo(m2);
                }
            }
        }
        e.undo(m);
        return cont;
    }

    bool solve(const std::vector<CAtom> & atoms, const std::vector<CCons> & cons, const std::vector<int> & vars,
               const std::vector<Sort> & sorts, Env & e, AtomSource & src, const Cont & k, std::size_t i = 0) const {
        if (i == atoms.size()) { return finish(cons, vars, sorts, e, 0, k); }
        // Equalities may ground the inputs of the next atom.
        auto m = e.mark();
        bool cont = true;
        if (propagate(cons, e)) {
            cont = src.enumerate(*this, atoms[i], i, e, [&] { return solve(atoms, cons, vars, sorts, e, src, k, i + 1); });
        }
        e.undo(m);
        return cont;
    }

private:
    const ListCodec & codec_;
    i64 lo_;
    i64 hi_;
    i64 enumLimit_;
};

struct FactStore {
    std::vector<std::vector<Tuple>> tuples;
    std::vector<std::unordered_set<Tuple, TupleHash>> seen;

    void resize(std::size_t n) {
        tuples.resize(n);
        seen.resize(n);
    }
    bool add(int pred, const Tuple & t) {
        auto p = static_cast<std::size_t>(pred);
        if (!seen[p].insert(t).second) { return false; }
        tuples[p].push_back(t);
        return true;
    }
    bool contains(int pred, const Tuple & t) const {
        auto p = static_cast<std::size_t>(pred);
        return p < seen.size() && seen[p].count(t) != 0;
    }
};

// Atoms looked up among stored facts, indexed by the bound argument positions.
class FactSource : public AtomSource {
public:
    explicit FactSource(const FactStore & st, int stride = 1, int offset = 0)
        : st_(st), stride_(stride), offset_(offset) {}

    std::size_t topCandidate() const { return top_; }

    bool enumerate(const Solver & s, const CAtom & a, std::size_t pos, Env & e, const Cont & k) override {
        std::uint64_t mask = 0;
        Tuple key;
        for (std::size_t j = 0; j < a.args.size(); ++j) {
            i64 v = 0;
            Ev r = s.eval(a.args[j], e, v);
            if (r == Ev::Unrepresentable) { return true; }
            if (r == Ev::Ok && j < 64) {
                mask |= std::uint64_t{1} << j;
                key.push_back(v);
            }
        }
        auto p = static_cast<std::size_t>(a.pred);
        if (p >= st_.tuples.size()) { return true; }
        const auto & tuples = st_.tuples[p];
        auto visit = [&](std::size_t ordinal, std::size_t ti) {
            if (pos == 0) {
                if (static_cast<int>(ordinal % static_cast<std::size_t>(stride_)) != offset_) { return true; }
                top_ = ordinal;
            }
            auto m = e.mark();
            bool ok = true;
            for (std::size_t j = 0; j < a.args.size() && ok; ++j) {
                if (j < 64 && (mask >> j & 1)) { continue; }
                ok = s.match(a.args[j], tuples[ti][j], e);
            }
            bool cont = ok ? k() : true;
            e.undo(m);
            return cont;
        };
        if (mask == 0) {
            for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
                if (!visit(ti, ti)) { return false; }
            }
            return true;
        }
        const auto & index = indexFor(a.pred, mask, a.args.size());
        auto it = index.find(key);
        if (it == index.end()) { return true; }
        for (std::size_t n = 0; n < it->second.size(); ++n) {
            if (!visit(n, it->second[n])) { return false; }
        }
        return true;
    }

private:
    using Index = std::unordered_map<Tuple, std::vector<std::size_t>, TupleHash>;

    const Index & indexFor(int pred, std::uint64_t mask, std::size_t arity) {
        auto & slot = cache_[{pred, mask}];
        if (!slot) {
            slot = std::make_unique<Index>();
            const auto & tuples = st_.tuples[static_cast<std::size_t>(pred)];
            for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
                Tuple key;
                for (std::size_t j = 0; j < arity && j < 64; ++j) {
                    if (mask >> j & 1) { key.push_back(tuples[ti][j]); }
                }
                (*slot)[key].push_back(ti);
            }
        }
        return *slot;
    }

    const FactStore & st_;
    int stride_;
    int offset_;
    std::size_t top_ = 0;
    std::map<std::pair<int, std::uint64_t>, std::unique_ptr<Index>> cache_;
};

struct CompiledProgram {
    PredTable preds;
    std::vector<CClause> clauses;
    std::vector<std::vector<std::size_t>> byPred;

    explicit CompiledProgram(const Program & p) {
        declareAll(p, preds);
        for (auto const & c : p.clauses) {
            if (!c.head) { continue; }
            clauses.push_back(compileClause(c, preds));
        }
        byPred.resize(preds.names.size());
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            byPred[static_cast<std::size_t>(clauses[i].head->pred)].push_back(i);
        }
    }

    std::set<int> closure(const std::set<std::string> & roots) const {
        std::set<int> out;
        std::vector<int> work;
        for (auto const & r : roots) {
            auto it = preds.ids.find(r);
            if (it != preds.ids.end()) { work.push_back(it->second); }
        }
        while (!work.empty()) {
            int p = work.back();
            work.pop_back();
            if (!out.insert(p).second) { continue; }
            if (static_cast<std::size_t>(p) >= byPred.size()) { continue; }
            for (auto ci : byPred[static_cast<std::size_t>(p)]) {
                for (auto const & a : clauses[ci].body) { work.push_back(a.pred); }
            }
        }
        return out;
    }
};

std::string renderValue(const ListCodec & codec, Sort s, i64 v) {
    return s == Sort::IntList ? codec.render(v) : std::to_string(v);
}

std::string renderTuple(const ListCodec & codec, const std::vector<Sort> & sorts, const Tuple & t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        Sort so = i < sorts.size() ? sorts[i] : Sort::Int;
        s += (i ? "," : "") + renderValue(codec, so, t[i]);
    }
    return s;
}

// Odometer over per-position domains; returns the tuple with ordinal n.
class TupleSpace {
public:
    TupleSpace(const std::vector<Sort> & sorts, const ListCodec & codec, const Bounds & b, int listLen) {
        for (Sort s : sorts) {
            if (s == Sort::IntList) {
                lo_.push_back(0);
                size_.push_back(codec.limit(listLen));
            } else if (s == Sort::Bool) {
                lo_.push_back(0);
                size_.push_back(2);
            } else {
                lo_.push_back(b.intLo);
                size_.push_back(b.intHi - b.intLo + 1);
            }
        }
    }
    std::uint64_t count() const {
        std::uint64_t n = 1;
        for (i64 s : size_) { n *= static_cast<std::uint64_t>(s); }
        return n;
    }
    Tuple at(std::uint64_t n) const {
        Tuple t(size_.size());
        for (std::size_t i = size_.size(); i-- > 0;) {
            auto s = static_cast<std::uint64_t>(size_[i]);
            t[i] = lo_[i] + static_cast<i64>(n % s);
            n /= s;
        }
        return t;
    }

private:
    std::vector<i64> lo_;
    std::vector<i64> size_;
};

int workers(const Bounds & b) { return std::max(1, b.jobs); }

template <class F>
void runWorkers(int n, F f) {
    if (n <= 1) {
        f(0);
        return;
    }
    std::vector<std::thread> ts;
    for (int w = 0; w < n; ++w) { ts.emplace_back(f, w); }
    for (auto & t : ts) { t.join(); }
}

struct Failure {
    std::uint64_t key1 = UINT64_MAX;
    std::uint64_t key2 = UINT64_MAX;
    std::string text;

    void offer(std::uint64_t a, std::uint64_t b, const std::function<std::string()> & describe) {
        if (a < key1 || (a == key1 && b < key2)) {
            key1 = a;
            key2 = b;
            text = describe();
        }
    }
    bool any() const { return key1 != UINT64_MAX; }
};

Failure earliest(const std::vector<Failure> & fs) {
    Failure best;
    for (auto const & f : fs) {
        if (f.any() && (f.key1 < best.key1 || (f.key1 == best.key1 && f.key2 < best.key2))) { best = f; }
    }
    return best;
}

} // namespace

// ---------------------------------------------------------------------------

Value Value::integer(std::int64_t v) {
    Value x;
    x.num = v;
    return x;
}

Value Value::list(std::vector<std::int64_t> xs) {
    Value x;
    x.isList = true;
    x.items = std::move(xs);
    return x;
}

std::string Value::str() const {
    if (!isList) { return std::to_string(num); }
    std::string s = "[";
    for (std::size_t i = 0; i < items.size(); ++i) { s += (i ? "," : "") + std::to_string(items[i]); }
    return s + "]";
}

struct GroundModel::Impl {
    ListCodec codec;
    PredTable preds;
    FactStore store;
    bool capped = false;
    int iterations = 0;

    Impl(i64 lo, i64 hi) : codec(lo, hi) {}
};

GroundModel::GroundModel(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

bool GroundModel::contains(const std::string & pred, const std::vector<Value> & args) const {
    auto it = impl_->preds.ids.find(pred);
    if (it == impl_->preds.ids.end()) { return false; }
    Tuple t;
    for (auto const & v : args) {
        if (!v.isList) {
            t.push_back(v.num);
            continue;
        }
        auto c = impl_->codec.encode(v.items);
        if (!c) { return false; }
        t.push_back(*c);
    }
    return impl_->store.contains(it->second, t);
}

std::size_t GroundModel::size() const {
    std::size_t n = 0;
    for (auto const & ts : impl_->store.tuples) { n += ts.size(); }
    return n;
}

std::size_t GroundModel::count(const std::string & pred) const {
    auto it = impl_->preds.ids.find(pred);
    if (it == impl_->preds.ids.end()) { return 0; }
    auto p = static_cast<std::size_t>(it->second);
    return p < impl_->store.tuples.size() ? impl_->store.tuples[p].size() : 0;
}

std::vector<std::string> GroundModel::atoms() const {
    std::vector<std::string> out;
    for (std::size_t p = 0; p < impl_->store.tuples.size(); ++p) {
        for (auto const & t : impl_->store.tuples[p]) {
            out.push_back(impl_->preds.names[p] + "(" + renderTuple(impl_->codec, impl_->preds.sorts[p], t) + ")");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool GroundModel::capped() const { return impl_->capped; }
int GroundModel::iterations() const { return impl_->iterations; }

namespace {

std::shared_ptr<GroundModel::Impl> leastModel(const Program & p, const Bounds & b, const std::set<std::string> & only) {
    auto impl = std::make_shared<GroundModel::Impl>(b.intLo, b.intHi);
    CompiledProgram cp(p);
    impl->preds = cp.preds;
    impl->store.resize(cp.preds.names.size());
    std::set<int> wanted;
    if (!only.empty()) { wanted = cp.closure(only); }
    Solver s(impl->codec, b.intLo, b.intHi, b.maxListLen);
    const i64 listLimit = impl->codec.limit(b.maxListLen);

    for (int iter = 1;; ++iter) {
        if (iter > b.fixpointCap) {
            impl->capped = true;
            impl->iterations = b.fixpointCap;
            break;
        }
        std::vector<std::pair<int, Tuple>> fresh;
        FactSource src(impl->store);
        for (auto const & c : cp.clauses) {
            if (!only.empty() && !wanted.count(c.head->pred)) { continue; }
            if (c.body.empty() && iter > 1) { continue; }
            Env e(c.vars.size());
            s.solve(c.body, c.cons, c.allVars, c.vars.sorts, e, src, [&] {
                Tuple t;
                const auto & sorts = cp.preds.sorts[static_cast<std::size_t>(c.head->pred)];
                for (std::size_t j = 0; j < c.head->args.size(); ++j) {
                    i64 v = 0;
                    if (s.eval(c.head->args[j], e, v) != Ev::Ok) { return true; }
                    if (j < sorts.size() && sorts[j] == Sort::IntList && v >= listLimit) { return true; }
                    t.push_back(v);
                }
                if (!impl->store.contains(c.head->pred, t)) { fresh.emplace_back(c.head->pred, std::move(t)); }
                return true;
            });
        }
        std::size_t added = 0;
        for (auto & [pred, t] : fresh) { added += impl->store.add(pred, t) ? 1 : 0; }
        if (added == 0) {
            impl->iterations = iter;
            break;
        }
    }
    return impl;
}

// Resolution-based evaluation of moded predicates, memoised per input tuple.
class TopDown : public AtomSource {
public:
    TopDown(const CompiledProgram & cp, const Program & p, const Solver & s) : cp_(cp), s_(s) {
        modes_.resize(cp.preds.names.size());
        for (std::size_t i = 0; i < cp.preds.names.size(); ++i) {
            const PredicateInfo * info = p.info(cp.preds.names[i]);
            if (info != nullptr) { modes_[i] = info->modes; }
        }
    }

    const std::set<Tuple> & outputs(int pred, const Tuple & ins) {
        auto key = std::make_pair(pred, ins);
        if (auto it = memo_.find(key); it != memo_.end()) { return it->second; }
        if (!active_.insert(key).second) {
            throw OracleError("evaluation of " + cp_.preds.names[static_cast<std::size_t>(pred)] + " does not terminate");
        }
        std::set<Tuple> outs;
        const auto & modes = modes_[static_cast<std::size_t>(pred)];
        auto isIn = [&](std::size_t j) { return j >= modes.size() || modes[j] == Mode::In; };
        if (static_cast<std::size_t>(pred) < cp_.byPred.size()) {
            for (auto ci : cp_.byPred[static_cast<std::size_t>(pred)]) {
                const CClause & c = cp_.clauses[ci];
                Env e(c.vars.size());
                bool ok = true;
                std::size_t in = 0;
                for (std::size_t j = 0; j < c.head->args.size() && ok; ++j) {
                    if (isIn(j)) { ok = s_.match(c.head->args[j], ins[in++], e); }
                }
                if (!ok) { continue; }
                s_.solve(c.body, c.cons, c.allVars, c.vars.sorts, e, *this, [&] {
                    Tuple out;
                    for (std::size_t j = 0; j < c.head->args.size(); ++j) {
                        if (isIn(j)) { continue; }
                        i64 v = 0;
                        if (s_.eval(c.head->args[j], e, v) != Ev::Ok) {
                            throw OracleError("output of " + c.id + " is not representable");
                        }
                        out.push_back(v);
                    }
                    outs.insert(std::move(out));
                    return true;
                });
            }
        }
        active_.erase(key);
        return memo_.emplace(key, std::move(outs)).first->second;
    }

    bool enumerate(const Solver & s, const CAtom & a, std::size_t, Env & e, const Cont & k) override {
        const auto & modes = modes_[static_cast<std::size_t>(a.pred)];
        auto isIn = [&](std::size_t j) { return j >= modes.size() || modes[j] == Mode::In; };
        Tuple ins;
        for (std::size_t j = 0; j < a.args.size(); ++j) {
            if (!isIn(j)) { continue; }
            i64 v = 0;
            Ev r = s.eval(a.args[j], e, v);
            if (r == Ev::Unrepresentable) { return true; }
            if (r == Ev::Unbound) {
                throw OracleError("input of " + cp_.preds.names[static_cast<std::size_t>(a.pred)] + " is not ground");
            }
            ins.push_back(v);
        }
        const std::set<Tuple> & outs = outputs(a.pred, ins);
        for (auto const & out : outs) {
            auto m = e.mark();
            bool ok = true;
            std::size_t o = 0;
            for (std::size_t j = 0; j < a.args.size() && ok; ++j) {
                if (!isIn(j)) { ok = s.match(a.args[j], out[o++], e); }
            }
            bool cont = ok ? k() : true;
            e.undo(m);
            if (!cont) { return false; }
        }
        return true;
    }

private:
    const CompiledProgram & cp_;
    const Solver & s_;
    std::vector<std::vector<Mode>> modes_;
    std::map<std::pair<int, Tuple>, std::set<Tuple>> memo_;
    std::set<std::pair<int, Tuple>> active_;
};

std::set<std::string> predsOf(const std::vector<Atom> & atoms) {
    std::set<std::string> out;
    for (auto const & a : atoms) { out.insert(a.pred); }
    return out;
}

} // namespace

GroundModel boundedLeastModel(const Program & p, const Bounds & b, const std::set<std::string> & only) {
    return GroundModel(leastModel(p, b, only));
}

Verdict checkImplication(const Program & p, const Lemma & lem, const Bounds & b) {
    Bounds wide = b;
    wide.maxListLen = b.maxListLen + 1;
    auto roots = predsOf(lem.premiseAtoms);
    for (auto const & x : predsOf(lem.conclusionAtoms)) { roots.insert(x); }
    auto impl = roots.empty() ? std::make_shared<GroundModel::Impl>(b.intLo, b.intHi) : leastModel(p, wide, roots);

    PredTable preds = impl->preds;
    VarTable vars;
    Compiler comp(preds, vars);
    std::vector<CAtom> prem;
    std::vector<CCons> premCons;
    for (auto const & a : lem.premiseAtoms) { prem.push_back(comp.atom(a)); }
    for (auto const & c : lem.premiseConstraint) { premCons.push_back(comp.constraint(c)); }
    std::vector<int> universal;
    for (int v = 0; v < vars.size(); ++v) { universal.push_back(v); }
    std::vector<CAtom> concl;
    std::vector<CCons> conclCons;
    for (auto const & a : lem.conclusionAtoms) { concl.push_back(comp.atom(a)); }
    for (auto const & c : lem.conclusionConstraint) { conclCons.push_back(comp.constraint(c)); }
    std::vector<int> existential;
    for (int v = static_cast<int>(universal.size()); v < vars.size(); ++v) { existential.push_back(v); }
    // Predicates unknown to the model have no facts.
    impl->store.resize(std::max(impl->store.tuples.size(), preds.names.size()));

    Solver premSolver(impl->codec, b.intLo, b.intHi, b.maxListLen);
    Solver witSolver(impl->codec, b.intLo, b.intHi, wide.maxListLen);
    const i64 listLimit = impl->codec.limit(b.maxListLen);

    int n = prem.empty() ? 1 : workers(b);
    std::vector<Failure> fails(static_cast<std::size_t>(n));
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);
    runWorkers(n, [&](int w) {
        FactSource src(impl->store, n, w);
        FactSource wit(impl->store);
        Env e(vars.size());
        std::uint64_t seq = 0;
        premSolver.solve(prem, premCons, universal, vars.sorts, e, src, [&] {
            for (int v : universal) {
                if (vars.sorts[static_cast<std::size_t>(v)] == Sort::IntList && e.get(v) >= listLimit) { return true; }
            }
            ++counts[static_cast<std::size_t>(w)];
            ++seq;
            bool found = false;
            witSolver.solve(concl, conclCons, existential, vars.sorts, e, wit, [&] {
                found = true;
                return false;
            });
            if (!found) {
                fails[static_cast<std::size_t>(w)].offer(src.topCandidate(), seq, [&] {
                    std::string s;
                    for (int v : universal) {
                        s += (s.empty() ? "" : ", ") + vars.names[static_cast<std::size_t>(v)] + "=" +
                             renderValue(impl->codec, vars.sorts[static_cast<std::size_t>(v)], e.get(v));
                    }
                    return s;
                });
            }
            return true;
        });
    });
    Verdict out;
    for (auto c : counts) { out.checkedInstances += c; }
    Failure f = earliest(fails);
    if (f.any()) {
        out.holds = false;
        out.counterexample = f.text;
    }
    return out;
}

Verdict checkTotalFunctional(const std::string & pred, const Program & p, const Bounds & b) {
    const PredicateInfo * info = p.info(pred);
    if (info == nullptr) { throw OracleError("undeclared predicate " + pred); }
    CompiledProgram cp(p);
    ListCodec codec(b.intLo, b.intHi);
    Solver s(codec, b.intLo, b.intHi, b.maxListLen);
    std::vector<Sort> inSorts;
    std::vector<Sort> outSorts;
    for (std::size_t j = 0; j < info->argSorts.size(); ++j) {
        (info->modes.size() > j && info->modes[j] == Mode::Out ? outSorts : inSorts).push_back(info->argSorts[j]);
    }
    TupleSpace space(inSorts, codec, b, b.maxListLen);
    const int pid = cp.preds.ids.at(pred);
    const std::uint64_t total = space.count();
    int n = workers(b);
    std::vector<Failure> dups(static_cast<std::size_t>(n));
    std::vector<Failure> missing(static_cast<std::size_t>(n));
    std::vector<std::string> errors(static_cast<std::size_t>(n));
    runWorkers(n, [&](int w) {
        TopDown td(cp, p, s);
        try {
            for (std::uint64_t i = static_cast<std::uint64_t>(w); i < total; i += static_cast<std::uint64_t>(n)) {
                Tuple ins = space.at(i);
                const auto & outs = td.outputs(pid, ins);
                auto describe = [&] {
                    std::string txt = pred + "(" + renderTuple(codec, inSorts, ins) + ") ";
                    if (outs.empty()) { return txt + "has no output"; }
                    txt += "has outputs";
                    for (auto const & o : outs) { txt += " (" + renderTuple(codec, outSorts, o) + ")"; }
                    return txt;
                };
                if (outs.size() > 1) { dups[static_cast<std::size_t>(w)].offer(i, 0, describe); }
                if (outs.empty()) { missing[static_cast<std::size_t>(w)].offer(i, 0, describe); }
            }
        } catch (const OracleError & ex) {
            errors[static_cast<std::size_t>(w)] = ex.what();
        }
    });
    Verdict out;
    out.checkedInstances = total;
    for (auto const & err : errors) {
        if (!err.empty()) {
            out.holds = false;
            out.counterexample = err;
            return out;
        }
    }
    Failure f = earliest(dups);
    if (!f.any()) { f = earliest(missing); }
    if (f.any()) {
        out.holds = false;
        out.counterexample = f.text;
    }
    return out;
}

Verdict validateModel(const Program & p, const Model & m, const Bounds & b, const std::vector<std::string> & functional) {
    PredTable preds;
    declareAll(p, preds);
    ListCodec codec(b.intLo, b.intHi);
    Solver s(codec, b.intLo, b.intHi, 0);
    Verdict out;
    auto argsOf = [&](const CAtom & a, const Env & e) {
        std::vector<i64> vs;
        for (auto const & t : a.args) {
            i64 v = 0;
            s.eval(t, e, v);
            vs.push_back(v);
        }
        return vs;
    };
    for (auto const & cl : p.clauses) {
        CClause c = compileClause(cl, preds);
        for (Sort so : c.vars.sorts) {
            if (so == Sort::IntList) { throw OracleError("clause " + cl.id + " has list variables"); }
        }
        TupleSpace space(c.vars.sorts, codec, b, 0);
        const std::uint64_t total = space.count();
        for (std::uint64_t i = 0; i < total; ++i) {
            Tuple t = space.at(i);
            Env e(c.vars.size());
            for (int v = 0; v < c.vars.size(); ++v) { e.bind(v, t[static_cast<std::size_t>(v)]); }
            ++out.checkedInstances;
            if (!s.allHold(c.cons, e)) { continue; }
            bool body = std::all_of(c.body.begin(), c.body.end(), [&](const CAtom & a) {
                return m.holds(preds.names[static_cast<std::size_t>(a.pred)], argsOf(a, e));
            });
            if (!body) { continue; }
            if (c.head && m.holds(preds.names[static_cast<std::size_t>(c.head->pred)], argsOf(*c.head, e))) { continue; }
            std::string txt = "clause " + (cl.id.empty() ? cl.str() : cl.id) + " fails at";
            for (int v = 0; v < c.vars.size(); ++v) {
                txt += (v ? ", " : " ") + c.vars.names[static_cast<std::size_t>(v)] + "=" + std::to_string(t[static_cast<std::size_t>(v)]);
            }
            out.holds = false;
            out.counterexample = txt;
            return out;
        }
    }
    for (auto const & name : functional) {
        const PredicateInfo * info = p.info(name);
        if (info == nullptr || info->argSorts.empty()) { continue; }
        const std::size_t arity = info->argSorts.size();
        std::vector<Sort> ins(info->argSorts.begin(), info->argSorts.end() - 1);
        TupleSpace space(ins, codec, b, 0);
        const i64 span = static_cast<i64>(arity);
        for (std::uint64_t i = 0; i < space.count(); ++i) {
            Tuple t = space.at(i);
            std::vector<i64> found;
            for (i64 o = b.intLo * span; o <= b.intHi * span; ++o) {
                std::vector<i64> args = t;
                args.push_back(o);
                ++out.checkedInstances;
                if (m.holds(name, args)) { found.push_back(o); }
            }
            if (found.size() > 1) {
                out.holds = false;
                out.counterexample = name + "(" + renderTuple(codec, ins, t) + ",_) has outputs " +
                                     std::to_string(found[0]) + " and " + std::to_string(found[1]);
                return out;
            }
        }
    }
    return out;
}

Verdict checkComplement(const NegSpec & spec, const Program & p, const Bounds & b) {
    const PredicateInfo * base = p.info(spec.basePred);
    if (base == nullptr) { throw OracleError("undeclared predicate " + spec.basePred); }
    Bounds wide = b;
    wide.maxListLen = b.maxListLen + 1;
    auto neg = leastModel(p, b, {spec.newName});
    auto wit = leastModel(p, wide, {spec.basePred});
    std::unordered_set<Tuple, TupleHash> projected;
    auto bid = wit->preds.ids.find(spec.basePred);
    if (bid != wit->preds.ids.end()) {
        for (auto const & t : wit->store.tuples[static_cast<std::size_t>(bid->second)]) {
            Tuple v;
            for (auto i : spec.visible) { v.push_back(t[i]); }
            projected.insert(std::move(v));
        }
    }
    auto nid = neg->preds.ids.find(spec.newName);
    std::vector<Sort> sorts;
    for (auto i : spec.visible) { sorts.push_back(base->argSorts.at(i)); }
    TupleSpace space(sorts, neg->codec, b, b.maxListLen);
    Verdict out;
    out.checkedInstances = space.count();
    for (std::uint64_t i = 0; i < space.count(); ++i) {
        Tuple t = space.at(i);
        bool negHolds = nid != neg->preds.ids.end() && neg->store.contains(nid->second, t);
        bool witness = projected.count(t) != 0;
        if (negHolds != witness) { continue; }
        out.holds = false;
        std::string args = renderTuple(neg->codec, sorts, t);
        out.counterexample = negHolds ? spec.newName + "(" + args + ") holds although " + spec.basePred + " has a witness"
                                      : spec.newName + "(" + args + ") fails although " + spec.basePred + " has no witness";
        return out;
    }
    return out;
}

} // namespace chcelim
