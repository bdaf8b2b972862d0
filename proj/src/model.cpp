/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/model.hpp"

#include <cctype>

namespace chcelim {

Formula Formula::constant(bool b) {
    Formula f;
    f.op_ = b ? Op::True : Op::False;
    return f;
}

Formula Formula::num(std::int64_t v) {
    Formula f;
    f.op_ = Op::Num;
    f.value_ = v;
    return f;
}

Formula Formula::var(std::string name) {
    Formula f;
    f.op_ = Op::Var;
    f.name_ = std::move(name);
    return f;
}

Formula Formula::make(Op op, std::vector<Formula> args) {
    Formula f;
    f.op_ = op;
    f.args_ = std::move(args);
    return f;
}

namespace {

std::int64_t euclidDiv(std::int64_t a, std::int64_t b) {
    if (b == 0) { throw ModelError("division by zero in model formula"); }
    std::int64_t q = a / b;
    std::int64_t r = a % b;
    if (r < 0) { q = b > 0 ? q - 1 : q + 1; }
    return q;
}

} // namespace

std::int64_t Formula::eval(const Env & env) const {
    switch (op_) {
        case Op::True: return 1;
        case Op::False: return 0;
        case Op::Num: return value_;
        case Op::Var: {
            auto it = env.find(name_);
            if (it == env.end()) { throw ModelError("unbound variable " + name_ + " in model formula"); }
            return it->second;
        }
        case Op::And:
            for (auto const & a : args_) {
                if (!a.holds(env)) { return 0; }
            }
            return 1;
        case Op::Or:
            for (auto const & a : args_) {
                if (a.holds(env)) { return 1; }
            }
            return 0;
        case Op::Not: return args_[0].holds(env) ? 0 : 1;
        case Op::Implies: {
            // right associative: a => b => c  ==  a => (b => c)
            for (std::size_t i = 0; i + 1 < args_.size(); ++i) {
                if (!args_[i].holds(env)) { return 1; }
            }
            return args_.back().holds(env) ? 1 : 0;
        }
        case Op::Ite: return args_[0].holds(env) ? args_[1].eval(env) : args_[2].eval(env);
        case Op::Eq: {
            std::int64_t v = args_[0].eval(env);
            for (std::size_t i = 1; i < args_.size(); ++i) {
                if (args_[i].eval(env) != v) { return 0; }
            }
            return 1;
        }
        case Op::Distinct: {
            std::vector<std::int64_t> vs;
            for (auto const & a : args_) { vs.push_back(a.eval(env)); }
            for (std::size_t i = 0; i < vs.size(); ++i) {
                for (std::size_t j = i + 1; j < vs.size(); ++j) {
                    if (vs[i] == vs[j]) { return 0; }
                }
            }
            return 1;
        }
        case Op::Le:
        case Op::Lt:
        case Op::Ge:
        case Op::Gt: {
            for (std::size_t i = 0; i + 1 < args_.size(); ++i) {
                std::int64_t a = args_[i].eval(env);
                std::int64_t b = args_[i + 1].eval(env);
                bool ok = op_ == Op::Le ? a <= b : op_ == Op::Lt ? a < b : op_ == Op::Ge ? a >= b : a > b;
                if (!ok) { return 0; }
            }
            return 1;
        }
        case Op::Add: {
            std::int64_t s = 0;
            for (auto const & a : args_) { s += a.eval(env); }
            return s;
        }
        case Op::Sub: {
            std::int64_t s = args_[0].eval(env);
            for (std::size_t i = 1; i < args_.size(); ++i) { s -= args_[i].eval(env); }
            return s;
        }
        case Op::Mul: {
            std::int64_t s = 1;
            for (auto const & a : args_) { s *= a.eval(env); }
            return s;
        }
        case Op::Neg: return -args_[0].eval(env);
        case Op::Div: return euclidDiv(args_[0].eval(env), args_[1].eval(env));
        case Op::Mod: {
            std::int64_t a = args_[0].eval(env);
            std::int64_t b = args_[1].eval(env);
            return a - b * euclidDiv(a, b);
        }
        case Op::Abs: {
            std::int64_t a = args_[0].eval(env);
            return a < 0 ? -a : a;
        }
    }
    return 0;
}

std::string Formula::str() const {
    auto joined = [&](const char * sep, bool paren) {
        std::string out;
        for (std::size_t i = 0; i < args_.size(); ++i) {
            if (i > 0) { out += sep; }
            bool wrap = paren && !args_[i].args_.empty() && args_[i].op_ != Op::Not;
            out += wrap ? "(" + args_[i].str() + ")" : args_[i].str();
        }
        return out;
    };
    auto rel = [&](const char * sym) {
        std::string out;
        for (std::size_t i = 0; i + 1 < args_.size(); ++i) {
            if (i > 0) { out += " & "; }
            out += args_[i].str() + sym + args_[i + 1].str();
        }
        return out;
    };
    switch (op_) {
        case Op::True: return "true";
        case Op::False: return "false";
        case Op::Num: return std::to_string(value_);
        case Op::Var: return name_;
        case Op::And: return args_.empty() ? "true" : joined(" & ", true);
        case Op::Or: return args_.empty() ? "false" : joined(" | ", true);
        case Op::Not: {
            bool wrap = !args_[0].args_.empty();
            return "~" + (wrap ? "(" + args_[0].str() + ")" : args_[0].str());
        }
        case Op::Implies: return joined(" -> ", true);
        case Op::Ite: return "ite(" + args_[0].str() + ", " + args_[1].str() + ", " + args_[2].str() + ")";
        case Op::Eq: return rel("=");
        case Op::Distinct: return rel("=\\=");
        case Op::Le: return rel("=<");
        case Op::Lt: return rel("<");
        case Op::Ge: return rel(">=");
        case Op::Gt: return rel(">");
        case Op::Add: return joined("+", true);
        case Op::Sub: return joined("-", true);
        case Op::Mul: return joined("*", true);
        case Op::Neg: return "-" + (args_[0].args_.empty() ? args_[0].str() : "(" + args_[0].str() + ")");
        case Op::Div: return joined(" div ", true);
        case Op::Mod: return joined(" mod ", true);
        case Op::Abs: return "abs(" + args_[0].str() + ")";
    }
    return "?";
}

bool Model::holds(const std::string & pred, const std::vector<std::int64_t> & args) const {
    auto it = defs.find(pred);
    if (it == defs.end()) { return false; }
    const PredicateModel & pm = it->second;
    if (pm.params.size() != args.size()) { throw ModelError("arity mismatch evaluating " + pred); }
    Formula::Env env;
    for (std::size_t i = 0; i < args.size(); ++i) { env[pm.params[i]] = args[i]; }
    return pm.body.holds(env);
}

std::string Model::str() const {
    std::string out;
    for (auto const & [name, pm] : defs) {
        out += name;
        if (!pm.params.empty()) {
            out += "(";
            for (std::size_t i = 0; i < pm.params.size(); ++i) {
                if (i > 0) { out += ","; }
                out += pm.params[i];
            }
            out += ")";
        }
        out += " := " + pm.body.str() + "\n";
    }
    return out;
}

namespace {

bool isNumeral(const std::string & s) {
    if (s.empty()) { return false; }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) { return false; }
    }
    return true;
}

} // namespace

Formula formulaFromSExpr(const SExpr & e, const std::map<std::string, Formula> & scope) {
    if (!e.isList) {
        if (e.atom == "true") { return Formula::constant(true); }
        if (e.atom == "false") { return Formula::constant(false); }
        if (isNumeral(e.atom)) {
            try {
                return Formula::num(std::stoll(e.atom));
            } catch (const std::out_of_range &) {
                throw ModelError("numeral out of range: " + e.atom);
            }
        }
        auto it = scope.find(e.atom);
        if (it != scope.end()) { return it->second; }
        return Formula::var(e.atom);
    }
    if (e.items.empty() || e.items[0].isList) { throw ModelError("unsupported model term: " + e.str()); }
    const std::string & head = e.items[0].atom;
    if (head == "let") {
        if (e.items.size() != 3 || !e.items[1].isList) { throw ModelError("malformed let: " + e.str()); }
        auto inner = scope;
        for (auto const & b : e.items[1].items) {
            if (!b.isList || b.items.size() != 2 || b.items[0].isList) {
                throw ModelError("malformed let binding: " + b.str());
            }
            // parallel let: bound terms see the outer scope
            inner[b.items[0].atom] = formulaFromSExpr(b.items[1], scope);
        }
        return formulaFromSExpr(e.items[2], inner);
    }
    std::vector<Formula> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) { args.push_back(formulaFromSExpr(e.items[i], scope)); }
    using Op = Formula::Op;
    static const std::map<std::string, Op> ops = {
        {"and", Op::And}, {"or", Op::Or},   {"not", Op::Not}, {"=>", Op::Implies}, {"ite", Op::Ite},
        {"=", Op::Eq},    {"distinct", Op::Distinct},          {"<=", Op::Le},      {"<", Op::Lt},
        {">=", Op::Ge},   {">", Op::Gt},    {"+", Op::Add},   {"-", Op::Sub},      {"*", Op::Mul},
        {"div", Op::Div}, {"mod", Op::Mod}, {"abs", Op::Abs}};
    auto it = ops.find(head);
    if (it == ops.end()) { throw ModelError("unsupported operator '" + head + "' in " + e.str()); }
    Op op = it->second;
    std::size_t n = args.size();
    bool arityOk = true;
    switch (op) {
        case Op::Not:
        case Op::Abs: arityOk = n == 1; break;
        case Op::Ite: arityOk = n == 3; break;
        case Op::Div:
        case Op::Mod: arityOk = n == 2; break;
        case Op::Implies:
        case Op::Eq:
        case Op::Distinct:
        case Op::Le:
        case Op::Lt:
        case Op::Ge:
        case Op::Gt: arityOk = n >= 2; break;
        case Op::Sub: arityOk = n >= 1; break;
        case Op::Add:
        case Op::Mul: arityOk = n >= 1; break;
        default: break;
    }
    if (!arityOk) { throw ModelError("wrong number of arguments in " + e.str()); }
    if (op == Op::Sub && n == 1) { return Formula::make(Op::Neg, std::move(args)); }
    return Formula::make(op, std::move(args));
}

namespace {

void collectDefineFuns(const SExpr & e, std::vector<const SExpr *> & out) {
    if (!e.isList) { return; }
    if (!e.items.empty() && e.items[0].isAtom("define-fun")) {
        out.push_back(&e);
        return;
    }
    for (auto const & x : e.items) { collectDefineFuns(x, out); }
}

} // namespace

Model parseModel(std::string_view text, const Program & p) {
    std::vector<SExpr> top;
    try {
        top = parseSExprs(text);
    } catch (const SExprError & err) {
        throw ModelError(std::string("unparseable model: ") + err.what());
    }
    std::vector<const SExpr *> defs;
    for (auto const & e : top) {
        if (!e.isList) {
            if (e.atom == "sat" || e.atom == "model") { continue; }
            throw ModelError("unexpected token in model: " + e.atom);
        }
        collectDefineFuns(e, defs);
    }
    Model m;
    for (const SExpr * d : defs) {
        if (d->items.size() != 5 || d->items[1].isList || !d->items[2].isList) {
            throw ModelError("malformed define-fun: " + d->str());
        }
        const std::string & name = d->items[1].atom;
        const PredicateInfo * pi = p.info(name);
        if (!pi) { throw ModelError("model defines unknown predicate " + name); }
        PredicateModel pm;
        for (auto const & prm : d->items[2].items) {
            if (!prm.isList || prm.items.size() != 2 || prm.items[0].isList) {
                throw ModelError("malformed parameter in " + name);
            }
            const std::string & sort = prm.items[1].str();
            if (sort != "Int" && sort != "Bool") {
                throw ModelError("list-sorted parameter in model of " + name);
            }
            pm.params.push_back(prm.items[0].atom);
        }
        if (pm.params.size() != pi->arity()) {
            throw ModelError("model of " + name + " has " + std::to_string(pm.params.size()) + " parameters, expected " +
                             std::to_string(pi->arity()));
        }
        pm.body = formulaFromSExpr(d->items[4]);
        m.defs[name] = std::move(pm);
    }
    return m;
}

Model allFalseModel(const Program & p) {
    Model m;
    for (auto const & [name, info] : p.predicates) {
        PredicateModel pm;
        for (std::size_t i = 0; i < info.arity(); ++i) { pm.params.push_back("x" + std::to_string(i)); }
        pm.body = Formula::constant(false);
        m.defs[name] = std::move(pm);
    }
    return m;
}

} // namespace chcelim
