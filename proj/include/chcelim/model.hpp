/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_MODEL_HPP
#define CHCELIM_MODEL_HPP

#include "chcelim/program.hpp"
#include "chcelim/sexpr.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chcelim {

/// Quantifier-free formula or integer term over named parameters, as found in
/// solver models. Booleans evaluate to 0/1.
class Formula {
public:
    enum class Op {
        True, False, Num, Var,
        And, Or, Not, Implies, Ite,
        Eq, Distinct, Le, Lt, Ge, Gt,
        Add, Sub, Mul, Neg, Div, Mod, Abs
    };

    static Formula constant(bool b);
    static Formula num(std::int64_t v);
    static Formula var(std::string name);
    static Formula make(Op op, std::vector<Formula> args);

    Op op() const { return op_; }
    const std::vector<Formula> & args() const { return args_; }
    const std::string & name() const { return name_; }
    std::int64_t value() const { return value_; }

    using Env = std::map<std::string, std::int64_t>;
    std::int64_t eval(const Env & env) const;
    bool holds(const Env & env) const { return eval(env) != 0; }

    /// Infix rendering, e.g. `M=N`, `H+Na=N1`, `true`.
    std::string str() const;

private:
    Op op_ = Op::True;
    std::string name_;
    std::int64_t value_ = 0;
    std::vector<Formula> args_;
};

struct PredicateModel {
    std::vector<std::string> params;
    Formula body;
};

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Interpretation of each predicate by a formula over its parameters.
/// Predicates without an entry are interpreted as false.
struct Model {
    std::map<std::string, PredicateModel> defs;

    bool holds(const std::string & pred, const std::vector<std::int64_t> & args) const;
    /// One `pred(params) := formula` line per predicate.
    std::string str() const;
};

/// Parses the `define-fun` block(s) of a solver answer. Leading `sat`, a
/// `(model ...)` wrapper and let-bindings are accepted. Throws ModelError on
/// unsupported operators or predicates not declared in `p`.
Model parseModel(std::string_view text, const Program & p);

/// Converts one SMT-LIB term; `scope` holds let-bound names.
Formula formulaFromSExpr(const SExpr & e, const std::map<std::string, Formula> & scope = {});

Model allFalseModel(const Program & p);

} // namespace chcelim

#endif
