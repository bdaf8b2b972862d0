/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_ORACLE_HPP
#define CHCELIM_ORACLE_HPP

#include "chcelim/model.hpp"
#include "chcelim/negation.hpp"
#include "chcelim/program.hpp"
#include "chcelim/transform.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace chcelim {

struct Bounds {
    int maxListLen = 4;
    std::int64_t intLo = -2;
    std::int64_t intHi = 2;
    /// Iteration limit of the bottom-up fixpoint.
    int fixpointCap = 64;
    /// Worker threads for enumeration; results do not depend on it.
    int jobs = 1;
};

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ground integer or integer list.
struct Value {
    bool isList = false;
    std::int64_t num = 0;
    std::vector<std::int64_t> items;

    static Value integer(std::int64_t v);
    static Value list(std::vector<std::int64_t> xs);
    std::string str() const;
    auto operator<=>(const Value &) const = default;
};

/// Ground atoms of a bounded least model. Lists are limited to the model's
/// length bound with elements in the integer range; integers are unbounded.
class GroundModel {
public:
    struct Impl;
    explicit GroundModel(std::shared_ptr<Impl> impl);

    bool contains(const std::string & pred, const std::vector<Value> & args) const;
    std::size_t size() const;
    std::size_t count(const std::string & pred) const;
    /// Sorted renderings such as `sumlist([1,1],2)`.
    std::vector<std::string> atoms() const;
    /// The iteration cap was reached before a fixpoint.
    bool capped() const;
    int iterations() const;
    const Impl & impl() const { return *impl_; }

private:
    std::shared_ptr<Impl> impl_;
};

/// Least fixpoint of the immediate-consequence operator over ground terms
/// within `b`; constraints are evaluated exactly. Queries are ignored. When
/// `only` is non-empty, just those predicates and their dependencies are
/// computed.
GroundModel boundedLeastModel(const Program & p, const Bounds & b, const std::set<std::string> & only = {});

struct Verdict {
    bool holds = true;
    std::optional<std::string> counterexample;
    std::uint64_t checkedInstances = 0;
};

/// Every instance of the premise whose list variables are within the bound
/// must have a witness for the conclusion with lists one element longer.
Verdict checkImplication(const Program & p, const Lemma & lem, const Bounds & b);

/// For every input tuple within `b`, evaluation of `pred` by resolution
/// yields exactly one output tuple. Duplicated outputs are reported ahead of
/// missing ones.
Verdict checkTotalFunctional(const std::string & pred, const Program & p, const Bounds & b);

/// Every clause of the list-free program `p` holds under `m` for all integer
/// instantiations in the range; each predicate in `functional` (inputs all
/// but the last argument) must be functional under `m`.
Verdict validateModel(const Program & p, const Model & m, const Bounds & b,
                      const std::vector<std::string> & functional = {});

/// For every visible tuple within `b`: spec.newName holds in the bounded
/// least model iff no hidden arguments make spec.basePred hold, searching
/// witnesses with lists one element longer.
Verdict checkComplement(const NegSpec & spec, const Program & p, const Bounds & b);

} // namespace chcelim

#endif
