/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/program.hpp"

#include <set>
#include <stdexcept>

namespace chcelim {

void Program::declare(PredicateInfo info) {
    if (info.modes.empty()) { info.modes.assign(info.argSorts.size(), Mode::In); }
    auto name = info.name;
    if (predicates.count(name) == 0) { declOrder.push_back(name); }
    predicates[name] = std::move(info);
}

const PredicateInfo * Program::info(const std::string & pred) const {
    auto it = predicates.find(pred);
    return it == predicates.end() ? nullptr : &it->second;
}

std::vector<const Clause *> Program::definingClauses(const std::string & pred) const {
    std::vector<const Clause *> out;
    for (auto const & c : clauses) {
        if (c.head && c.head->pred == pred) { out.push_back(&c); }
    }
    return out;
}

std::vector<Clause> Program::queries() const {
    std::vector<Clause> out;
    for (auto const & c : clauses) {
        if (c.isQuery()) { out.push_back(c); }
    }
    return out;
}

std::vector<Clause> Program::nonQueries() const {
    std::vector<Clause> out;
    for (auto const & c : clauses) {
        if (!c.isQuery()) { out.push_back(c); }
    }
    return out;
}

namespace {

bool termUsesList(const Term & t) { return t.sort() == Sort::IntList; }

} // namespace

bool Program::usesLists() const {
    for (auto const & c : clauses) {
        if (!c.hasBasicTypes()) { return true; }
        auto atomUses = [](const Atom & a) {
            for (auto const & t : a.args) {
                if (termUsesList(t)) { return true; }
            }
            return false;
        };
        if (c.head && atomUses(*c.head)) { return true; }
        for (auto const & a : c.body) {
            if (atomUses(a)) { return true; }
        }
        for (auto const & k : c.constraint) {
            if (k.isList()) { return true; }
        }
    }
    return false;
}

void Program::check() const {
    std::set<std::string> ids;
    auto checkAtom = [&](const Atom & a, const Clause & c) {
        const PredicateInfo * pi = info(a.pred);
        if (!pi) { throw std::invalid_argument("clause " + c.id + ": undeclared predicate " + a.pred); }
        if (pi->arity() != a.args.size()) {
            throw std::invalid_argument("clause " + c.id + ": arity mismatch for " + a.pred);
        }
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (a.args[i].sort() != pi->argSorts[i]) {
                throw std::invalid_argument("clause " + c.id + ": sort mismatch in " + a.str());
            }
        }
    };
    for (auto const & c : clauses) {
        if (!ids.insert(c.id).second) { throw std::invalid_argument("duplicate clause id " + c.id); }
        if (c.head) { checkAtom(*c.head, c); }
        for (auto const & a : c.body) { checkAtom(a, c); }
    }
}

} // namespace chcelim
