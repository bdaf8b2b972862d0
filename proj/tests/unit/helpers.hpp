/*
 * SPDX-License-Identifier: MIT
 */

#ifndef CHCELIM_TEST_HELPERS_HPP
#define CHCELIM_TEST_HELPERS_HPP

#include "chcelim/parser.hpp"
#include "chcelim/transform.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>
#include <string>

namespace testing_helpers {

inline std::string readFixture(const std::string & name) {
    std::ifstream in(std::string(CHCELIM_FIXTURES) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline chcelim::Program loadFixture(const std::string & name) {
    return chcelim::parseProgramOrThrow(readFixture(name), name);
}

/// Fresh directory below the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("chcelim-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir & operator=(const TempDir &) = delete;
    const std::filesystem::path & path() const { return path_; }
    std::string file(const std::string & name, const std::string & contents) const {
        auto p = path_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }

private:
    std::filesystem::path path_;
};

inline const chcelim::Clause & clauseById(const chcelim::Program & p, const std::string & id) {
    for (const auto & c : p.clauses)
        if (c.id == id) return c;
    throw std::out_of_range("no clause " + id);
}

/// Lemma written as the queries `<id>.premise` and `<id>.conclusion`; the
/// existentials are the conclusion's variables not in the premise.
inline chcelim::Lemma lemmaFromFixture(const chcelim::Program & p, const std::string & id) {
    const auto & pre = clauseById(p, id + ".premise");
    const auto & con = clauseById(p, id + ".conclusion");
    chcelim::Lemma l;
    l.id = id;
    l.premiseAtoms = pre.body;
    l.premiseConstraint = pre.constraint;
    l.conclusionAtoms = con.body;
    l.conclusionConstraint = con.constraint;
    auto preVars = pre.freeVars();
    for (const auto & v : con.freeVars()) {
        bool shared = std::any_of(preVars.begin(), preVars.end(), [&](const auto & w) { return w.first == v.first; });
        if (!shared) l.existentials.push_back(v);
    }
    return l;
}

} // namespace testing_helpers

#endif
