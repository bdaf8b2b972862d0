/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/model.hpp"
#include "chcelim/smt2.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace chcelim;
using testing_helpers::loadFixture;

namespace {

bool haveZ3() { return std::system("command -v z3 > /dev/null 2>&1") == 0; }

/// Runs z3 in parse-only mode; returns its combined output.
std::string z3ParseOnly(const std::string & script) {
    auto path = std::filesystem::temp_directory_path() / ("chcelim_parse_" + std::to_string(::getpid()) + ".smt2");
    {
        std::ofstream out(path);
        out << script;
    }
    std::string cmd = "z3 -smt2 parse_only=true " + path.string() + " 2>&1";
    std::string output;
    if (FILE * f = ::popen(cmd.c_str(), "r")) {
        char buf[512];
        while (std::fgets(buf, sizeof buf, f)) { output += buf; }
        ::pclose(f);
    }
    std::filesystem::remove(path);
    return output;
}

} // namespace

TEST(Smt2, FactHasTrivialAntecedent) {
    Program p = loadFixture("insertion_sort.chc");
    std::string s = emitSmt2(p);
    EXPECT_NE(s.find("(assert (=> true (sumlist nil 0)))"), std::string::npos);
    EXPECT_NE(s.find("(declare-datatypes ((IntList 0))"), std::string::npos);
}

TEST(Smt2, QueryImpliesFalse) {
    Program p = loadFixture("insertion_sort_final.chc");
    std::string s = emitSmt2(p);
    EXPECT_NE(s.find("(=> (and (not (= M N)) (new1 M N)) false)"), std::string::npos);
    EXPECT_EQ(s.find("declare-datatypes"), std::string::npos);
}

TEST(Smt2, OneAssertPerClauseInOrder) {
    Program p = loadFixture("rotate.chc");
    std::string s = emitSmt2(p);
    std::size_t count = 0;
    std::size_t last = 0;
    for (auto const & c : p.clauses) {
        auto at = s.find("; clause " + c.id + "\n", last);
        ASSERT_NE(at, std::string::npos);
        last = at;
    }
    for (std::size_t at = s.find("(assert"); at != std::string::npos; at = s.find("(assert", at + 1)) { ++count; }
    EXPECT_EQ(count, p.clauses.size());
}

TEST(Smt2, ReservedNamesAreQuoted) {
    EXPECT_EQ(smtSymbol("and"), "|and|");
    EXPECT_EQ(smtSymbol("new1"), "new1");
}

TEST(Smt2, ReferenceSolverAcceptsFixtures) {
    if (!haveZ3()) { GTEST_SKIP() << "z3 not on PATH"; }
    for (auto name : {"insertion_sort.chc", "rotate.chc", "insertion_sort_final.chc"}) {
        std::string out = z3ParseOnly(emitSmt2(loadFixture(name)));
        EXPECT_EQ(out.find("error"), std::string::npos) << name << ": " << out;
    }
}

TEST(Model, ParsesSolverOutputWithLets) {
    Program p = loadFixture("insertion_sort_final.chc");
    const char * text = R"(sat
(
  (define-fun new1 ((x!0 Int) (x!1 Int)) Bool
    (let ((a!1 (not (>= (+ x!0 (* (- 1) x!1)) 1)))
          (a!2 (not (<= (+ x!0 (* (- 1) x!1)) (- 1)))))
      (and a!1 a!2)))
  (define-fun new2 ((x!0 Int)) Bool
    true)
))";
    Model m = parseModel(text, p);
    EXPECT_TRUE(m.holds("new1", {3, 3}));
    EXPECT_FALSE(m.holds("new1", {3, 4}));
    EXPECT_TRUE(m.holds("new2", {-7}));
    EXPECT_FALSE(m.holds("diff", {0, 0, 0}));
}

TEST(Model, ReferenceModelFormulas) {
    Program p = loadFixture("insertion_sort_final.chc");
    Model m = parseModel("((define-fun new1 ((M Int) (N Int)) Bool (= M N))"
                         " (define-fun diff ((H Int) (Na Int) (N1 Int)) Bool (= (+ H Na) N1))"
                         " (define-fun new2 ((N Int)) Bool true))",
                         p);
    EXPECT_EQ(m.defs.at("new1").body.str(), "M=N");
    EXPECT_EQ(m.defs.at("diff").body.str(), "H+Na=N1");
    EXPECT_EQ(m.defs.at("new2").body.str(), "true");
    EXPECT_TRUE(m.holds("diff", {2, 3, 5}));
}

TEST(Model, RejectsUnknownPredicatesAndOperators) {
    Program p = loadFixture("insertion_sort_final.chc");
    EXPECT_THROW(parseModel("((define-fun zzz ((x Int)) Bool true))", p), ModelError);
    EXPECT_THROW(parseModel("((define-fun new2 ((x Int)) Bool (bvand x x)))", p), ModelError);
    EXPECT_THROW(parseModel("((define-fun new2 ((x Int)) Bool true)", p), ModelError);
}
