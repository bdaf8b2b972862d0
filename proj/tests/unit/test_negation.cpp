/*
 * SPDX-License-Identifier: MIT
 */

#include "helpers.hpp"

#include "chcelim/compare.hpp"
#include "chcelim/negation.hpp"
#include "chcelim/oracle.hpp"

#include <gtest/gtest.h>

using namespace chcelim;
using testing_helpers::loadFixture;

namespace {

NegSpec second() { return {"append", {0, 2}, {1}, "not_exists_2nd_append"}; }
NegSpec first() { return {"append", {1, 2}, {0}, "not_exists_1st_append"}; }

Program withNegation(const NegSpec & spec) {
    Program p = loadFixture("rotate.chc");
    p.declare(notExistsInfo(spec, p));
    for (auto & c : eliminateNegation(spec, p)) p.clauses.push_back(c);
    return p;
}

} // namespace

TEST(Negation, NamesFollowHiddenOrdinals) {
    EXPECT_EQ(notExistsName("append", {1}), "not_exists_2nd_append");
    EXPECT_EQ(notExistsName("append", {0}), "not_exists_1st_append");
    EXPECT_EQ(notExistsName("p", {0, 2}), "not_exists_1st_3rd_p");
}

TEST(Negation, SpecIsRecoveredFromName) {
    Program p = loadFixture("rotate.chc");
    auto spec = negSpecFromName("not_exists_2nd_append", p);
    ASSERT_TRUE(spec.has_value());
    EXPECT_EQ(spec->basePred, "append");
    EXPECT_EQ(spec->visible, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(spec->hidden, (std::vector<std::size_t>{1}));
    EXPECT_FALSE(negSpecFromName("not_exists_4th_append", p).has_value());
    EXPECT_FALSE(negSpecFromName("not_exists_2nd_nothing", p).has_value());
    EXPECT_FALSE(negSpecFromName("new1", p).has_value());
}

TEST(Negation, SecondArgumentOfAppendGivesExpectedClauses) {
    Program p = loadFixture("rotate.chc");
    p.declare(notExistsInfo(second(), p));
    auto got = eliminateNegation(second(), p);
    auto expected = parseClauses("not_exists_2nd_append([X|Xs],[]).\n"
                                 "not_exists_2nd_append([X|Xs],[Y|Ys]) :- X=\\=Y.\n"
                                 "not_exists_2nd_append([X|Xs],[Y|Ys]) :- X=Y, not_exists_2nd_append(Xs,Ys).\n",
                                 p);
    EXPECT_TRUE(clauseSetsEquivalent(got, expected, [](const std::string &) { return false; }).has_value());
}

TEST(Negation, DeclarationHasVisibleSortsAsInputs) {
    Program p = loadFixture("rotate.chc");
    PredicateInfo info = notExistsInfo(second(), p);
    EXPECT_EQ(info.name, "not_exists_2nd_append");
    EXPECT_EQ(info.argSorts, (std::vector<Sort>{Sort::IntList, Sort::IntList}));
    EXPECT_EQ(info.modes, (std::vector<Mode>{Mode::In, Mode::In}));
    EXPECT_EQ(info.role, PredRole::NotExists);
}

TEST(Negation, ComplementsHoldOnBoundedDomain) {
    Bounds b;
    b.maxListLen = 3;
    b.intLo = -1;
    b.intHi = 1;
    for (const auto & spec : {second(), first()}) {
        Verdict v = checkComplement(spec, withNegation(spec), b);
        EXPECT_TRUE(v.holds) << spec.newName << ": " << v.counterexample.value_or("");
        EXPECT_GT(v.checkedInstances, 0u);
    }
}

TEST(Negation, TotalProjectionHasEmptyComplement) {
    Program p = loadFixture("rotate.chc");
    EXPECT_TRUE(eliminateNegation({"append", {0, 1}, {2}, "not_exists_3rd_append"}, p).empty());
    EXPECT_TRUE(eliminateNegation({"len", {0}, {1}, "not_exists_2nd_len"}, p).empty());
}

TEST(Negation, UnsupportedShapesAreRejected) {
    Program p = loadFixture("rotate.chc");
    // rotate calls append: more than its own recursion.
    EXPECT_THROW(eliminateNegation({"rotate", {0, 2}, {1}, "not_exists_2nd_rotate"}, p), UnsupportedShape);
    EXPECT_THROW(eliminateNegation({"missing", {0}, {1}, "not_exists_2nd_missing"}, p), UnsupportedShape);
}
