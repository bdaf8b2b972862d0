/*
 * SPDX-License-Identifier: MIT
 */

#include "helpers.hpp"

#include "chcelim/simplify.hpp"

#include <gtest/gtest.h>

using namespace chcelim;
using testing_helpers::loadFixture;

namespace {

std::vector<std::string> simplified(const std::string & text, const Program & p) {
    std::vector<std::string> out;
    for (const auto & c : simplifyClause(parseClause(text, p), p, Invariants::compute(p))) out.push_back(c.str());
    return out;
}

} // namespace

TEST(Simplify, FourierMotzkinDecidesSmallSystems) {
    auto x = Term::var("X", Sort::Int);
    auto y = Term::var("Y", Sort::Int);
    Constraint sat{ConstraintAtom::intRel(RelOp::Le, x, y), ConstraintAtom::intRel(RelOp::Le, y, Term::intConst(3))};
    EXPECT_TRUE(intSatisfiable(sat));
    sat.push_back(ConstraintAtom::intRel(RelOp::Gt, x, Term::intConst(3)));
    EXPECT_FALSE(intSatisfiable(sat));
    Constraint c{ConstraintAtom::intRel(RelOp::Lt, x, y)};
    EXPECT_TRUE(intImplies(c, ConstraintAtom::intRel(RelOp::Le, x, y)));
    EXPECT_TRUE(intImplies(c, ConstraintAtom::intRel(RelOp::Ne, x, y)));
    EXPECT_FALSE(intImplies(c, ConstraintAtom::intRel(RelOp::Eq, x, y)));
}

TEST(Simplify, UnsatisfiableClausesDisappear) {
    Program p = loadFixture("insertion_sort.chc");
    EXPECT_TRUE(simplified("false :- X>0, X<1, sumlist(L,X).", p).empty());
}

TEST(Simplify, ListEqualitiesAreSubstituted) {
    Program p = loadFixture("rotate.chc");
    auto out = simplified("false :- Z==[H|T], append(T,[H],Z).", p);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0], "false :- append(T,[H],[H|T]).");
}

TEST(Simplify, ConsDisequalitySplitsHeadCaseFirst) {
    Program p = loadFixture("rotate.chc");
    auto out = simplified("false :- [A|B]\\==[C|D], append(B,D,E), len(E,F), F>A, F>C.", p);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_NE(out[0].find("A=\\=C"), std::string::npos) << out[0];
    EXPECT_NE(out[1].find("B\\==D"), std::string::npos) << out[1];
}

TEST(Simplify, InvariantsFindNonNegativeLengths) {
    Program p = loadFixture("rotate.chc");
    Invariants inv = Invariants::compute(p);
    const auto & b = inv.bounds().at("len");
    ASSERT_EQ(b.size(), 2u);
    ASSERT_TRUE(b[1].lower.has_value());
    EXPECT_EQ(*b[1].lower, 0);
}

TEST(Simplify, TidyNamesStripsRenamingSuffixes) {
    Program p = loadFixture("insertion_sort.chc");
    Clause c = parseClause("false :- X_a>0, sumlist(L_a,X_a).", p);
    EXPECT_EQ(tidyNames(c).str(), "false :- 0<X, sumlist(L,X).");
}

TEST(Simplify, DropSingletonsRemovesUnusedTotalAtoms) {
    Program p = loadFixture("rotate.chc");
    Clause c = parseClause("false :- append(A,B,C), len(A,N), N>0.", p);
    EXPECT_EQ(dropSingletons(c, p).str(), "false :- 0<N, len(A,N).");
}
