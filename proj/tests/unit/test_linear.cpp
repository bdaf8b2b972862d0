/*
 * SPDX-License-Identifier: MIT
 */

#include "chcelim/clause.hpp"

#include <gtest/gtest.h>

using namespace chcelim;

namespace {

Term iv(const char * n) { return Term::var(n, Sort::Int); }

} // namespace

TEST(Linear, FloorAndCeilDivisionRoundTowardInfinities) {
    EXPECT_EQ(floorDiv(-7, 2), -4);
    EXPECT_EQ(floorDiv(7, 2), 3);
    EXPECT_EQ(ceilDiv(-7, 2), -3);
    EXPECT_EQ(ceilDiv(7, 2), 4);
}

TEST(Linear, RenderingIsInfix) {
    LinExpr e = LinExpr::variable("X") + LinExpr::variable("N") - LinExpr(1);
    EXPECT_EQ(e.str(), "N+X-1");
    EXPECT_EQ((LinExpr::variable("X") * 2).str(), "2*X");
    EXPECT_EQ(LinExpr().str(), "0");
}

TEST(Constraint, StrictInequalitiesBecomeNonStrict) {
    auto lt = ConstraintAtom::intRel(RelOp::Lt, iv("X"), iv("Y"));
    auto le = ConstraintAtom::intRel(RelOp::Le, Term::lin(LinExpr::variable("X") + LinExpr(1)), iv("Y"));
    EXPECT_EQ(lt, le);
    EXPECT_EQ(lt.str(), "X<Y");
}

TEST(Constraint, EqualitiesAreSignNormalised) {
    auto a = ConstraintAtom::intRel(RelOp::Eq, iv("M"), Term::lin(LinExpr::variable("X") + LinExpr::variable("N")));
    auto b = ConstraintAtom::intRel(RelOp::Eq, Term::lin(LinExpr::variable("X") + LinExpr::variable("N")), iv("M"));
    EXPECT_EQ(a, b);
}

TEST(Constraint, GcdTighteningDecidesTrivialCases) {
    // 2X = 1 has no integer solution
    auto c = ConstraintAtom::intRel(RelOp::Eq, Term::lin(LinExpr::variable("X", 2)), Term::intConst(1));
    EXPECT_TRUE(c.isFalse());
    // 2X =< 1  <=>  X =< 0
    auto d = ConstraintAtom::intRel(RelOp::Le, Term::lin(LinExpr::variable("X", 2)), Term::intConst(1));
    EXPECT_EQ(d, ConstraintAtom::intRel(RelOp::Le, iv("X"), Term::intConst(0)));
}

TEST(Constraint, NegationIsInvolutive) {
    auto c = ConstraintAtom::intRel(RelOp::Le, iv("I"), iv("X"));
    EXPECT_EQ(c.negated().negated(), c);
    EXPECT_EQ(c.negated(), ConstraintAtom::intRel(RelOp::Gt, iv("I"), iv("X")));
}
