/*
 * SPDX-License-Identifier: MIT
 */

#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace chcelim;
using testing_helpers::loadFixture;

namespace {

Program sumlistDecls() {
    return parseProgramOrThrow(":- declare sumlist(ilist:in, int:out) total_functional.\n"
                               ":- declare new1(int, int).\n");
}

} // namespace

TEST(Parser, FactWithNilAndConstant) {
    Clause c = parseClause("sumlist([],0).", sumlistDecls());
    ASSERT_TRUE(c.head.has_value());
    EXPECT_EQ(c.head->pred, "sumlist");
    EXPECT_TRUE(c.head->args[0].isNil());
    EXPECT_EQ(c.head->args[1], Term::intConst(0));
    EXPECT_TRUE(c.constraint.empty());
    EXPECT_TRUE(c.body.empty());
}

TEST(Parser, RecursiveClauseWithArithmetic) {
    Clause c = parseClause("sumlist([X|Xs],M) :- M=X+N, sumlist(Xs,N).", sumlistDecls());
    ASSERT_EQ(c.constraint.size(), 1u);
    LinExpr rhs = LinExpr::variable("X") + LinExpr::variable("N");
    EXPECT_EQ(c.constraint[0], ConstraintAtom::intRel(RelOp::Eq, Term::var("M", Sort::Int), Term::lin(rhs)));
    ASSERT_EQ(c.body.size(), 1u);
    EXPECT_EQ(c.body[0].str(), "sumlist(Xs,N)");
    EXPECT_EQ(c.head->args[0].sort(), Sort::IntList);
}

TEST(Parser, QueryWithDisequality) {
    Clause c = parseClause("false :- M=\\=N, new1(M,N).", sumlistDecls());
    EXPECT_TRUE(c.isQuery());
    ASSERT_EQ(c.constraint.size(), 1u);
    EXPECT_EQ(c.constraint[0].op(), RelOp::Ne);
    EXPECT_EQ(c.str(), "false :- M=\\=N, new1(M,N).");
}

TEST(Parser, ListRelationsUsePrologSpelling) {
    Program p = loadFixture("rotate.chc");
    const Clause & q = p.clauses.front();
    ASSERT_EQ(q.constraint.size(), 1u);
    EXPECT_EQ(q.constraint[0].kind(), ConstraintAtom::Kind::ListNe);
}

TEST(Parser, FixtureHasEightLabelledClauses) {
    Program p = loadFixture("insertion_sort.chc");
    EXPECT_EQ(p.clauses.size(), 8u);
    EXPECT_EQ(p.predicates.size(), 3u);
    for (std::size_t i = 0; i < p.clauses.size(); ++i) { EXPECT_EQ(p.clauses[i].id, std::to_string(i + 1)); }
    EXPECT_TRUE(p.info("ins")->totalFunctional);
    EXPECT_EQ(p.info("ins")->modes[2], Mode::Out);
}

TEST(Parser, RoundTripsFixtures) {
    for (auto name : {"insertion_sort.chc", "rotate.chc", "contradictory_fact.chc"}) {
        Program p = loadFixture(name);
        Program q = parseProgramOrThrow(printProgram(p));
        EXPECT_EQ(p, q) << name;
    }
}

TEST(Parser, EmptyProgramPrintsNothingButDeclarations) {
    Program p = parseProgramOrThrow(":- declare p(int).\n");
    EXPECT_EQ(printProgram(p), ":- declare p(int:in).\n");
    EXPECT_EQ(printProgram(Program{}), "");
}

TEST(Parser, UndeclaredPredicateIsReportedWithSpan) {
    auto r = parseProgram("p(X) :- X>0.\n", "t.chc");
    ASSERT_FALSE(r.ok());
    ASSERT_EQ(r.errors.size(), 1u);
    EXPECT_EQ(r.errors[0].span.line, 1);
    EXPECT_EQ(r.errors[0].span.column, 1);
    EXPECT_NE(r.errors[0].message.find("undeclared"), std::string::npos);
}

TEST(Parser, ArityAndSortMismatches) {
    auto arity = parseProgram(":- declare p(int).\np(1,2).\n");
    ASSERT_FALSE(arity.ok());
    EXPECT_NE(arity.errors[0].message.find("arity"), std::string::npos);
    auto sort = parseProgram(":- declare p(ilist).\np(X) :- X>0.\n");
    ASSERT_FALSE(sort.ok());
    EXPECT_NE(sort.errors[0].message.find("sort"), std::string::npos);
}

TEST(Parser, ReportsSeveralErrorsAndRecovers) {
    auto r = parseProgram(":- declare p(int).\np(X :- X>0.\np(1).\nq(1).\n");
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.errors.size(), 2u);
    EXPECT_EQ(r.errors[0].span.line, 2);
    EXPECT_EQ(r.errors[1].span.line, 4);
}

TEST(Parser, AnonymousVariablesAreDistinct) {
    Program d = parseProgramOrThrow(":- declare p(int, int).\n");
    Clause c = parseClause("p(_,_).", d);
    EXPECT_NE(c.head->args[0], c.head->args[1]);
}

TEST(Parser, NullaryPredicates) {
    Program p = parseProgramOrThrow(":- declare new2.\nnew2 :- new2.\nfalse :- new2.\n");
    EXPECT_EQ(p.clauses[0].str(), "new2 :- new2.");
    EXPECT_EQ(parseProgramOrThrow(printProgram(p)), p);
}

TEST(Parser, ChainedListEqualitiesWithoutAtomsAreTyped) {
    Program p = parseProgramOrThrow(":- declare r(int:in).\nr(N) :- K==Xs, Xs==Ys.\n");
    ASSERT_EQ(p.clauses.size(), 1u);
    ASSERT_EQ(p.clauses[0].constraint.size(), 2u);
    for (const auto & [name, sort] : p.clauses[0].freeVars())
        if (name != "N") EXPECT_EQ(sort, Sort::IntList) << name;
}
