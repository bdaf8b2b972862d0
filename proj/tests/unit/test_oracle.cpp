/*
 * SPDX-License-Identifier: MIT
 */

#include "helpers.hpp"

#include "chcelim/oracle.hpp"

#include <gtest/gtest.h>

using namespace chcelim;
using testing_helpers::loadFixture;

namespace {

Bounds small() {
    Bounds b;
    b.maxListLen = 2;
    b.intLo = 0;
    b.intHi = 1;
    return b;
}

} // namespace

TEST(Oracle, BoundedLeastModelContainsExpectedFacts) {
    Program p = loadFixture("insertion_sort.chc");
    GroundModel m = boundedLeastModel(p, small());
    EXPECT_TRUE(m.contains("sumlist", {Value::list({1, 1}), Value::integer(2)}));
    EXPECT_FALSE(m.contains("sumlist", {Value::list({1, 1}), Value::integer(1)}));
    EXPECT_TRUE(m.contains("insertionSort", {Value::list({1, 0}), Value::list({0, 1})}));
    EXPECT_FALSE(m.capped());
    // 1 + 2 + 4 lists, one sum each.
    EXPECT_EQ(m.count("sumlist"), 7u);
}

TEST(Oracle, ModelIsRestrictedToRequestedPredicates) {
    Program p = loadFixture("insertion_sort.chc");
    GroundModel m = boundedLeastModel(p, small(), {"sumlist"});
    EXPECT_EQ(m.count("ins"), 0u);
    EXPECT_EQ(m.count("sumlist"), 7u);
}

TEST(Oracle, TotalFunctionalityOfFixturePredicates) {
    Program is = loadFixture("insertion_sort.chc");
    Program rot = loadFixture("rotate.chc");
    for (const auto & pred : {"ins", "sumlist", "insertionSort"}) EXPECT_TRUE(checkTotalFunctional(pred, is, small()).holds) << pred;
    for (const auto & pred : {"append", "len", "rotate"}) EXPECT_TRUE(checkTotalFunctional(pred, rot, small()).holds) << pred;
}

TEST(Oracle, ContradictoryFactIsReported) {
    Verdict v = checkTotalFunctional("p", loadFixture("contradictory_fact.chc"), Bounds{});
    EXPECT_FALSE(v.holds);
    ASSERT_TRUE(v.counterexample.has_value());
    EXPECT_NE(v.counterexample->find("p(0)"), std::string::npos) << *v.counterexample;
}

TEST(Oracle, MissingCaseBreaksTotality) {
    Program p = parseProgramOrThrow(":- declare f(ilist:in, int:out) total_functional.\nf([],0).\n");
    Verdict v = checkTotalFunctional("f", p, small());
    EXPECT_FALSE(v.holds);
    EXPECT_NE(v.counterexample->find("no output"), std::string::npos) << *v.counterexample;
}

TEST(Oracle, ImplicationAndItsMutation) {
    Program p = loadFixture("rotate.chc");
    auto atom = [&](const std::string & text) { return parseClause("false :- " + text + ".", p).body[0]; };
    Lemma l;
    l.id = "L3";
    l.premiseAtoms = {atom("append(B,[A|C],D)")};
    l.existentials = {{"B1", Sort::IntList}};
    l.conclusionAtoms = {atom("append(B1,C,D)")};
    Verdict v = checkImplication(p, l, small());
    EXPECT_TRUE(v.holds) << v.counterexample.value_or("");
    EXPECT_GT(v.checkedInstances, 0u);

    l.conclusionAtoms = {atom("append(C,B1,D)")};
    v = checkImplication(p, l, small());
    EXPECT_FALSE(v.holds);
    EXPECT_TRUE(v.counterexample.has_value());
}

TEST(Oracle, ValidateModelOfReferenceInterpretation) {
    Program fin = loadFixture("insertion_sort_final.chc");
    Model m = parseModel("(define-fun new1 ((M Int) (N Int)) Bool (= M N))"
                         "(define-fun new2 ((N Int)) Bool true)"
                         "(define-fun diff ((H Int) (Na Int) (N1 Int)) Bool (= (+ H Na) N1))",
                         fin);
    Verdict v = validateModel(fin, m, Bounds{}, {"diff"});
    EXPECT_TRUE(v.holds) << v.counterexample.value_or("");

    Model wrong = parseModel("(define-fun new1 ((M Int) (N Int)) Bool true)"
                             "(define-fun new2 ((N Int)) Bool true)"
                             "(define-fun diff ((H Int) (Na Int) (N1 Int)) Bool (= (+ H Na) N1))",
                             fin);
    EXPECT_FALSE(validateModel(fin, wrong, Bounds{}).holds);

    Model notFunctional = parseModel("(define-fun new1 ((M Int) (N Int)) Bool (= M N))"
                                     "(define-fun new2 ((N Int)) Bool true)"
                                     "(define-fun diff ((H Int) (Na Int) (N1 Int)) Bool (>= N1 (+ H Na)))",
                                     fin);
    EXPECT_FALSE(validateModel(fin, notFunctional, Bounds{}, {"diff"}).holds);
}

TEST(Oracle, ResultsDoNotDependOnJobs) {
    Program p = loadFixture("rotate.chc");
    Bounds one = small();
    one.maxListLen = 3;
    Bounds four = one;
    four.jobs = 4;
    Verdict a = checkTotalFunctional("append", p, one);
    Verdict b = checkTotalFunctional("append", p, four);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_EQ(a.checkedInstances, b.checkedInstances);
    Verdict c = checkTotalFunctional("p", loadFixture("contradictory_fact.chc"), one);
    Bounds cf = one;
    cf.jobs = 3;
    Verdict d = checkTotalFunctional("p", loadFixture("contradictory_fact.chc"), cf);
    EXPECT_EQ(c.counterexample, d.counterexample);
}

TEST(Oracle, ValueRendering) {
    EXPECT_EQ(Value::list({1, -2}).str(), "[1,-2]");
    EXPECT_EQ(Value::list({}).str(), "[]");
    EXPECT_EQ(Value::integer(-3).str(), "-3");
}
