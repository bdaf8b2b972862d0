/*
 * SPDX-License-Identifier: MIT
 */

#include "helpers.hpp"

#include "chcelim/compare.hpp"

#include <gtest/gtest.h>

using namespace chcelim;

namespace {

Program decls() {
    return parseProgramOrThrow(":- declare diff(int:in, int:in, int:out) difference.\n"
                               ":- declare new1(int:in, int:in) definition.\n"
                               ":- declare new7(int:in, int:in) definition.\n"
                               ":- declare q(int:in, int:in).\n"
                               ":- declare append(ilist:in, ilist:in, ilist:out) total_functional.\n");
}

bool same(const std::string & a, const std::string & b) {
    Program p = decls();
    PredRenaming r;
    return clausesEquivalent(parseClause(a, p), parseClause(b, p), r, isIntroducedName);
}

} // namespace

TEST(Compare, IntroducedNames) {
    EXPECT_TRUE(isIntroducedName("new12"));
    EXPECT_TRUE(isIntroducedName("diff"));
    EXPECT_TRUE(isIntroducedName("diff2"));
    EXPECT_TRUE(isIntroducedName("not_exists_1st_append"));
    EXPECT_FALSE(isIntroducedName("append"));
    EXPECT_FALSE(isIntroducedName("newton"));
}

TEST(Compare, VariableRenamingAndAtomOrder) {
    EXPECT_TRUE(same("new1(A,B) :- A=B+1, q(B,C), new1(C,A).", "new1(X,Y) :- new1(Z,X), q(Y,Z), X-1=Y."));
    EXPECT_FALSE(same("q(A,B) :- q(A,B).", "q(A,B) :- q(B,A)."));
    EXPECT_FALSE(same("new1(A,A) :- q(A,A).", "new1(A,B) :- q(A,B)."));
}

TEST(Compare, ArithmeticIsComparedSemantically) {
    EXPECT_TRUE(same("new1(A,B) :- A>=B, A=<B.", "new1(A,B) :- A=B."));
    EXPECT_TRUE(same("new1(A,B) :- A<B+1, B<A+1.", "new1(A,B) :- A=B."));
    EXPECT_FALSE(same("new1(A,B) :- A=<B.", "new1(A,B) :- A<B."));
}

TEST(Compare, ConstraintOnlyVariablesAreProjected) {
    EXPECT_TRUE(same("diff(H,Na,N1) :- H=<X, Na=X+N2, N1=H+Na, new1(N2,N2).",
                     "diff(X,N1,N) :- N2+X=<N1, N=N1+X, new1(N2,N2)."));
    EXPECT_FALSE(same("diff(H,Na,N1) :- H<X, Na=X+N2, N1=H+Na, new1(N2,N2).",
                      "diff(X,N1,N) :- N2+X=<N1, N=N1+X, new1(N2,N2)."));
}

TEST(Compare, IntroducedPredicatesMayBeRenamedAndPermuted) {
    EXPECT_TRUE(same("new1(A,B) :- A=B+1.", "new7(B,A) :- A=B+1."));
    EXPECT_FALSE(same("q(A,B) :- A=B+1.", "q(B,A) :- A=B+1."));
    Program p = decls();
    auto a = parseClauses("new1(A,B) :- A=B+1.\nfalse :- new1(X,Y), Y>X.\n", p);
    auto b = parseClauses("false :- new7(Y,X), Y>X.\nnew7(B,A) :- A=B+1.\n", p);
    auto ren = clauseSetsEquivalent(a, b);
    ASSERT_TRUE(ren.has_value());
    EXPECT_EQ(ren->at("new1").target, "new7");
    EXPECT_EQ(ren->at("new1").perm, (std::vector<std::size_t>{1, 0}));
    // The renaming must be consistent across clauses.
    auto c = parseClauses("new7(B,A) :- A=B+1.\nfalse :- new7(X,Y), Y>X.\n", p);
    EXPECT_FALSE(clauseSetsEquivalent(a, c).has_value());
}

TEST(Compare, ListTermsMatchStructurally) {
    EXPECT_TRUE(same("false :- append(C,[A|B],D), append(B,C,E), D\\==E.",
                     "false :- append(X,K,W), append(K,[H|X],Z), Z\\==W."));
    EXPECT_FALSE(same("false :- append(C,[A|B],D).", "false :- append(C,[A,E|B],D)."));
}

TEST(Compare, LemmasRespectExistentials) {
    Lemma a;
    Lemma b;
    Atom pa{"append", {Term::var("B", Sort::IntList), Term::cons(Term::var("A", Sort::Int), Term::var("C", Sort::IntList)),
                       Term::var("D", Sort::IntList)}};
    a.premiseAtoms = {pa};
    a.existentials = {{"B1", Sort::IntList}};
    a.conclusionAtoms = {Atom{"append", {Term::var("B1", Sort::IntList), Term::var("C", Sort::IntList),
                                         Term::var("D", Sort::IntList)}}};
    b = a;
    PredRenaming r;
    EXPECT_TRUE(lemmasEquivalent(a, b, r, isIntroducedName));
    b.existentials = {};
    b.premiseAtoms.push_back(Atom{"append", {Term::var("B1", Sort::IntList), Term::nil(), Term::var("B1", Sort::IntList)}});
    EXPECT_FALSE(lemmasEquivalent(a, b, r, isIntroducedName));
}
