/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "corpus.hh"

#include <johnson/builtins.hh>
#include <johnson/errors.hh>
#include <johnson/formula.hh>

#include <gtest/gtest.h>

using namespace johnson;
using std::string;
using std::vector;

TEST(Parser, RoundTripOnCorpus)
{
    for (auto & f : corpus::formulas(17, 200)) {
        auto text = print_formula(f);
        auto back = parse_formula(text);
        EXPECT_EQ(back, f) << text;
        EXPECT_EQ(print_formula(back), text);
    }
}

TEST(Parser, WhitespaceAndLayoutDoNotMatter)
{
    auto a = parse_formula("(exists (z) (and (E x z) (S0 z y)))");
    auto b = parse_formula("  (exists\n  (z)\n\t(and (E x z)\n   (S0 z y)) )  ");
    EXPECT_EQ(a, b);
}

TEST(Parser, ErrorPositions)
{
    try {
        parse_formula("(and (E x y)\n  (S1 x))");
        FAIL() << "arity mismatch accepted";
    }
    catch (const InvalidInput &) {
    }

    try {
        parse_formula("(and (E x y)\n  (E x y)");
        FAIL() << "missing parenthesis accepted";
    }
    catch (const ParseError & e) {
        EXPECT_EQ(e.line(), 2);
    }

    EXPECT_THROW(parse_formula("E x y"), ParseError);
    EXPECT_THROW(parse_formula("(Q x y)"), InvalidInput);
    EXPECT_THROW(parse_formula("(exists (x) (exists (x) (E x y)))"), InvalidInput);
    EXPECT_THROW(parse_formula("(E x y)", {RelationSymbol::exact(0)}), InvalidInput);
}

TEST(Formula, FreeVariablesInOrderOfFirstOccurrence)
{
    auto f = parse_formula("(and (E y x) (exists (z) (S0 z w)) (= x u))");
    EXPECT_EQ(free_vars(f), (vector<string>{"y", "x", "w", "u"}));
    EXPECT_EQ(quantifier_count(f), 1);
}

TEST(Formula, PrimitivePositiveFragment)
{
    EXPECT_TRUE(is_pp(parse_formula("(exists (z) (and (E x z) (= z y)))")));
    EXPECT_FALSE(is_pp(parse_formula("(or (E x y) (N x y))")));
    EXPECT_FALSE(is_pp(parse_formula("(not (E x y))")));
    EXPECT_FALSE(is_pp(parse_formula("(forall (z) (E x z))")));
    for (auto & f : corpus::formulas(5, 100, true))
        EXPECT_TRUE(is_pp(f)) << print_formula(f);
}

TEST(Builtins, AllNamesBuildAndArePrintable)
{
    for (auto & name : builtin_names()) {
        BuiltinParams p;
        if (name == "down") {
            p.i = 2;
            p.j = 2;
        }
        if (name == "flip" || name == "c_def" || name == "c_diag")
            p.i = 1;
        if (name == "rn") {
            p.i = 1;
            p.m = 3;
        }
        if (name == "si_chain")
            p.target = RelationSymbol::exact(1);
        if (name == "phi_r")
            p.relations = vector<RelationSymbol>(6, RelationSymbol::edge());
        auto f = builtin(name, 3, p);
        EXPECT_NO_THROW(check_well_formed(f)) << name;
        EXPECT_EQ(parse_formula(print_formula(f)), f) << name;
    }
    EXPECT_THROW(builtin("no_such_thing", 2), InvalidInput);
}
