/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <johnson/builtins.hh>
#include <johnson/errors.hh>
#include <johnson/lemma_suite.hh>
#include <johnson/nae.hh>

#include <gtest/gtest.h>

using namespace johnson;
using std::string;
using std::vector;

namespace
{
    auto brute_force_nae(const NAEInstance & inst) -> bool
    {
        for (std::uint64_t m = 0 ; m < (std::uint64_t{1} << inst.vars) ; ++m) {
            bool ok = true;
            for (auto & c : inst.clauses) {
                int ones = ((m >> c[0]) & 1) + ((m >> c[1]) & 1) + ((m >> c[2]) & 1);
                ok = ok && ones != 0 && ones != 3;
            }
            if (ok)
                return true;
        }
        return false;
    }
}

TEST(NAEFormat, ParsesAndPrints)
{
    auto inst = parse_nae("c a comment\np nae 3 2\n1 2 3\n3 3 1\n");
    EXPECT_EQ(inst.vars, 3);
    ASSERT_EQ(inst.clauses.size(), 2u);
    EXPECT_EQ(inst.clauses[1], (std::array<int, 3>{2, 2, 0}));
    EXPECT_EQ(parse_nae(print_nae(inst)), inst);
}

TEST(NAEFormat, Errors)
{
    EXPECT_THROW(parse_nae("1 2 3\n"), ParseError);
    EXPECT_THROW(parse_nae("p nae 2 1\n1 2 3\n"), ParseError);
    EXPECT_THROW(parse_nae("p nae 3 2\n1 2 3\n"), ParseError);
    EXPECT_THROW(parse_nae("p nae 3 1\n1 2\n"), ParseError);
    EXPECT_THROW(parse_nae("p cnf 3 1\n1 2 3\n"), ParseError);
}

TEST(NAESolve, AgreesWithCounting)
{
    std::mt19937_64 rng(4);
    for (int trial = 0 ; trial < 300 ; ++trial) {
        auto inst = random_nae_instance(rng, 5, 6);
        auto solution = nae_solve(inst);
        EXPECT_EQ(solution.has_value(), brute_force_nae(inst));
        if (solution) {
            EXPECT_TRUE(nae_satisfied(inst, *solution));
        }
    }
}

TEST(NAEInstances, EnumerationCountsMultisets)
{
    // clauses over 2 variables: 2^3 ordered triples; multisets of up to two of them
    auto all = all_nae_instances(2, 2);
    EXPECT_EQ(all.size(), 1u + 8u + 8u * 9u / 2u);
    std::set<vector<std::array<int, 3>>> distinct;
    for (auto & inst : all)
        EXPECT_TRUE(distinct.insert(inst.clauses).second);
}

TEST(Reduction, ShapeOfTheReducedInstance)
{
    auto inst = parse_nae("p nae 3 1\n1 2 3\n");
    auto csp = reduce_nae(inst, 2);
    EXPECT_NO_THROW(validate_instance(csp));
    for (int v = 0 ; v < 3 ; ++v) {
        auto names = encoding_vars(v);
        bool paired = false;
        for (auto & c : csp.constraints)
            paired = paired || (c.rel == RelationSymbol::overlap() && c.scope == vector<string>{names[0], names[1]});
        EXPECT_TRUE(paired) << v;
    }
}

TEST(Reduction, DecodingReadsEdgeAsOne)
{
    auto names0 = encoding_vars(0), names1 = encoding_vars(1);
    PointAssignment a{{names0[0], {0, 1}}, {names0[1], {1, 2}}, {names1[0], {0, 1}}, {names1[1], {2, 3}}};
    auto decoded = decode_nae(a, 2);
    ASSERT_TRUE(decoded);
    EXPECT_EQ(*decoded, (vector<bool>{true, false}));
    a[names1[1]] = {0, 1};
    EXPECT_FALSE(decode_nae(a, 2));
}

TEST(Reduction, SatisfiableSingleClause)
{
    auto report = equisat_check(parse_nae("p nae 3 1\n1 2 3\n"), 2);
    EXPECT_TRUE(report.source_sat);
    EXPECT_TRUE(report.target_sat);
    EXPECT_TRUE(report.agree());
}

TEST(Reduction, DecisionAgreesWithTheGenericSolver)
{
    for (int vars = 1 ; vars <= 2 ; ++vars)
        for (auto & inst : all_nae_instances(vars, 2)) {
            vector<string> order;
            for (int v = 0 ; v < inst.vars ; ++v)
                for (auto & name : encoding_vars(v))
                    order.push_back(name);
            auto generic = solve_csp_unbounded(reduce_nae(inst, 2), 2, default_node_budget, order);
            auto report = equisat_check(inst, 2);
            EXPECT_EQ(report.target_sat, generic.has_value()) << print_nae(inst);
            if (report.target_sat) {
                EXPECT_TRUE(report.decoded);
            }
        }
}

TEST(Reduction, SatisfiableSourceWithUnsatisfiableTarget)
{
    auto report = equisat_check(parse_nae("p nae 2 2\n1 2 2\n1 2 1\n"), 2);
    EXPECT_TRUE(report.source_sat);
    EXPECT_FALSE(report.target_sat);
    EXPECT_FALSE(report.agree());
}

TEST(Sunflower, TriangleBelowTheBound)
{
    auto check = check_sunflower(2, 1, 3);
    ASSERT_EQ(check.verdict, Verdict::Fail);
    ASSERT_TRUE(check.counterexample);
    auto & t = check.counterexample->tuple;
    ASSERT_EQ(t.size(), 3u);
    for (int p = 0 ; p < 3 ; ++p)
        for (int q = p + 1 ; q < 3 ; ++q)
            EXPECT_EQ(oracle::meet(t[p], t[q]), 1);
    EXPECT_EQ(t[0].bits() & t[1].bits() & t[2].bits(), 0u);
}

TEST(Sunflower, PassesAtTheBound)
{
    for (auto [k, m] : {std::pair{2, 1}, {2, 2}, {3, 3}}) {
        int length = (k - 1) * static_cast<int>(binomial(k, m)) + 2;
        EXPECT_EQ(check_sunflower(k, m, length).verdict, Verdict::Pass) << k << " " << m;
    }
}

TEST(LemmaSuite, SmallLemmasPass)
{
    for (auto id : {"down", "flip", "si_chain", "phi_r_cases"})
        for (int k = 2 ; k <= 3 ; ++k) {
            auto report = verify(id, k);
            EXPECT_EQ(report.verdict, Verdict::Pass) << id << " " << k;
            EXPECT_FALSE(report.checks.empty());
            for (auto & c : report.checks)
                EXPECT_FALSE(c.counterexample) << id << " " << c.name;
        }
}

TEST(LemmaSuite, BudgetMarksChecksSkipped)
{
    LemmaParams lp;
    lp.node_budget = 3;
    lp.orbit_reduction = false;
    auto report = verify("flip", 3, lp);
    EXPECT_NE(report.verdict, Verdict::Pass);
    bool any_skipped = false;
    for (auto & c : report.checks)
        any_skipped = any_skipped || c.verdict == Verdict::Skipped;
    EXPECT_TRUE(any_skipped);
}

TEST(LemmaSuite, UnknownLemmaOrParameter)
{
    EXPECT_THROW(verify("no_such_lemma", 2), InvalidInput);
    LemmaParams lp;
    lp.i = 7;
    EXPECT_THROW(verify("flip", 2, lp), InvalidInput);
}

TEST(Hardness, VerdictFollowsIntersectionOfCertifiedSets)
{
    int k = 2;
    auto frag = make_fragment(6, k, {RelationSymbol::exact(0), RelationSymbol::edge(), RelationSymbol::union_of(0b11),
            RelationSymbol::union_of(0b1), RelationSymbol::union_of(0b10)});
    HardnessCertificate s0{0b1, parse_formula("(S0 x y)")}, s1{0b10, parse_formula("(E x y)")},
        s01{0b11, parse_formula("(SI{0,1} x y)")};
    EXPECT_EQ(hardness_verdict({s0, s1}, frag), HardnessVerdict::NPHardCertified);
    EXPECT_EQ(hardness_verdict({s01}, frag), HardnessVerdict::Inconclusive);
    EXPECT_EQ(hardness_verdict({}, frag), HardnessVerdict::Inconclusive);
    EXPECT_EQ(hardness_verdict({s0, s1, s01}, frag), HardnessVerdict::NPHardCertified);

    HardnessCertificate wrong{0b1, parse_formula("(E x y)")};
    EXPECT_THROW(hardness_verdict({wrong, s1}, frag), InvalidInput);
}
