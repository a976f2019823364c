/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "corpus.hh"
#include "oracles.hh"

#include <johnson/builtins.hh>
#include <johnson/errors.hh>
#include <johnson/eval.hh>

#include <gtest/gtest.h>

using namespace johnson;
using std::string;
using std::vector;

namespace
{
    auto assignment_of(const JohnsonFragment & frag, const vector<string> & names, const vector<KSubset> & values) -> Assignment
    {
        Assignment a;
        for (std::size_t i = 0 ; i < names.size() ; ++i)
            a[names[i]] = frag.index_of(values[i]);
        return a;
    }

    auto random_vertex(std::mt19937_64 & rng, const JohnsonFragment & frag) -> KSubset
    {
        return frag.vertices[std::uniform_int_distribution<std::size_t>(0, frag.vertex_count() - 1)(rng)];
    }

    auto symbols_for_csp() -> vector<RelationSymbol>
    {
        return {RelationSymbol::exact(0), RelationSymbol::exact(1), RelationSymbol::edge(), RelationSymbol::neq(),
            RelationSymbol::eq(), RelationSymbol::at_most(1), RelationSymbol::at_least(1), RelationSymbol::union_of(0b101)};
    }

    auto naive_solve(const CSPInstance & inst, const vector<KSubset> & universe, int k) -> bool
    {
        vector<std::size_t> idx(inst.vars.size(), 0);
        while (true) {
            std::map<string, KSubset> env;
            for (std::size_t i = 0 ; i < idx.size() ; ++i)
                env[inst.vars[i]] = universe[idx[i]];
            bool ok = true;
            for (auto & c : inst.constraints) {
                vector<KSubset> t;
                for (auto & v : c.scope)
                    t.push_back(env[v]);
                ok = ok && oracle::holds(c.rel, k, t);
            }
            if (ok)
                return true;
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == universe.size())
                idx[i++] = 0;
            if (i == idx.size())
                return false;
        }
    }

    auto all_small_instances() -> vector<CSPInstance>
    {
        vector<string> vars{"a", "b", "c"};
        vector<Constraint> singles;
        for (auto & s : symbols_for_csp())
            for (auto & u : vars)
                for (auto & v : vars)
                    singles.push_back(Constraint{s, {u, v}});
        vector<CSPInstance> result;
        for (std::size_t i = 0 ; i < singles.size() ; ++i) {
            result.push_back(CSPInstance{vars, {singles[i]}});
            for (std::size_t j = i + 1 ; j < singles.size() ; ++j)
                result.push_back(CSPInstance{vars, {singles[i], singles[j]}});
        }
        return result;
    }
}

TEST(Evaluate, AgreesWithNaiveSemanticsOnCorpus)
{
    int n = 5, k = 2;
    auto frag = make_fragment(n, k);
    std::mt19937_64 rng(3);
    int checked = 0;
    for (auto & f : corpus::formulas(11, 120)) {
        for (int trial = 0 ; trial < 8 ; ++trial) {
            vector<KSubset> values{random_vertex(rng, frag), random_vertex(rng, frag), random_vertex(rng, frag)};
            oracle::Env env{{"x", values[0]}, {"y", values[1]}, {"z", values[2]}};
            bool expected = oracle::evaluate(f, k, frag.vertices, env);
            ASSERT_EQ(evaluate(frag, f, assignment_of(frag, {"x", "y", "z"}, values)), expected) << print_formula(f);
            ++checked;
        }
    }
    EXPECT_EQ(checked, 960);
}

TEST(Evaluate, UnassignedFreeVariableIsAnError)
{
    auto frag = make_fragment(4, 2);
    EXPECT_THROW(evaluate(frag, parse_formula("(E x y)"), Assignment{{"x", 0}}), InvalidInput);
}

TEST(Evaluate, PrimitivePositiveTruthPersistsInLargerFragments)
{
    int k = 2;
    std::mt19937_64 rng(8);
    auto small = make_fragment(5, k), large = make_fragment(6, k);
    for (auto & f : corpus::formulas(23, 60, true))
        for (int trial = 0 ; trial < 6 ; ++trial) {
            vector<KSubset> values{random_vertex(rng, small), random_vertex(rng, small), random_vertex(rng, small)};
            if (evaluate(small, f, assignment_of(small, {"x", "y", "z"}, values))) {
                EXPECT_TRUE(evaluate(large, f, assignment_of(large, {"x", "y", "z"}, values))) << print_formula(f);
            }
        }
}

TEST(Evaluate, InvariantUnderPermutationsOfTheBaseSet)
{
    int n = 6, k = 2;
    auto frag = make_fragment(n, k);
    std::mt19937_64 rng(12);
    for (auto & f : corpus::formulas(31, 40)) {
        vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto image = [&] (KSubset v) {
            std::uint64_t r = 0;
            for (int p = 0 ; p < n ; ++p)
                if (v.contains(p))
                    r |= std::uint64_t{1} << perm[p];
            return KSubset(r);
        };
        vector<KSubset> values{random_vertex(rng, frag), random_vertex(rng, frag), random_vertex(rng, frag)};
        vector<KSubset> moved{image(values[0]), image(values[1]), image(values[2])};
        EXPECT_EQ(evaluate(frag, f, assignment_of(frag, {"x", "y", "z"}, values)),
                evaluate(frag, f, assignment_of(frag, {"x", "y", "z"}, moved))) << print_formula(f);
    }
}

TEST(Evaluate, DefinedRelationMatchesPointwiseEvaluation)
{
    auto frag = make_fragment(5, 2);
    auto f = parse_formula("(exists (z) (and (E x z) (E z y) (neq x y)))");
    auto r = defined_relation(frag, f);
    EXPECT_EQ(r.arity, 2);
    for (std::size_t a = 0 ; a < frag.vertex_count() ; ++a)
        for (std::size_t b = 0 ; b < frag.vertex_count() ; ++b) {
            oracle::Env env{{"x", frag.vertices[a]}, {"y", frag.vertices[b]}};
            EXPECT_EQ(r.contains({a, b}), oracle::evaluate(f, 2, frag.vertices, env));
        }
    EXPECT_THROW(defined_relation(frag, parse_formula("(exists (x) (E x x))")), InvalidInput);
}

TEST(Solver, AgreesWithFullEnumeration)
{
    int k = 2;
    auto instances = all_small_instances();
    for (int n = 4 ; n <= 5 ; ++n) {
        auto frag = make_fragment(n, k, symbols_for_csp());
        for (auto & inst : instances) {
            bool expected = naive_solve(inst, frag.vertices, k);
            auto solution = solve_csp(inst, frag);
            ASSERT_EQ(solution.has_value(), expected);
            if (solution) {
                std::map<string, KSubset> env;
                for (auto & [name, index] : *solution)
                    env[name] = frag.vertices[index];
                for (auto & c : inst.constraints)
                    EXPECT_TRUE(oracle::holds(c.rel, k, {env[c.scope[0]], env[c.scope[1]]}));
            }
        }
    }
}

TEST(Solver, UnboundedMatchesALargeEnoughFragment)
{
    // three variables never need more than 3k points
    int k = 2;
    auto frag = make_fragment(6, k);
    for (auto & inst : all_small_instances()) {
        bool expected = naive_solve(inst, frag.vertices, k);
        auto solution = solve_csp_unbounded(inst, k);
        ASSERT_EQ(solution.has_value(), expected);
        if (solution) {
            std::map<string, KSubset> env;
            for (auto & [name, members] : *solution) {
                EXPECT_EQ(static_cast<int>(members.size()), k);
                env[name] = KSubset::from_members(members);
            }
            for (auto & c : inst.constraints)
                EXPECT_TRUE(oracle::holds(c.rel, k, {env[c.scope[0]], env[c.scope[1]]}));
        }
    }
}

TEST(Solver, RejectsMalformedInstances)
{
    auto frag = make_fragment(4, 2);
    EXPECT_THROW(solve_csp(CSPInstance{{"a"}, {Constraint{RelationSymbol::edge(), {"a", "b"}}}}, frag), InvalidInput);
    EXPECT_THROW(solve_csp(CSPInstance{{"a", "a"}, {}}, frag), InvalidInput);
    EXPECT_THROW(solve_csp(CSPInstance{{"a", "b"}, {Constraint{RelationSymbol::edge(), {"a"}}}}, frag), InvalidInput);
}

TEST(CheckDefinition, CounterexampleIsTheFirstDisagreement)
{
    int n = 5, k = 2;
    auto frag = make_fragment(n, k);
    // defines S_{>=0} (everything), compared against S_1
    BuiltinParams p;
    p.i = 1;
    p.j = 1;
    auto f = builtin("down", k, p);
    auto target = RelationSymbol::exact(1);
    CheckOptions full;
    full.orbit_reduction = false;
    auto report = check_definition(frag, f, {"x", "y"}, target, full);
    ASSERT_FALSE(report.pass);
    ASSERT_TRUE(report.counterexample);

    std::optional<vector<KSubset>> first;
    for (auto a : frag.vertices) {
        for (auto b : frag.vertices) {
            oracle::Env env{{"x", a}, {"y", b}};
            if (oracle::evaluate(f, k, frag.vertices, env) != oracle::holds(target, k, {a, b})) {
                first = vector<KSubset>{a, b};
                break;
            }
        }
        if (first)
            break;
    }
    ASSERT_TRUE(first);
    EXPECT_EQ(report.counterexample->tuple, *first);
    EXPECT_EQ(report.counterexample->expected, oracle::holds(target, k, *first));
    EXPECT_NE(report.counterexample->formula_value, report.counterexample->expected);
}

TEST(CheckDefinition, OrbitReductionAndJobsDoNotChangeVerdicts)
{
    int k = 2;
    auto frag = make_fragment(6, k);
    for (auto & f : corpus::formulas(41, 30, true)) {
        auto free = vector<string>{"x", "y"};
        // close off z so the formula is binary
        auto g = Formula::exists({"z"}, f);
        for (auto & target : {RelationSymbol::exact(0), RelationSymbol::edge(), RelationSymbol::at_least(0)}) {
            CheckOptions full, reduced, parallel;
            full.orbit_reduction = false;
            parallel.orbit_reduction = false;
            parallel.jobs = 3;
            auto a = check_definition(frag, g, free, target, full);
            auto b = check_definition(frag, g, free, target, reduced);
            auto c = check_definition(frag, g, free, target, parallel);
            EXPECT_EQ(a.pass, b.pass) << print_formula(g);
            EXPECT_EQ(a.pass, c.pass);
            if (a.counterexample && c.counterexample) {
                EXPECT_EQ(a.counterexample->tuple, c.counterexample->tuple);
            }
        }
    }
}

TEST(CheckDefinition, BudgetIsNotAVerdict)
{
    auto frag = make_fragment(8, 2);
    CheckOptions tiny;
    tiny.node_budget = 5;
    tiny.orbit_reduction = false;
    BuiltinParams p;
    p.i = 1;
    EXPECT_THROW(check_definition(frag, builtin("flip", 2, p), {"x", "y"}, RelationSymbol::at_most(1), tiny),
            BudgetExceeded);
}
