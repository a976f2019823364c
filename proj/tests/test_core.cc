/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <johnson/errors.hh>
#include <johnson/fragment.hh>

#include <gtest/gtest.h>

#include <set>

using namespace johnson;
using std::vector;

namespace
{
    auto binary_symbols(int k) -> vector<RelationSymbol>
    {
        vector<RelationSymbol> result;
        for (int i = 0 ; i <= k ; ++i) {
            result.push_back(RelationSymbol::exact(i));
            result.push_back(RelationSymbol::at_most(i));
            result.push_back(RelationSymbol::at_least(i));
        }
        result.push_back(RelationSymbol::edge());
        if (k >= 2) {
            result.push_back(RelationSymbol::near());
            result.push_back(RelationSymbol::overlap());
        }
        result.push_back(RelationSymbol::eq());
        result.push_back(RelationSymbol::neq());
        result.push_back(RelationSymbol::union_of(0b101));
        return result;
    }

}

TEST(KSubset, ColexRankRoundTrip)
{
    for (int k = 0 ; k <= 4 ; ++k) {
        auto verts = oracle::vertices(9, k);
        for (std::size_t r = 0 ; r < verts.size() ; ++r) {
            EXPECT_EQ(verts[r].colex_rank(), r);
            EXPECT_EQ(KSubset::colex_unrank(r, k), verts[r]);
        }
    }
}

TEST(KSubset, RejectsBadMembers)
{
    EXPECT_THROW(KSubset::from_members({1, 1}), InvalidInput);
    EXPECT_THROW(KSubset::from_members({64}), InvalidInput);
    EXPECT_EQ(KSubset::from_members({3, 0}).members(), (vector<int>{0, 3}));
}

TEST(Fragment, VerticesAreAllKSubsets)
{
    for (int n = 0 ; n <= 8 ; ++n)
        for (int k = 0 ; k <= n ; ++k) {
            auto frag = make_fragment(n, k);
            EXPECT_EQ(frag.vertices, oracle::vertices(n, k)) << n << " " << k;
            EXPECT_EQ(frag.vertex_count(), binomial(n, k));
        }
}

TEST(Fragment, Errors)
{
    EXPECT_THROW(make_fragment(3, 4), InvalidInput);
    EXPECT_THROW(make_fragment(70, 3), BudgetExceeded);
    EXPECT_THROW(make_fragment(30, 10, 1000), BudgetExceeded);
}

TEST(Fragment, EmptyRelationsOnSmallFragments)
{
    // S_0 needs 2k points
    auto frag = make_fragment(5, 3);
    auto stream = enumerate_relation(frag, RelationSymbol::exact(0));
    vector<KSubset> t;
    EXPECT_FALSE(stream.next(t));
}

TEST(RelationSymbol, TextRoundTrip)
{
    for (auto text : {"S0", "S3", "Sle2", "Sge1", "S3_1", "C1", "E", "N", "O", "eq", "neq", "SI{0,2}"}) {
        auto s = RelationSymbol::parse(text);
        EXPECT_EQ(s.to_string(), text);
        EXPECT_EQ(RelationSymbol::parse(s.to_string()), s);
    }
    EXPECT_THROW(RelationSymbol::parse("S"), InvalidInput);
    EXPECT_THROW(RelationSymbol::parse("Q1"), InvalidInput);
}

TEST(Relations, BinaryMembershipMatchesDefinitions)
{
    for (auto [n, k] : {std::pair{5, 2}, {6, 3}, {7, 3}, {8, 4}}) {
        auto frag = make_fragment(n, k);
        for (auto & s : binary_symbols(k))
            for (auto a : frag.vertices)
                for (auto b : frag.vertices) {
                    vector<KSubset> t{a, b};
                    ASSERT_EQ(in_relation(frag, s, t), oracle::holds(s, k, t)) << s.to_string();
                }
    }
}

TEST(Relations, StreamListsEachMemberOnceInOrder)
{
    int n = 6, k = 2;
    auto frag = make_fragment(n, k);
    vector<RelationSymbol> symbols = binary_symbols(k);
    symbols.push_back(RelationSymbol::sunflower(3, 1));
    symbols.push_back(RelationSymbol::core(1));
    for (auto & s : symbols) {
        int arity = s.arity();
        vector<vector<KSubset>> expected;
        vector<std::size_t> idx(arity, 0);
        while (true) {
            vector<KSubset> t;
            for (auto i : idx)
                t.push_back(frag.vertices[i]);
            if (oracle::holds(s, k, t))
                expected.push_back(t);
            int p = arity - 1;
            while (p >= 0 && ++idx[p] == frag.vertex_count())
                idx[p--] = 0;
            if (p < 0)
                break;
        }
        vector<vector<KSubset>> got;
        auto stream = enumerate_relation(frag, s);
        for (vector<KSubset> t ; stream.next(t) ; )
            got.push_back(t);
        EXPECT_EQ(got, expected) << s.to_string();
    }
}

TEST(Orbits, PairOrbitCountFormula)
{
    for (int n = 1 ; n <= 8 ; ++n)
        for (int k = 0 ; k <= std::min(n, 4) ; ++k) {
            int expected = std::min(k, n - k) + 1;
            EXPECT_EQ(oracle::pair_orbits_by_generators(n, k), expected) << n << " " << k;
            EXPECT_EQ(orbit_representatives(make_fragment(n, k), 2).size(), static_cast<std::size_t>(expected)) << n << " " << k;
        }
}

TEST(Orbits, RepresentativesAreLeastAndDistinct)
{
    // every triple's orbit label occurs among the representatives exactly once
    int n = 6, k = 2;
    auto frag = make_fragment(n, k);
    auto reps = orbit_representatives(frag, 3);
    std::set<TupleOrbitLabel> labels;
    for (auto & r : reps)
        EXPECT_TRUE(labels.insert(tuple_orbit_label(r, n)).second);
    std::set<TupleOrbitLabel> all;
    for (auto a : frag.vertices)
        for (auto b : frag.vertices)
            for (auto c : frag.vertices) {
                vector<KSubset> t{a, b, c};
                all.insert(tuple_orbit_label(t, n));
            }
    EXPECT_EQ(labels, all);
}

TEST(Orbits, LabelsSeparateExactlyThePermutationOrbits)
{
    int n = 5, k = 2;
    auto verts = oracle::vertices(n, k);
    vector<vector<int>> perms;
    vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do
        perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    auto image = [&] (KSubset v, const vector<int> & p) {
        std::uint64_t r = 0;
        for (int x = 0 ; x < n ; ++x)
            if (v.contains(x))
                r |= std::uint64_t{1} << p[x];
        return KSubset(r);
    };

    std::map<vector<KSubset>, TupleOrbitLabel> label_of_orbit;
    for (auto a : verts)
        for (auto b : verts)
            for (auto c : verts) {
                vector<KSubset> least{a, b, c};
                for (auto & p : perms)
                    least = std::min(least, vector<KSubset>{image(a, p), image(b, p), image(c, p)});
                vector<KSubset> t{a, b, c};
                auto label = tuple_orbit_label(t, n);
                auto [it, fresh] = label_of_orbit.emplace(least, label);
                EXPECT_EQ(it->second, label);
            }
    std::set<TupleOrbitLabel> distinct;
    for (auto & [_, label] : label_of_orbit)
        distinct.insert(label);
    EXPECT_EQ(distinct.size(), label_of_orbit.size());
}
