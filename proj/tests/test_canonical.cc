/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/canonical.hh>
#include <johnson/errors.hh>
#include <johnson/io.hh>

#include <gtest/gtest.h>

#include <bit>
#include <random>

using namespace johnson;
using std::vector;

namespace
{
    using Matrix = vector<vector<bool>>;

    auto closure_matrix(int size, const Relation2 & r) -> Matrix
    {
        Matrix m(size, vector<bool>(size, false));
        for (int a = 0 ; a < size ; ++a)
            m[a][a] = true;
        for (auto [a, b] : r)
            m[a][b] = m[b][a] = true;
        for (int c = 0 ; c < size ; ++c)
            for (int a = 0 ; a < size ; ++a)
                for (int b = 0 ; b < size ; ++b)
                    if (m[a][c] && m[c][b])
                        m[a][b] = true;
        return m;
    }

    auto matrix_of(const Partition & p) -> Matrix
    {
        int size = static_cast<int>(p.size());
        Matrix m(size, vector<bool>(size, false));
        for (int a = 0 ; a < size ; ++a)
            for (int b = 0 ; b < size ; ++b)
                m[a][b] = related(p, a, b);
        return m;
    }

    auto random_relation(std::mt19937_64 & rng, int size, int pairs) -> Relation2
    {
        Relation2 r;
        std::uniform_int_distribution<int> pick(0, size - 1);
        for (int i = 0 ; i < pairs ; ++i)
            r.emplace_back(pick(rng), pick(rng));
        return r;
    }

    // b(I n J) = b(I) n b(J)
    auto meet_preserving_naive(const BehaviorMap & b) -> bool
    {
        for (IndexSet I = 0 ; I < b.table.size() ; ++I)
            for (IndexSet J = 0 ; J < b.table.size() ; ++J)
                if (b(I & J) != (b(I) & b(J)))
                    return false;
        return true;
    }
}

TEST(Partitions, ClosureMatchesTransitiveClosure)
{
    std::mt19937_64 rng(1);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        int size = 1 + trial % 12;
        auto r = random_relation(rng, size, trial % 9);
        auto p = eq_closure(size, r);
        EXPECT_EQ(matrix_of(p), closure_matrix(size, r));
        for (int a = 0 ; a < size ; ++a)
            EXPECT_LE(p[a], a);
    }
}

TEST(Partitions, JoinAndRefinement)
{
    std::mt19937_64 rng(2);
    for (int trial = 0 ; trial < 200 ; ++trial) {
        int size = 2 + trial % 10;
        auto r = random_relation(rng, size, 3), s = random_relation(rng, size, 3);
        auto p = eq_closure(size, r), q = eq_closure(size, s);
        auto both = r;
        both.insert(both.end(), s.begin(), s.end());
        EXPECT_EQ(matrix_of(join(p, q)), closure_matrix(size, both));
        EXPECT_TRUE(refines(p, join(p, q)));
        EXPECT_TRUE(refines(q, join(p, q)));
        EXPECT_EQ(eq_closure(size, pairs_of(p)), p);
        auto naive = true;
        auto mp = matrix_of(p), mq = matrix_of(q);
        for (int a = 0 ; a < size ; ++a)
            for (int b = 0 ; b < size ; ++b)
                naive = naive && (! mp[a][b] || mq[a][b]);
        EXPECT_EQ(refines(p, q), naive);
    }
}

TEST(Partitions, AgreementRelations)
{
    auto pool = generic_pool(3, 6);
    for (IndexSet I = 0 ; I <= full_index_set(3) ; ++I) {
        auto p = E_I_relation(pool, I);
        for (std::size_t a = 0 ; a < pool.size() ; ++a)
            for (std::size_t b = 0 ; b < pool.size() ; ++b) {
                bool agree = true;
                for (int i = 1 ; i <= 3 ; ++i)
                    if ((I >> (i - 1)) & 1)
                        agree = agree && pool[a][i] == pool[b][i];
                EXPECT_EQ(related(p, a, b), agree);
            }
    }
}

TEST(PairTypes, EqualityAndLeftSets)
{
    auto a = OrderedKTuple::of_ints({1, 3, 5}), b = OrderedKTuple::of_ints({1, 5, 7});
    auto d = pair_type_data(a, b);
    EXPECT_EQ(d.equal, IndexSet{0b001});
    EXPECT_EQ(d.left, IndexSet{0b101});
    EXPECT_EQ(pair_orbit_code(a, b), pair_orbit_code(OrderedKTuple::of_ints({0, 2, 4}), OrderedKTuple::of_ints({0, 4, 9})));
    EXPECT_NE(pair_orbit_code(a, b), pair_orbit_code(b, a));
}

TEST(Behavior, CosingletonTablesAreMeetPreserving)
{
    for (int k = 1 ; k <= 3 ; ++k) {
        int count = 1 << (k * k);
        for (int code = 0 ; code < count ; ++code) {
            vector<IndexSet> cos(k);
            for (int i = 0 ; i < k ; ++i)
                cos[i] = (code >> (i * k)) & full_index_set(k);
            auto b = behavior_from_cosingletons(k, cos);
            EXPECT_EQ(b(full_index_set(k)), full_index_set(k));
            for (int i = 0 ; i < k; ++i)
                EXPECT_EQ(b(full_index_set(k) & ~(IndexSet{1} << i)), cos[i]);
            EXPECT_TRUE(meet_preserving_naive(b));
            EXPECT_EQ(is_meet_preserving(b), true);
        }
    }
}

TEST(Behavior, PermutationalTables)
{
    EXPECT_TRUE(is_permutational(identity_behavior(3)));
    // the cosingleton of i goes to the cosingleton of pi(i)
    vector<int> pi{2, 3, 1};
    vector<IndexSet> cos(3);
    for (int i = 0 ; i < 3 ; ++i)
        cos[i] = full_index_set(3) & ~(IndexSet{1} << (pi[i] - 1));
    auto b = behavior_from_cosingletons(3, cos);
    auto found = is_permutational(b);
    ASSERT_TRUE(found);
    EXPECT_EQ(*found, pi);
    cos[0] = cos[1];
    EXPECT_FALSE(is_permutational(behavior_from_cosingletons(3, cos)));
}

TEST(Dichotomy, ShrinkingChainsOnEveryNonPermutationalTable)
{
    for (int k = 2 ; k <= 3 ; ++k) {
        int count = 1 << (k * k), checked = 0;
        for (int code = 0 ; code < count ; ++code) {
            vector<IndexSet> cos(k);
            for (int i = 0 ; i < k ; ++i)
                cos[i] = (code >> (i * k)) & full_index_set(k);
            auto b = behavior_from_cosingletons(k, cos);
            if (b(0) != 0 || is_permutational(b))
                continue;
            auto result = shrinking_chain(b);
            ASSERT_TRUE(result.chain) << result.failure;
            auto & chain = *result.chain;
            ASSERT_EQ(static_cast<int>(chain.size()), k - 1);
            // the bound, checked here without the library's helper
            IndexSet seen = 0, meet = full_index_set(k);
            for (int l = 1 ; l <= k - 1 ; ++l) {
                int i = chain[l - 1];
                ASSERT_GE(i, 1);
                ASSERT_LE(i, k);
                EXPECT_FALSE((seen >> (i - 1)) & 1);
                seen |= IndexSet{1} << (i - 1);
                meet &= b(full_index_set(k) & ~(IndexSet{1} << (i - 1)));
                EXPECT_LE(std::popcount(meet), k - l - 1);
            }
            EXPECT_TRUE(chain_satisfies(b, chain));
            ++checked;
        }
        EXPECT_GT(checked, 0);
    }
}

TEST(Dichotomy, FullEnumeration)
{
    for (int k = 2 ; k <= 3 ; ++k) {
        auto report = verify_permutational_dichotomy(k);
        EXPECT_EQ(report.tables, std::uint64_t{1} << (k * k));
        EXPECT_TRUE(report.pass());
        EXPECT_EQ(report.violations, 0u);
    }
    EXPECT_THROW(verify_permutational_dichotomy(5), BudgetExceeded);
}

TEST(FragmentMaps, Battery)
{
    for (int k = 2 ; k <= 3 ; ++k) {
        auto pool = generic_pool(k);
        EXPECT_TRUE(pool_adequacy(pool).ok());

        auto id = behavior_of(identity_map(pool));
        ASSERT_TRUE(id.map);
        EXPECT_EQ(*id.map, identity_behavior(k));

        auto rev = behavior_of(reversal_map(pool));
        ASSERT_TRUE(rev.map);
        auto pi = is_permutational(*rev.map);
        ASSERT_TRUE(pi);
        for (int i = 1 ; i <= k ; ++i)
            EXPECT_EQ((*pi)[i - 1], k + 1 - i);

        for (auto & fm : {identity_map(pool), collapse_last_map(pool), automorphism_map(pool), reversal_map(pool)}) {
            EXPECT_TRUE(canonicity_check(fm).canonical);
            auto report = verify_pair_lemmas(fm);
            EXPECT_TRUE(report.pass());
            for (auto & c : report.checks)
                EXPECT_TRUE(! c.applicable || c.pass) << c.name;
            EXPECT_TRUE(verify_image_join(fm).pass);
        }
    }
}

TEST(FragmentMaps, CollapsingTheLastCoordinate)
{
    // every image shares its last coordinate, and images agree on the first
    // coordinate exactly when the arguments do
    auto b = behavior_of(collapse_last_map(generic_pool(2)));
    ASSERT_TRUE(b.map);
    EXPECT_EQ(b.map->table, (vector<IndexSet>{0b10, 0b11, 0b10, 0b11}));
}

TEST(FragmentMaps, SwappedImagesAreNotCanonical)
{
    auto pool = generic_pool(2);
    auto entries = identity_map(pool).entries();
    std::swap(entries[0].second, entries[1].second);
    auto report = canonicity_check(FragmentMap(2, entries));
    EXPECT_FALSE(report.canonical);
    EXPECT_TRUE(report.witness);
    EXPECT_FALSE(verify_pair_lemmas(FragmentMap(2, entries)).pass());
}

TEST(FragmentMaps, RepeatedDomainTuplesAreRejected)
{
    auto t = OrderedKTuple::of_ints({0, 1});
    EXPECT_THROW(FragmentMap(2, {{t, t}, {t, t}}), InvalidInput);
}

TEST(ClosureLaws, RandomRelations)
{
    std::mt19937_64 rng(7);
    EXPECT_TRUE(verify_closure_laws(10, rng, 500).pass);
    for (int k = 2 ; k <= 3 ; ++k) {
        EXPECT_TRUE(verify_join(generic_pool(k)).pass);
        EXPECT_TRUE(verify_image_closure(collapse_last_map(generic_pool(k)), rng, 200).pass);
    }
}

TEST(Json, BehaviorAndFragmentMapsRoundTrip)
{
    auto b = identity_behavior(3);
    EXPECT_EQ(behavior_from_json(json_of(b)), b);
    auto fm = automorphism_map(generic_pool(2));
    auto back = fragment_map_from_json(json_of(fm));
    EXPECT_EQ(back.entries(), fm.entries());
    EXPECT_THROW(behavior_from_json(parse_json(R"({"k": 2, "table": {"0": "0"}})")), InvalidInput);
}
