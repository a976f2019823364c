/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/errors.hh>
#include <johnson/io.hh>
#include <johnson/ordered.hh>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace johnson;
using std::vector;

namespace
{
    auto random_tuples(std::mt19937_64 & rng, int count, int k, int range) -> vector<OrderedKTuple>
    {
        vector<OrderedKTuple> result;
        while (static_cast<int>(result.size()) < count) {
            std::set<std::int64_t> coords;
            while (static_cast<int>(coords.size()) < k)
                coords.insert(std::uniform_int_distribution<std::int64_t>(0, range)(rng));
            auto t = OrderedKTuple::of_ints(vector<std::int64_t>(coords.begin(), coords.end()));
            if (std::find(result.begin(), result.end(), t) == result.end())
                result.push_back(t);
        }
        return result;
    }

    // the comparison flags read straight off the coordinates
    auto same_order_type(const vector<OrderedKTuple> & a, const vector<OrderedKTuple> & b) -> bool
    {
        if (a.size() != b.size())
            return false;
        for (std::size_t x = 0 ; x < a.size() ; ++x)
            for (std::size_t y = 0 ; y < a.size() ; ++y)
                for (int r = 1 ; r <= a[x].k() ; ++r)
                    for (int s = 1 ; s <= a[y].k() ; ++s) {
                        if ((a[x][r] < a[y][s]) != (b[x][r] < b[y][s]))
                            return false;
                        if ((a[x][r] == a[y][s]) != (b[x][r] == b[y][s]))
                            return false;
                    }
        return true;
    }

    // a =_11 b, b =_11 c, a <_11 c at k = 2; second coordinates are
    // increasing and above every first coordinate
    auto stated_axioms_counterexample() -> OrderedStructure
    {
        OrderedStructure s(2, 3);
        auto set = [&] (int a, int r, int b, int t, int c) { s.set_comparison(a, r, b, t, c); };
        for (int a = 0 ; a < 3 ; ++a) {
            set(a, 1, a, 1, 0);
            set(a, 2, a, 2, 0);
            set(a, 1, a, 2, -1);
        }
        set(0, 1, 1, 1, 0);
        set(1, 1, 2, 1, 0);
        set(0, 1, 2, 1, -1);
        for (int a = 0 ; a < 3 ; ++a)
            for (int b = 0 ; b < 3 ; ++b)
                if (a != b) {
                    set(a, 1, b, 2, -1);
                    set(a, 2, b, 2, a < b ? -1 : 1);
                }
        return s;
    }
}

TEST(Rationals, ParseAndPrint)
{
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_EQ(rational_to_string(Rational(-3, 2)), "-3/2");
    EXPECT_EQ(rational_to_string(Rational(4)), "4");
    EXPECT_THROW(parse_rational("1/0"), InvalidInput);
    EXPECT_THROW(parse_rational("x"), InvalidInput);
    EXPECT_THROW(OrderedKTuple::of_ints({2, 1}), InvalidInput);
    EXPECT_THROW(OrderedKTuple::of_ints({1, 1}), InvalidInput);
}

TEST(OrderedFlags, ReadOffCoordinates)
{
    auto a = OrderedKTuple::of_ints({1, 4}), b = OrderedKTuple::of_ints({4, 9});
    auto f = ordered_relations(a, b, 2, 1);
    EXPECT_TRUE(f.equal);
    EXPECT_FALSE(f.less);
    EXPECT_FALSE(f.greater);
    f = ordered_relations(a, b, 1, 2);
    EXPECT_TRUE(f.less);
}

TEST(Embedding, InducedStructuresEmbedWithTheSameOrderType)
{
    std::mt19937_64 rng(21);
    for (int trial = 0 ; trial < 300 ; ++trial) {
        int k = 1 + trial % 4, size = 1 + trial % 6;
        auto tuples = random_tuples(rng, size, k, 3 * k + size);
        auto s = induced_structure(tuples);
        EXPECT_TRUE(is_flag_consistent(s));
        EXPECT_FALSE(check_axioms(s, AxiomSet::Stated));
        EXPECT_FALSE(check_axioms(s, AxiomSet::Complete));
        auto result = embed(s);
        ASSERT_TRUE(std::holds_alternative<vector<OrderedKTuple>>(result));
        auto & image = std::get<vector<OrderedKTuple>>(result);
        EXPECT_TRUE(same_order_type(tuples, image));
        EXPECT_EQ(induced_structure(image), s);
    }
}

TEST(Embedding, PerturbedStructuresAgreeAcrossAllThreeRoutes)
{
    std::mt19937_64 rng(5);
    int rejected = 0;
    for (int trial = 0 ; trial < 300 ; ++trial) {
        auto tuples = random_tuples(rng, 3, 2, 8);
        auto s = induced_structure(tuples);
        // move one comparison between different elements to another value
        int a = 0, b = 1 + trial % 2, r = 1 + (trial / 2) % 2, t = 1 + (trial / 4) % 2;
        int c = s.less(a, r, b, t) ? -1 : s.equal(a, r, b, t) ? 0 : 1;
        s.set_comparison(a, r, b, t, c == 1 ? -1 : c + 1);
        bool axioms_ok = ! check_axioms(s);
        auto result = embed(s);
        bool embedded = std::holds_alternative<vector<OrderedKTuple>>(result);
        EXPECT_EQ(axioms_ok, embedded);
        EXPECT_EQ(brute_force_embed(s, 6), embedded);
        if (embedded) {
            EXPECT_EQ(induced_structure(std::get<vector<OrderedKTuple>>(result)), s);
        }
        else {
            auto & failure = std::get<EmbedFailure>(result);
            ASSERT_TRUE(failure.violation);
            EXPECT_TRUE(violates(s, *failure.violation));
            ++rejected;
        }
    }
    EXPECT_GT(rejected, 0);
}

TEST(Embedding, SixStatedSchemesAdmitANonEmbeddableStructure)
{
    auto s = stated_axioms_counterexample();
    EXPECT_TRUE(is_flag_consistent(s));
    EXPECT_FALSE(check_axioms(s, AxiomSet::Stated));
    auto violation = check_axioms(s, AxiomSet::Complete);
    ASSERT_TRUE(violation);
    EXPECT_TRUE(violates(s, *violation));
    EXPECT_FALSE(brute_force_embed(s, 6));
    EXPECT_TRUE(std::holds_alternative<EmbedFailure>(embed(s, AxiomSet::Stated)));
}

TEST(Embedding, BruteForceAgreesOnInducedStructures)
{
    std::mt19937_64 rng(9);
    for (int trial = 0 ; trial < 40 ; ++trial) {
        auto s = induced_structure(random_tuples(rng, 3, 2, 20));
        EXPECT_TRUE(brute_force_embed(s, 6));
    }
}

TEST(Embedding, EmptyStructure)
{
    OrderedStructure s(3, 0);
    EXPECT_FALSE(check_axioms(s));
    auto result = embed(s);
    ASSERT_TRUE(std::holds_alternative<vector<OrderedKTuple>>(result));
    EXPECT_TRUE(std::get<vector<OrderedKTuple>>(result).empty());
}

TEST(Sweep, CompleteAxiomsMatchEmbeddabilityOnSmallStructures)
{
    auto report = sweep_ordered_structures(2, 3, AxiomSet::Complete);
    EXPECT_TRUE(report.pass());
    EXPECT_GT(report.accepted, 0u);
    EXPECT_GT(report.pruned, 0u);
}

TEST(Sweep, StatedAxiomsAloneFindAMismatch)
{
    auto report = sweep_ordered_structures(2, 3, AxiomSet::Stated, true);
    EXPECT_FALSE(report.pass());
    ASSERT_TRUE(report.first_mismatch);
    auto & m = *report.first_mismatch;
    EXPECT_TRUE(m.axioms_ok);
    EXPECT_FALSE(m.brute_force);
    EXPECT_FALSE(check_axioms(m.structure, AxiomSet::Stated));
    EXPECT_FALSE(brute_force_embed(m.structure, 6));
}

TEST(Homogeneity, IsomorphismsBetweenSubstructuresExtend)
{
    auto report = homogeneity_probe(4, 2, 2);
    EXPECT_GT(report.isomorphisms, 0u);
    EXPECT_EQ(report.failures, 0u);
}

TEST(BooleanCombination, DiagonalReadingAgreesWithIntersectionSize)
{
    for (int k = 2 ; k <= 3 ; ++k)
        for (int i = 0 ; i <= k ; ++i) {
            auto report = verify_si_boolean_combination(k, i, 2 * k + 1);
            EXPECT_TRUE(report.pass()) << k << " " << i;
            EXPECT_GT(report.pairs, 0u);
        }
}

TEST(BooleanCombination, ToJohnsonUsesRanks)
{
    vector<Rational> points{Rational(-1), Rational(1, 2), Rational(3), Rational(7)};
    auto a = OrderedKTuple(vector<Rational>{Rational(1, 2), Rational(7)});
    EXPECT_EQ(to_johnson(a, points), KSubset::from_members({1, 3}));
    EXPECT_THROW(to_johnson(OrderedKTuple::of_ints({2, 3}), points), InvalidInput);
}

TEST(StructureJson, RoundTripAndTotality)
{
    std::mt19937_64 rng(2);
    auto s = induced_structure(random_tuples(rng, 3, 2, 9));
    auto j = json_of(s);
    EXPECT_EQ(structure_from_json(j), s);
    j["less"] = Json::array();
    j["equal"] = Json::array();
    EXPECT_THROW(structure_from_json(j), InvalidInput);
    EXPECT_THROW(structure_from_json(parse_json(R"({"k": 2, "elements": 1, "less": [[0, 3, 0, 1]], "equal": []})")), InvalidInput);
}
