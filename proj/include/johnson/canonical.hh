/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_CANONICAL_HH
#define JOHNSON_CANONICAL_HH 1

#include <johnson/ordered.hh>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace johnson
{
    /// A subset of [k]: bit i-1 stands for i.
    using IndexSet = std::uint32_t;

    inline auto full_index_set(int k) -> IndexSet { return (IndexSet{1} << k) - 1; }

    /// "{1,3}" style.
    auto index_set_to_string(IndexSet I) -> std::string;

    using Relation2 = std::vector<std::pair<int, int>>;

    /// An equivalence relation on 0 .. size-1, as the least member of each
    /// element's class.
    using Partition = std::vector<int>;

    auto eq_closure(int size, const Relation2 & r) -> Partition;
    inline auto related(const Partition & p, int a, int b) -> bool { return p[a] == p[b]; }

    /// Every pair in p is also in q.
    auto refines(const Partition & p, const Partition & q) -> bool;

    /// Least equivalence containing both.
    auto join(const Partition & p, const Partition & q) -> Partition;

    auto pairs_of(const Partition & p) -> Relation2;

    /// Tuples related iff they agree on every coordinate in I.
    auto E_I_relation(const std::vector<OrderedKTuple> & pool, IndexSet I) -> Partition;

    /// Coordinates where a and b agree, and coordinates of a occurring
    /// anywhere in b.
    struct PairTypeData
    {
        IndexSet equal = 0;
        IndexSet left = 0;
    };

    auto pair_type_data(const OrderedKTuple & a, const OrderedKTuple & b) -> PairTypeData;

    /// Orbit of (a, b) under coordinatewise automorphisms of the rationals:
    /// the comparison of every a_r with every b_s, as a number.
    auto pair_orbit_code(const OrderedKTuple & a, const OrderedKTuple & b) -> std::uint64_t;

    struct BehaviorMap
    {
        int k = 0;
        std::vector<IndexSet> table;

        auto operator() (IndexSet I) const -> IndexSet { return table.at(I); }
        auto operator== (const BehaviorMap &) const -> bool = default;
    };

    auto identity_behavior(int k) -> BehaviorMap;

    auto is_meet_preserving(const BehaviorMap & b) -> bool;

    /// pi[i-1] is the image of i, when b(I) = pi(I) for every I.
    auto is_permutational(const BehaviorMap & b) -> std::optional<std::vector<int>>;

    /// cosingleton[i-1] is the value on [k] minus {i}; other values are
    /// intersections of those, with the empty intersection (at [k]) [k].
    auto behavior_from_cosingletons(int k, const std::vector<IndexSet> & cosingleton) -> BehaviorMap;

    /// i_1 .. i_{k-1} with the intersection of b([k] - {i_j}) over j <= l of
    /// size at most k - l - 1, built greedily: start at a small
    /// co-singleton image, then drop a surviving index each step.
    struct ChainResult
    {
        std::optional<std::vector<int>> chain;
        std::string failure;
    };

    auto shrinking_chain(const BehaviorMap & b) -> ChainResult;

    /// Independent check of the size bounds along a chain.
    auto chain_satisfies(const BehaviorMap & b, const std::vector<int> & chain) -> bool;

    struct DichotomyReport
    {
        int k = 0;
        std::uint64_t tables = 0;
        /// Tables whose value at the empty set is empty.
        std::uint64_t retained = 0;
        std::uint64_t permutational = 0;
        /// Non-permutational retained tables with a co-singleton image of
        /// size at most k - 2.
        std::uint64_t small_image = 0;
        std::uint64_t violations = 0;
        std::uint64_t chains = 0;
        std::uint64_t chain_failures = 0;
        /// Permutational tables that were also counted as small_image.
        std::uint64_t permutational_flagged = 0;
        std::optional<BehaviorMap> first_violation;

        auto pass() const -> bool { return violations == 0 && chain_failures == 0 && permutational_flagged == 0; }
    };

    /// All 2^(k^2) co-singleton tables. Throws BudgetExceeded for k > 4.
    auto verify_permutational_dichotomy(int k) -> DichotomyReport;

    /// A finite function between sets of tuples.
    class FragmentMap
    {
        private:
            int _k = 0;
            std::vector<std::pair<OrderedKTuple, OrderedKTuple>> _entries;

        public:
            FragmentMap() = default;

            /// Throws InvalidInput on repeated domain tuples or mixed k.
            FragmentMap(int k, std::vector<std::pair<OrderedKTuple, OrderedKTuple>> entries);

            auto k() const -> int { return _k; }
            auto entries() const -> const std::vector<std::pair<OrderedKTuple, OrderedKTuple>> & { return _entries; }
            auto domain() const -> std::vector<OrderedKTuple>;

            /// Distinct images, sorted.
            auto image_pool() const -> std::vector<OrderedKTuple>;

            /// For each domain position, the position of its image in image_pool().
            auto image_index() const -> std::vector<int>;
    };

    auto map_pool(const std::vector<OrderedKTuple> & pool, const std::function<OrderedKTuple (const OrderedKTuple &)> & f) -> FragmentMap;

    auto identity_map(const std::vector<OrderedKTuple> & pool) -> FragmentMap;

    /// Replaces the last coordinate by a constant above every coordinate of
    /// the pool.
    auto collapse_last_map(const std::vector<OrderedKTuple> & pool) -> FragmentMap;

    /// x -> (2x + 1) / 3 on every coordinate.
    auto automorphism_map(const std::vector<OrderedKTuple> & pool) -> FragmentMap;

    /// (a_1, .., a_k) -> (-a_k, .., -a_1).
    auto reversal_map(const std::vector<OrderedKTuple> & pool) -> FragmentMap;

    /// Increasing k-tuples over 0 .. points-1, with points defaulting to a
    /// size that passes pool_adequacy for k <= 3.
    auto generic_pool(int k, int points = 0) -> std::vector<OrderedKTuple>;

    struct CanonicityReport
    {
        bool canonical = true;
        /// Two domain pairs of the same orbit whose images differ in orbit.
        std::optional<std::array<OrderedKTuple, 4>> witness;
    };

    auto canonicity_check(const FragmentMap & fm) -> CanonicityReport;

    /// The image of E_I on the domain, closed to an equivalence on the
    /// image pool.
    auto image_closure(const FragmentMap & fm, const Partition & on_domain) -> Partition;

    struct BehaviorResult
    {
        std::optional<BehaviorMap> map;
        /// Index sets whose closed image is no E_J on the image pool.
        std::vector<IndexSet> not_of_form;
    };

    /// For each I, the J with E_J equal to the closed image of E_I on the
    /// image pool. Several J can agree on a small image pool; the largest
    /// (then numerically least) is taken.
    auto behavior_of(const FragmentMap & fm) -> BehaviorResult;

    struct PoolAdequacy
    {
        /// E_I differ for different I.
        bool separates = true;
        /// E_I join E_J is E_{I cap J} for all I, J.
        bool joins = true;
        /// Each pair orbit present closes to E of its equality pattern.
        bool orbits_close = true;

        auto ok() const -> bool { return separates && joins && orbits_close; }
    };

    auto pool_adequacy(const std::vector<OrderedKTuple> & pool) -> PoolAdequacy;

    struct LemmaCheck
    {
        std::string name;
        bool applicable = true;
        bool pass = true;
        std::uint64_t checked = 0;
        std::optional<std::pair<OrderedKTuple, OrderedKTuple>> counterexample;
        std::string note;
    };

    struct PairLemmaReport
    {
        std::optional<BehaviorMap> behavior;
        bool canonical = true;
        std::vector<LemmaCheck> checks;

        auto pass() const -> bool;
    };

    /// Checks, for every ordered pair of domain tuples: the behavior map
    /// carries the equality pattern of the pair to that of its image; the
    /// left intersection set of the image lies inside the behavior of the
    /// left intersection set; disjoint pairs stay disjoint when the map
    /// sends the empty set to itself; intersections do not grow when the
    /// map is a permutation. Also, on the domain, each pair orbit present
    /// closes to E of its equality pattern. Non-canonical input and an
    /// undetermined behavior map are reported as failures of their own.
    auto verify_pair_lemmas(const FragmentMap & fm) -> PairLemmaReport;

    /// E_I join E_J = E_{I cap J} on the pool, for all I, J.
    auto verify_join(const std::vector<OrderedKTuple> & pool) -> LemmaCheck;

    /// The closed image of E_{I cap J} is the join of the closed images of
    /// E_I and E_J, for all I, J.
    auto verify_image_join(const FragmentMap & fm) -> LemmaCheck;

    /// Closing before or after taking the image gives the same
    /// equivalence, for random relations on the domain.
    auto verify_image_closure(const FragmentMap & fm, std::mt19937_64 & rng, int samples) -> LemmaCheck;

    /// Extensive, idempotent, monotone, on random relations.
    auto verify_closure_laws(int size, std::mt19937_64 & rng, int samples) -> LemmaCheck;
}

#endif
