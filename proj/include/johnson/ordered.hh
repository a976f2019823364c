/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_ORDERED_HH
#define JOHNSON_ORDERED_HH 1

#include <johnson/ksubset.hh>

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace johnson
{
    using Rational = boost::rational<std::int64_t>;

    auto rational_to_string(const Rational & q) -> std::string;

    /// Accepts "p" or "p/q". Throws InvalidInput.
    auto parse_rational(const std::string & text) -> Rational;

    /// A point of the ordered expansion: strictly increasing coordinates.
    class OrderedKTuple
    {
        private:
            std::vector<Rational> _coords;

        public:
            OrderedKTuple() = default;

            /// Throws InvalidInput unless strictly increasing and nonempty.
            explicit OrderedKTuple(std::vector<Rational> coords);
            static auto of_ints(const std::vector<std::int64_t> & coords) -> OrderedKTuple;

            auto k() const -> int { return static_cast<int>(_coords.size()); }

            /// 1-based, matching the relation indices.
            auto operator[] (int i) const -> const Rational & { return _coords.at(i - 1); }
            auto coords() const -> const std::vector<Rational> & { return _coords; }

            auto to_string() const -> std::string;

            auto operator== (const OrderedKTuple &) const -> bool = default;
            auto operator< (const OrderedKTuple & o) const -> bool { return _coords < o._coords; }
    };

    struct OrderedFlags
    {
        bool less = false, equal = false, greater = false;
    };

    /// Compares a_r with b_s. Throws InvalidInput for indices outside 1..k.
    auto ordered_relations(const OrderedKTuple & a, const OrderedKTuple & b, int r, int s) -> OrderedFlags;

    /// A finite structure in the signature <_rs, =_rs. Elements are
    /// 0 .. size-1, indices r, s are 1-based.
    class OrderedStructure
    {
        private:
            int _k = 1, _size = 0;
            std::vector<std::uint8_t> _less, _equal;

            auto index(int a, int r, int b, int s) const -> std::size_t;

        public:
            OrderedStructure() = default;

            /// All flags false.
            OrderedStructure(int k, int size);

            auto k() const -> int { return _k; }
            auto size() const -> int { return _size; }

            auto less(int a, int r, int b, int s) const -> bool { return _less[index(a, r, b, s)]; }
            auto equal(int a, int r, int b, int s) const -> bool { return _equal[index(a, r, b, s)]; }
            auto set_less(int a, int r, int b, int s, bool v) -> void { _less[index(a, r, b, s)] = v; }
            auto set_equal(int a, int r, int b, int s, bool v) -> void { _equal[index(a, r, b, s)] = v; }

            /// Sets (a,r) against (b,s) to -1 (less), 0 (equal) or 1 (greater),
            /// and the reverse comparison to match.
            auto set_comparison(int a, int r, int b, int s, int c) -> void;

            /// The substructure on the listed elements, in that order.
            auto restrict_to(const std::vector<int> & elements) const -> OrderedStructure;

            auto operator== (const OrderedStructure &) const -> bool = default;
    };

    /// The structure induced on the given tuples (all of the same k).
    auto induced_structure(const std::vector<OrderedKTuple> & tuples) -> OrderedStructure;

    /// Every (a,r) against (b,s) has exactly one of a <_rs b, a =_rs b,
    /// b <_sr a, and =_rs agrees with =_sr reversed.
    auto is_flag_consistent(const OrderedStructure & s) -> bool;

    /// The six sentence schemes quoted with the structure, or those plus
    /// the equality schemes they omit. The six alone do not axiomatize the
    /// embeddable structures: nothing forces =_rs to be transitive or
    /// compatible with <_rs, so for instance a =_11 b, b =_11 c, a <_11 c
    /// satisfies all six and embeds nowhere.
    enum class AxiomSet
    {
        Stated,
        Complete
    };

    /// Ids: qup, refl, total, antisym1, antisym2, trans; Complete adds
    /// eq_sym (x =_rs y => y =_sr x), eq_trans (x =_rs y and y =_st z =>
    /// x =_rt z) and eq_less (x =_rs y and y <_st z, or x <_rs y and
    /// y =_st z, => x <_rt z).
    struct AxiomViolation
    {
        std::string axiom;
        std::vector<int> elements;
        std::vector<int> indices;

        auto to_string() const -> std::string;
        auto operator== (const AxiomViolation &) const -> bool = default;
    };

    /// First violation scanning the schemes in the order listed above,
    /// then elements, then indices, each lexicographically.
    auto check_axioms(const OrderedStructure & s, AxiomSet axioms = AxiomSet::Complete) -> std::optional<AxiomViolation>;

    /// Re-evaluates one scheme instance; true when it is violated.
    auto violates(const OrderedStructure & s, const AxiomViolation & v) -> bool;

    struct EmbedFailure
    {
        std::optional<AxiomViolation> violation;
        std::string reason;
    };

    using EmbedResult = std::variant<std::vector<OrderedKTuple>, EmbedFailure>;

    /// Orders A x [k] by (a,i) < (b,j) iff a <_ij b with =-related pairs
    /// merged, checks that the merged order is linear, and reads off
    /// consecutive integer coordinates. Fails with the violation when the
    /// axioms fail, and with a reason when the axioms pass but the order or
    /// the read-back does not (possible only for AxiomSet::Stated).
    auto embed(const OrderedStructure & s, AxiomSet axioms = AxiomSet::Complete) -> EmbedResult;

    /// Backtracking over increasing tuples of coordinates 0 .. pool-1, one
    /// element at a time. Throws InvalidInput when size * k > pool and
    /// BudgetExceeded after node_budget partial assignments.
    auto brute_force_embed(const OrderedStructure & s, int pool, std::uint64_t node_budget = 100'000'000) -> bool;

    struct HomogeneityReport
    {
        std::uint64_t pool = 0;
        std::uint64_t isomorphisms = 0;
        std::uint64_t rejected = 0;
        std::uint64_t failures = 0;
        std::optional<std::pair<std::vector<OrderedKTuple>, std::vector<OrderedKTuple>>> first_failure;
    };

    /// Over the increasing k-tuples of 0 .. n_points-1 (the first max_pool
    /// of them in lexicographic order when max_pool > 0): every injective
    /// map between tuples of at most sub_size pool elements that preserves
    /// all flags must lift to a well-defined order-preserving map of base
    /// points, sending coordinate r of a to coordinate r of its image.
    auto homogeneity_probe(int n_points, int k, int sub_size, int max_pool = 0,
            std::uint64_t budget = 100'000'000) -> HomogeneityReport;

    /// Index of each coordinate in the sorted list of base points.
    /// Throws InvalidInput for a coordinate not in the list.
    auto to_johnson(const OrderedKTuple & a, const std::vector<Rational> & points) -> KSubset;

    /// How the conjunction over s, t in the intersection-size formula is
    /// read: all pairs (s, t), or only s = t.
    enum class ConjunctionReading
    {
        Diagonal,
        AllPairs
    };

    struct BooleanCombinationReport
    {
        std::uint64_t pairs = 0;
        std::uint64_t mismatches = 0;
        /// Mismatches of S_i against S_{>=i} minus S_{>=i+1}.
        std::uint64_t exact_mismatches = 0;
        std::optional<std::pair<OrderedKTuple, OrderedKTuple>> first_mismatch;

        auto pass() const -> bool { return mismatches == 0 && exact_mismatches == 0; }
    };

    /// The =_pq combination for "at least i common points" evaluated on a
    /// pair of tuples.
    auto at_least_combination(const OrderedKTuple & a, const OrderedKTuple & b, int i,
            ConjunctionReading reading = ConjunctionReading::Diagonal) -> bool;

    /// All ordered pairs of increasing k-tuples over n points.
    auto verify_si_boolean_combination(int k, int i, int n,
            ConjunctionReading reading = ConjunctionReading::Diagonal) -> BooleanCombinationReport;

    /// All increasing k-tuples over 0 .. n-1, lexicographic.
    auto increasing_tuples(int n, int k) -> std::vector<OrderedKTuple>;

    struct SweepMismatch
    {
        OrderedStructure structure;
        bool axioms_ok = false;
        bool embedded = false;
        bool brute_force = false;
        bool reinduced = false;
        std::string note;
    };

    struct SweepReport
    {
        int k = 0, max_size = 0;
        AxiomSet axioms = AxiomSet::Complete;
        /// Complete flag-consistent structures that pass the axioms.
        std::uint64_t accepted = 0;
        /// Partial structures abandoned at a violated scheme instance; each
        /// stands for every completion.
        std::uint64_t pruned = 0;
        std::uint64_t mismatches = 0;
        std::optional<SweepMismatch> first_mismatch;
        double seconds = 0.0;

        auto pass() const -> bool { return mismatches == 0; }
    };

    /// Enumerates all flag-consistent structures with at most max_size
    /// elements by assigning the comparison of one pair of (element, index)
    /// nodes at a time. A partial assignment is abandoned as soon as some
    /// scheme instance among assigned comparisons fails; that pattern is
    /// then shown unrealizable by brute force, and one completion of it is
    /// shown to be rejected by check_axioms and embed. Every complete
    /// structure reached is checked for check_axioms, embed (with exact
    /// read-back) and brute_force_embed agreeing.
    auto sweep_ordered_structures(int k, int max_size, AxiomSet axioms = AxiomSet::Complete,
            bool stop_at_first_mismatch = false) -> SweepReport;
}

#endif
