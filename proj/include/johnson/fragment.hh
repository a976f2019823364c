/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_FRAGMENT_HH
#define JOHNSON_FRAGMENT_HH 1

#include <johnson/ksubset.hh>
#include <johnson/relation_symbol.hh>

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace johnson
{
    inline constexpr std::uint64_t default_vertex_budget = 2'000'000;

    /// The induced substructure J_n(k) on all k-subsets of {0, ..., n-1}.
    /// Vertices are stored in colex order, so a vertex's index is its colex
    /// rank.
    struct JohnsonFragment
    {
        int n = 0;
        int k = 0;
        std::vector<KSubset> vertices;
        std::vector<RelationSymbol> signature;

        auto vertex_count() const -> std::size_t { return vertices.size(); }
        auto index_of(KSubset v) const -> std::size_t { return v.colex_rank(); }
        auto contains(KSubset v) const -> bool;
        auto has_symbol(const RelationSymbol &) const -> bool;
    };

    /// S_0, ..., S_k, E, N (k >= 2), O (k >= 2), eq, neq.
    auto default_signature(int k) -> std::vector<RelationSymbol>;

    /// Throws InvalidInput if k > n or k < 0, BudgetExceeded if n > 64 or the
    /// vertex count exceeds the budget.
    auto make_fragment(int n, int k, std::uint64_t vertex_budget = default_vertex_budget) -> JohnsonFragment;
    auto make_fragment(int n, int k, std::vector<RelationSymbol> signature, std::uint64_t vertex_budget = default_vertex_budget) -> JohnsonFragment;

    /// Throws InvalidInput on arity mismatch or if some set is not a vertex.
    auto in_relation(const JohnsonFragment & frag, const RelationSymbol & sym, std::span<const KSubset> t) -> bool;

    /// Lazily produces the tuples of a relation, each once, in lexicographic
    /// order of vertex indices.
    class RelationStream
    {
        private:
            const JohnsonFragment * _frag;
            RelationSymbol _sym;
            std::vector<std::size_t> _stack;
            std::vector<KSubset> _tuple;
            std::vector<bool> _bound;
            bool _started = false, _done = false;

            auto consistent(std::size_t depth) -> bool;

        public:
            RelationStream(const JohnsonFragment & frag, const RelationSymbol & sym);

            /// Writes the next tuple into out; false when exhausted.
            auto next(std::vector<KSubset> & out) -> bool;
    };

    auto enumerate_relation(const JohnsonFragment & frag, const RelationSymbol & sym) -> RelationStream;

    /// Counts of base points by which coordinates contain them, plus the
    /// number of unused base points. Sorted, hence canonical.
    struct TupleOrbitLabel
    {
        std::vector<std::pair<std::uint64_t, int>> pattern;
        int surplus = 0;

        auto to_string() const -> std::string;
        auto operator== (const TupleOrbitLabel &) const -> bool = default;
        auto operator<=> (const TupleOrbitLabel &) const = default;
    };

    /// Patterns use bit p-1 for coordinate p (coordinates counted from 1 in
    /// the printed form, from 0 in the mask).
    auto tuple_orbit_label(std::span<const KSubset> t, int n) -> TupleOrbitLabel;

    using TupleFilter = std::function<bool (std::span<const KSubset>)>;

    /// Visits the lexicographically least tuple of every orbit of arity-tuples
    /// of k-subsets of {0, ..., n-1}, in lexicographic order. If accept is
    /// given, it is applied to every prefix and must be orbit invariant;
    /// rejected prefixes are not extended. Stops early when visit returns
    /// false, in which case the result is false. Throws BudgetExceeded after
    /// node_budget search nodes.
    auto for_each_orbit_representative(int n, int k, int arity, const TupleFilter & accept, const TupleFilter & visit,
            std::uint64_t node_budget = 50'000'000) -> bool;

    auto orbit_representatives(const JohnsonFragment & frag, int arity, std::uint64_t node_budget = 50'000'000)
        -> std::vector<std::vector<KSubset>>;

    /// The building block of the above: every k-subset of {0, ..., n-1} is
    /// mapped onto exactly one returned set by some permutation fixing each
    /// of the given sets setwise. The returned sets are colex least in their
    /// classes, and sorted.
    auto relative_orbit_representatives(std::span<const KSubset> fixed, int n, int k) -> std::vector<KSubset>;
}

#endif
