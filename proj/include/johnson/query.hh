/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_QUERY_HH
#define JOHNSON_QUERY_HH 1

#include <johnson/formula.hh>
#include <johnson/point_mask.hh>
#include <johnson/relation_symbol.hh>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace johnson
{
    struct QueryAtom
    {
        RelationSymbol symbol;
        std::vector<int> args;
    };

    /// A primitive positive formula with its quantifiers pulled out:
    /// variables are numbered, the free ones are listed in order, and every
    /// other variable is existentially quantified.
    struct ConjunctiveQuery
    {
        std::vector<std::string> names;
        std::vector<int> free;
        std::vector<QueryAtom> atoms;

        /// Variables to branch on before any others, e.g. the variables that
        /// separate otherwise independent parts of the query.
        std::vector<int> branch_first;

        auto var_count() const -> int { return static_cast<int>(names.size()); }
    };

    /// Equalities are eliminated by merging variables; an equality between
    /// two distinct free variables becomes an eq atom. Bound variables that
    /// share a name on different branches are kept apart. free_order lists
    /// the free variables (normally free_vars(f)); throws InvalidInput if f
    /// is not pp or has a free variable missing from free_order.
    auto compile_query(const Formula & f, const std::vector<std::string> & free_order) -> ConjunctiveQuery;

    inline constexpr std::uint64_t default_node_budget = 200'000'000;

    /// Decides and solves conjunctive queries over the k-subsets of
    /// {0, ..., point_cap - 1}, or over all k-subsets of the naturals when
    /// point_cap is negative (then solutions use the smallest points possible
    /// and BudgetExceeded is thrown if a point beyond the mask width would be
    /// needed).
    ///
    /// The search only tries one candidate per orbit of the group fixing the
    /// current boundary values, splits the unassigned variables into
    /// independent components, and remembers component outcomes by the orbit
    /// of their boundary. The memo persists across calls, so one solver
    /// should be reused for all tuples of an outer loop.
    template <std::size_t W>
    class QuerySolver
    {
        private:
            struct Imp;
            std::unique_ptr<Imp> _imp;

        public:
            QuerySolver(const ConjunctiveQuery & query, int k, int point_cap, std::uint64_t node_budget = default_node_budget);
            ~QuerySolver();
            QuerySolver(QuerySolver &&);
            auto operator= (QuerySolver &&) -> QuerySolver &;

            /// free_values has one entry per free variable, in order.
            auto satisfiable(std::span<const PointMask<W>> free_values) -> bool;

            /// A value for every variable, or nothing when unsatisfiable.
            auto solve(std::span<const PointMask<W>> free_values) -> std::optional<std::vector<PointMask<W>>>;

            auto nodes() const -> std::uint64_t;
            auto cache_size() const -> std::size_t;
    };

    extern template class QuerySolver<1>;
    extern template class QuerySolver<4>;

    using FragmentSolver = QuerySolver<1>;
    using UnboundedSolver = QuerySolver<4>;
}

#endif
