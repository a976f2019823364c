/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_POLY_HH
#define JOHNSON_POLY_HH 1

#include <johnson/relation_symbol.hh>

#include <cstdint>
#include <optional>
#include <vector>

namespace johnson
{
    /// A binary Boolean operation as f(0,0) | f(0,1) << 1 | f(1,0) << 2 | f(1,1) << 3.
    using BooleanOp = int;

    inline auto apply_op(BooleanOp f, int x, int y) -> int { return (f >> (2 * x + y)) & 1; }

    struct ProjectionReport
    {
        int candidates = 0;
        std::vector<BooleanOp> preserving;

        /// Exactly the two projections preserve everything.
        auto only_projections() const -> bool;
    };

    /// Which of the 16 binary operations on {0,1} preserve NAE, {0} and {1}.
    /// A binary polymorphism of the fragment acts on encoded Boolean values
    /// through one of these.
    auto projection_check() -> ProjectionReport;

    struct PolySearchOptions
    {
        int k = 2, n = 4;
        /// Binary symbols only.
        std::vector<RelationSymbol> relations{RelationSymbol::exact(0), RelationSymbol::exact(1), RelationSymbol::neq()};
        /// Fix f(v, v) = v for the first vertex v. Sound when automorphisms
        /// of J_n(k) act transitively and preserve the relations, which
        /// holds for every symbol here.
        bool fix_first = true;
        bool stop_at_first_binary = false;
        bool keep_tables = false;
        std::uint64_t node_budget = 200'000'000;
    };

    struct PolySearchReport
    {
        int vertices = 0;
        std::uint64_t found = 0;
        std::uint64_t essentially_unary = 0;
        /// Operation table f(x, y) at x * vertices + y, vertex indices in colex order.
        std::optional<std::vector<int>> binary_witness;
        std::uint64_t nodes = 0;
        /// Every table found, when keep_tables is set.
        std::vector<std::vector<int>> tables;
    };

    /// All binary polymorphisms of (J_n(k); relations) by backtracking with
    /// forward checking over the operation table. Throws BudgetExceeded and
    /// InvalidInput (non-binary symbol, more than 64 vertices).
    auto poly_search(const PolySearchOptions & options = {}) -> PolySearchReport;

    /// Direct check of every pair of related pairs.
    auto is_binary_polymorphism(const PolySearchOptions & options, const std::vector<int> & table) -> bool;

    /// f depends on at most one argument.
    auto essentially_unary(const std::vector<int> & table, int vertices) -> bool;
}

#endif
