/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_RELATION_SYMBOL_HH
#define JOHNSON_RELATION_SYMBOL_HH 1

#include <johnson/point_mask.hh>

#include <cstdint>
#include <span>
#include <string>

namespace johnson
{
    enum class RelationKind
    {
        Exact,      // S_i
        AtMost,     // S_{<=i}
        AtLeast,    // S_{>=i}
        Sunflower,  // S^m_i
        Core,       // C_i
        Edge,       // E = S_{k-1}
        Near,       // N = S_{k-2}
        Overlap,    // O = E u N
        Union,      // S_I = union of S_i, i in I
        Eq,         // S_k
        Neq
    };

    struct RelationSymbol
    {
        RelationKind kind = RelationKind::Eq;
        int index = 0;              // i for S_i, S_{<=i}, S_{>=i}, S^m_i, C_i
        int width = 2;              // m for S^m_i
        std::uint64_t sizes = 0;    // I for S_I, bit j set iff j in I

        static auto exact(int i) -> RelationSymbol { return {RelationKind::Exact, i, 2, 0}; }
        static auto at_most(int i) -> RelationSymbol { return {RelationKind::AtMost, i, 2, 0}; }
        static auto at_least(int i) -> RelationSymbol { return {RelationKind::AtLeast, i, 2, 0}; }
        static auto sunflower(int m, int i) -> RelationSymbol { return {RelationKind::Sunflower, i, m, 0}; }
        static auto core(int i) -> RelationSymbol { return {RelationKind::Core, i, 4, 0}; }
        static auto edge() -> RelationSymbol { return {RelationKind::Edge, 0, 2, 0}; }
        static auto near() -> RelationSymbol { return {RelationKind::Near, 0, 2, 0}; }
        static auto overlap() -> RelationSymbol { return {RelationKind::Overlap, 0, 2, 0}; }
        static auto union_of(std::uint64_t sizes) -> RelationSymbol { return {RelationKind::Union, 0, 2, sizes}; }
        static auto eq() -> RelationSymbol { return {RelationKind::Eq, 0, 2, 0}; }
        static auto neq() -> RelationSymbol { return {RelationKind::Neq, 0, 2, 0}; }

        /// Text forms: S0, Sle2, Sge1, S3_1, C1, E, N, O, eq, neq, SI{0,2}.
        /// Throws InvalidInput on anything else.
        static auto parse(const std::string & text) -> RelationSymbol;
        auto to_string() const -> std::string;

        auto arity() const -> int;
        auto is_binary() const -> bool { return arity() == 2 && kind != RelationKind::Core && kind != RelationKind::Sunflower; }

        /// Throws InvalidInput if the parameters make no sense for subset size k.
        auto validate(int k) const -> void;

        /// For binary symbols: bit j set iff pairs with |a n b| = j are members.
        auto allowed_sizes(int k) const -> std::uint64_t;

        auto operator== (const RelationSymbol &) const -> bool = default;
    };

    /// True iff the two symbols denote the same relation on k-subsets.
    auto same_semantics(const RelationSymbol & a, const RelationSymbol & b, int k) -> bool;

    /// Membership of a tuple of k-subsets. The tuple length must equal the
    /// symbol's arity (checked by callers).
    template <std::size_t W>
    auto holds(const RelationSymbol & sym, int k, std::span<const PointMask<W>> t) -> bool
    {
        switch (sym.kind) {
            case RelationKind::Sunflower: {
                auto common = t[0];
                for (std::size_t p = 0 ; p < t.size() ; ++p) {
                    common &= t[p];
                    for (std::size_t q = p + 1 ; q < t.size() ; ++q)
                        if (intersection_size(t[p], t[q]) != sym.index)
                            return false;
                }
                return common.count() == sym.index;
            }
            case RelationKind::Core: {
                auto left = t[0] & t[1], right = t[2] & t[3];
                return left.count() == sym.index && right.count() == sym.index && left == right;
            }
            default:
                return (sym.allowed_sizes(k) >> intersection_size(t[0], t[1])) & 1;
        }
    }

    /// Necessary condition for some completion of a partially bound tuple to
    /// be a member; exact when every position is bound.
    template <std::size_t W>
    auto partially_consistent(const RelationSymbol & sym, int k, std::span<const PointMask<W>> t, std::span<const bool> bound) -> bool
    {
        switch (sym.kind) {
            case RelationKind::Sunflower: {
                // every bound pair meets in the same i-set r
                int first = -1;
                PointMask<W> core;
                for (std::size_t p = 0 ; p < t.size() ; ++p) {
                    if (! bound[p])
                        continue;
                    if (first < 0) {
                        first = static_cast<int>(p);
                        continue;
                    }
                    auto meet = t[first] & t[p];
                    if (meet.count() != sym.index)
                        return false;
                    core = meet;
                    break;
                }
                if (first < 0 || core.count() != sym.index)
                    return true;
                for (std::size_t p = 0 ; p < t.size() ; ++p)
                    if (bound[p] && ! core.subset_of(t[p]))
                        return false;
                for (std::size_t p = 0 ; p < t.size() ; ++p)
                    for (std::size_t q = p + 1 ; q < t.size() ; ++q)
                        if (bound[p] && bound[q] && intersection_size(t[p], t[q]) != sym.index)
                            return false;
                return true;
            }
            case RelationKind::Core: {
                auto pair_ok = [&] (int a, int b) {
                    return ! (bound[a] && bound[b]) || intersection_size(t[a], t[b]) == sym.index;
                };
                if (! pair_ok(0, 1) || ! pair_ok(2, 3))
                    return false;
                // a bound pair fixes the common core, which the other side must contain
                auto contains_core = [&] (int a, int b, int c) {
                    return ! (bound[a] && bound[b] && bound[c]) || (t[a] & t[b]).subset_of(t[c]);
                };
                if (! contains_core(0, 1, 2) || ! contains_core(0, 1, 3) || ! contains_core(2, 3, 0) || ! contains_core(2, 3, 1))
                    return false;
                if (bound[0] && bound[1] && bound[2] && bound[3])
                    return holds<W>(sym, k, t);
                return true;
            }
            default:
                if (bound[0] && bound[1])
                    return holds<W>(sym, k, t);
                return true;
        }
    }
}

#endif
