/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_KSUBSET_HH
#define JOHNSON_KSUBSET_HH 1

#include <johnson/point_mask.hh>

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace johnson
{
    inline constexpr int max_base_size = 64;

    /// binomial(n, r), saturating at UINT64_MAX. Zero when r < 0 or r > n.
    auto binomial(int n, int r) -> std::uint64_t;

    /// A vertex of a Johnson fragment: a subset of {0, ..., 63}. The subset
    /// size is the fragment's k; it is not stored separately.
    class KSubset
    {
        private:
            std::uint64_t _bits = 0;

        public:
            constexpr KSubset() = default;
            constexpr explicit KSubset(std::uint64_t bits) : _bits(bits) {}

            /// Throws InvalidInput on duplicates or points >= 64.
            static auto from_members(const std::vector<int> & members) -> KSubset;
            static auto from_members(std::initializer_list<int> members) -> KSubset;

            constexpr auto bits() const -> std::uint64_t { return _bits; }
            constexpr auto size() const -> int { return std::popcount(_bits); }
            constexpr auto contains(int p) const -> bool { return (_bits >> p) & 1; }

            auto members() const -> std::vector<int>;

            /// Position in the colexicographic order of all size()-subsets.
            auto colex_rank() const -> std::uint64_t;
            static auto colex_unrank(std::uint64_t rank, int k) -> KSubset;

            auto to_string() const -> std::string;

            auto as_mask() const -> PointMask<1> { PointMask<1> m; m.words[0] = _bits; return m; }

            constexpr auto operator== (const KSubset &) const -> bool = default;

            /// For subsets of equal size, numeric order of the masks is colex order.
            constexpr auto operator<=> (const KSubset & o) const -> std::strong_ordering { return _bits <=> o._bits; }
    };

    inline auto intersection_size(KSubset a, KSubset b) -> int
    {
        return std::popcount(a.bits() & b.bits());
    }

    /// Next subset of the same size in colex order (Gosper's hack). Returns
    /// false when the successor would need a point >= n.
    auto next_colex(KSubset & s, int n) -> bool;
}

#endif
