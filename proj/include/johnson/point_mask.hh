/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_POINT_MASK_HH
#define JOHNSON_POINT_MASK_HH 1

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace johnson
{
    /// A set of base points {0, ..., 64 W - 1} as a fixed-width bit mask.
    /// W = 1 backs the finite fragments; wider masks back the search over
    /// J(k) itself, where fresh points are introduced on demand.
    template <std::size_t W>
    struct PointMask
    {
        std::array<std::uint64_t, W> words{};

        static constexpr int capacity = static_cast<int>(64 * W);

        auto set(int p) -> void { words[p >> 6] |= std::uint64_t{1} << (p & 63); }
        auto reset(int p) -> void { words[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }
        auto test(int p) const -> bool { return (words[p >> 6] >> (p & 63)) & 1; }

        auto count() const -> int
        {
            int result = 0;
            for (auto w : words)
                result += std::popcount(w);
            return result;
        }

        auto empty() const -> bool
        {
            for (auto w : words)
                if (w)
                    return false;
            return true;
        }

        auto operator& (const PointMask & o) const -> PointMask
        {
            PointMask r;
            for (std::size_t i = 0 ; i < W ; ++i)
                r.words[i] = words[i] & o.words[i];
            return r;
        }

        auto operator| (const PointMask & o) const -> PointMask
        {
            PointMask r;
            for (std::size_t i = 0 ; i < W ; ++i)
                r.words[i] = words[i] | o.words[i];
            return r;
        }

        auto operator&= (const PointMask & o) -> PointMask & { return *this = *this & o; }
        auto operator|= (const PointMask & o) -> PointMask & { return *this = *this | o; }

        auto minus(const PointMask & o) const -> PointMask
        {
            PointMask r;
            for (std::size_t i = 0 ; i < W ; ++i)
                r.words[i] = words[i] & ~o.words[i];
            return r;
        }

        auto subset_of(const PointMask & o) const -> bool
        {
            for (std::size_t i = 0 ; i < W ; ++i)
                if (words[i] & ~o.words[i])
                    return false;
            return true;
        }

        /// Points in increasing order.
        auto points() const -> std::vector<int>
        {
            std::vector<int> result;
            for (std::size_t i = 0 ; i < W ; ++i) {
                auto w = words[i];
                while (w) {
                    result.push_back(static_cast<int>(64 * i) + std::countr_zero(w));
                    w &= w - 1;
                }
            }
            return result;
        }

        auto operator== (const PointMask &) const -> bool = default;

        /// Colexicographic order (compare the largest differing point).
        auto operator<=> (const PointMask & o) const -> std::strong_ordering
        {
            for (std::size_t i = W ; i-- > 0 ; )
                if (words[i] != o.words[i])
                    return words[i] <=> o.words[i];
            return std::strong_ordering::equal;
        }
    };

    template <std::size_t W>
    auto intersection_size(const PointMask<W> & a, const PointMask<W> & b) -> int
    {
        return (a & b).count();
    }
}

#endif
