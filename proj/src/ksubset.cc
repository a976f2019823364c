/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/ksubset.hh>
#include <johnson/errors.hh>

#include <array>
#include <limits>

using std::uint64_t;
using std::vector;

namespace johnson
{
    namespace
    {
        constexpr int table_size = 130;

        auto make_binomial_table()
        {
            std::array<std::array<uint64_t, table_size>, table_size> table{};
            for (int n = 0 ; n < table_size ; ++n) {
                table[n][0] = 1;
                for (int r = 1 ; r <= n ; ++r) {
                    uint64_t a = table[n - 1][r - 1], b = table[n - 1][r];
                    table[n][r] = (a > std::numeric_limits<uint64_t>::max() - b) ? std::numeric_limits<uint64_t>::max() : a + b;
                }
            }
            return table;
        }

        const auto binomial_table = make_binomial_table();
    }

    auto binomial(int n, int r) -> uint64_t
    {
        if (r < 0 || n < 0 || r > n)
            return 0;
        if (n >= table_size)
            throw BudgetExceeded("binomial argument " + std::to_string(n) + " out of table range");
        return binomial_table[n][r];
    }

    auto KSubset::from_members(const vector<int> & members) -> KSubset
    {
        uint64_t bits = 0;
        for (int p : members) {
            if (p < 0 || p >= max_base_size)
                throw InvalidInput("base point " + std::to_string(p) + " outside {0,...,63}");
            if ((bits >> p) & 1)
                throw InvalidInput("duplicate base point " + std::to_string(p));
            bits |= uint64_t{1} << p;
        }
        return KSubset{bits};
    }

    auto KSubset::from_members(std::initializer_list<int> members) -> KSubset
    {
        return from_members(vector<int>(members));
    }

    auto KSubset::members() const -> vector<int>
    {
        vector<int> result;
        for (uint64_t w = _bits ; w ; w &= w - 1)
            result.push_back(std::countr_zero(w));
        return result;
    }

    auto KSubset::colex_rank() const -> uint64_t
    {
        uint64_t rank = 0;
        int i = 1;
        for (uint64_t w = _bits ; w ; w &= w - 1)
            rank += binomial(std::countr_zero(w), i++);
        return rank;
    }

    auto KSubset::colex_unrank(uint64_t rank, int k) -> KSubset
    {
        uint64_t bits = 0;
        for (int i = k ; i >= 1 ; --i) {
            int c = i - 1;
            while (binomial(c + 1, i) <= rank)
                ++c;
            rank -= binomial(c, i);
            bits |= uint64_t{1} << c;
        }
        return KSubset{bits};
    }

    auto KSubset::to_string() const -> std::string
    {
        std::string result = "{";
        bool first = true;
        for (int p : members()) {
            if (! first)
                result += ",";
            first = false;
            result += std::to_string(p);
        }
        return result + "}";
    }

    auto next_colex(KSubset & s, int n) -> bool
    {
        uint64_t v = s.bits();
        if (v == 0)
            return false;
        uint64_t t = v | (v - 1);
        if (t == std::numeric_limits<uint64_t>::max())
            return false;
        uint64_t next = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
        if (n < 64 && (next >> n) != 0)
            return false;
        s = KSubset{next};
        return true;
    }
}
