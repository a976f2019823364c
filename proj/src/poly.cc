/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/poly.hh>
#include <johnson/fragment.hh>
#include <johnson/errors.hh>

#include <array>
#include <bit>
#include <functional>

using std::uint64_t;
using std::vector;

namespace johnson
{
    auto ProjectionReport::only_projections() const -> bool
    {
        // first projection f(x,y) = x is 0b1100, second is 0b1010
        return preserving == vector<BooleanOp>{0b1010, 0b1100};
    }

    auto projection_check() -> ProjectionReport
    {
        vector<std::array<int, 3>> nae;
        for (int t = 0 ; t < 8 ; ++t)
            if (t != 0 && t != 7)
                nae.push_back({t & 1, (t >> 1) & 1, (t >> 2) & 1});

        ProjectionReport report;
        for (BooleanOp f = 0 ; f < 16 ; ++f) {
            ++report.candidates;
            bool ok = apply_op(f, 0, 0) == 0 && apply_op(f, 1, 1) == 1;
            for (auto & a : nae)
                for (auto & b : nae) {
                    std::array<int, 3> c{apply_op(f, a[0], b[0]), apply_op(f, a[1], b[1]), apply_op(f, a[2], b[2])};
                    if (c[0] == c[1] && c[1] == c[2])
                        ok = false;
                }
            if (ok)
                report.preserving.push_back(f);
        }
        return report;
    }

    auto essentially_unary(const vector<int> & table, int vertices) -> bool
    {
        bool first_only = true, second_only = true;
        for (int x = 0 ; x < vertices ; ++x)
            for (int y = 0 ; y < vertices ; ++y) {
                if (table[x * vertices + y] != table[x * vertices])
                    first_only = false;
                if (table[x * vertices + y] != table[y])
                    second_only = false;
            }
        return first_only || second_only;
    }

    auto is_binary_polymorphism(const PolySearchOptions & options, const vector<int> & table) -> bool
    {
        auto frag = make_fragment(options.n, options.k, options.relations);
        int v = static_cast<int>(frag.vertex_count());
        if (static_cast<int>(table.size()) != v * v)
            throw InvalidInput("table size does not match the fragment");
        for (auto & r : options.relations) {
            vector<std::pair<int, int>> pairs;
            for (int a = 0 ; a < v ; ++a)
                for (int b = 0 ; b < v ; ++b) {
                    std::array<KSubset, 2> t{frag.vertices[a], frag.vertices[b]};
                    if (in_relation(frag, r, t))
                        pairs.emplace_back(a, b);
                }
            for (auto [a, b] : pairs)
                for (auto [c, d] : pairs) {
                    std::array<KSubset, 2> image{frag.vertices[table[a * v + c]], frag.vertices[table[b * v + d]]};
                    if (! in_relation(frag, r, image))
                        return false;
                }
        }
        return true;
    }

    auto poly_search(const PolySearchOptions & options) -> PolySearchReport
    {
        auto frag = make_fragment(options.n, options.k, options.relations);
        int v = static_cast<int>(frag.vertex_count());
        if (v > 64)
            throw InvalidInput("polymorphism search supports at most 64 vertices");
        for (auto & r : options.relations)
            if (! r.is_binary())
                throw InvalidInput("polymorphism search takes binary relations only, not " + r.to_string());

        // related[r][a] = bit set of b with (a, b) in r
        vector<vector<uint64_t>> related(options.relations.size(), vector<uint64_t>(v, 0));
        for (size_t r = 0 ; r < options.relations.size() ; ++r)
            for (int a = 0 ; a < v ; ++a)
                for (int b = 0 ; b < v ; ++b) {
                    std::array<KSubset, 2> t{frag.vertices[a], frag.vertices[b]};
                    if (in_relation(frag, options.relations[r], t))
                        related[r][a] |= uint64_t{1} << b;
                }

        int cells = v * v;
        uint64_t all = v == 64 ? ~uint64_t{0} : (uint64_t{1} << v) - 1;
        vector<uint64_t> domain(cells, all);
        if (options.fix_first && v > 0)
            domain[0] = 1;
        vector<int> table(cells, -1);
        PolySearchReport report;
        report.vertices = v;

        // every cell (x', y') constrained by (x, y) through some relation,
        // forwards and backwards
        auto propagate = [&] (int cell, int value, vector<uint64_t> & dom) -> bool {
            int x = cell / v, y = cell % v;
            for (size_t r = 0 ; r < related.size() ; ++r) {
                uint64_t xs_out = related[r][x], ys_out = related[r][y];
                for (int x2 = 0 ; x2 < v ; ++x2)
                    for (int y2 = 0 ; y2 < v ; ++y2) {
                        int other = x2 * v + y2;
                        bool out = ((xs_out >> x2) & 1) && ((ys_out >> y2) & 1);
                        bool in = ((related[r][x2] >> x) & 1) && ((related[r][y2] >> y) & 1);
                        if (out)
                            dom[other] &= related[r][value];
                        if (in) {
                            uint64_t allowed = 0;
                            for (int w = 0 ; w < v ; ++w)
                                if ((related[r][w] >> value) & 1)
                                    allowed |= uint64_t{1} << w;
                            dom[other] &= allowed;
                        }
                        if (dom[other] == 0)
                            return false;
                    }
            }
            return true;
        };

        std::function<bool (vector<uint64_t> &)> search = [&] (vector<uint64_t> & dom) -> bool {
            // smallest remaining domain first
            int best = -1;
            for (int c = 0 ; c < cells ; ++c)
                if (table[c] < 0 && (best < 0 || std::popcount(dom[c]) < std::popcount(dom[best])))
                    best = c;
            if (best < 0) {
                ++report.found;
                if (options.keep_tables)
                    report.tables.push_back(table);
                if (essentially_unary(table, v))
                    ++report.essentially_unary;
                else if (! report.binary_witness) {
                    report.binary_witness = table;
                    if (options.stop_at_first_binary)
                        return false;
                }
                return true;
            }
            for (uint64_t bits = dom[best] ; bits ; bits &= bits - 1) {
                if (++report.nodes > options.node_budget)
                    throw BudgetExceeded("polymorphism search budget exhausted");
                int value = std::countr_zero(bits);
                auto next = dom;
                next[best] = uint64_t{1} << value;
                table[best] = value;
                if (propagate(best, value, next) && ! search(next)) {
                    table[best] = -1;
                    return false;
                }
                table[best] = -1;
            }
            return true;
        };

        search(domain);
        return report;
    }
}
