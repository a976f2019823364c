/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/fragment.hh>
#include <johnson/errors.hh>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

using std::size_t;
using std::span;
using std::string;
using std::uint64_t;
using std::vector;

namespace johnson
{
    auto JohnsonFragment::contains(KSubset v) const -> bool
    {
        return v.size() == k && (n >= 64 || (v.bits() >> n) == 0);
    }

    auto JohnsonFragment::has_symbol(const RelationSymbol & sym) const -> bool
    {
        return std::find(signature.begin(), signature.end(), sym) != signature.end();
    }

    auto default_signature(int k) -> vector<RelationSymbol>
    {
        vector<RelationSymbol> result;
        for (int i = 0 ; i <= k ; ++i)
            result.push_back(RelationSymbol::exact(i));
        if (k >= 1)
            result.push_back(RelationSymbol::edge());
        if (k >= 2) {
            result.push_back(RelationSymbol::near());
            result.push_back(RelationSymbol::overlap());
        }
        result.push_back(RelationSymbol::eq());
        result.push_back(RelationSymbol::neq());
        return result;
    }

    auto make_fragment(int n, int k, uint64_t vertex_budget) -> JohnsonFragment
    {
        return make_fragment(n, k, default_signature(std::max(k, 0)), vertex_budget);
    }

    auto make_fragment(int n, int k, vector<RelationSymbol> signature, uint64_t vertex_budget) -> JohnsonFragment
    {
        if (k < 0 || n < 0)
            throw InvalidInput("negative fragment parameters");
        if (k > n)
            throw InvalidInput("k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
        if (n > max_base_size)
            throw BudgetExceeded("n=" + std::to_string(n) + " exceeds the 64-point mask width");
        auto count = binomial(n, k);
        if (count > vertex_budget)
            throw BudgetExceeded("J_" + std::to_string(n) + "(" + std::to_string(k) + ") has " + std::to_string(count)
                    + " vertices, over the budget of " + std::to_string(vertex_budget));
        for (auto & s : signature)
            s.validate(k);

        JohnsonFragment frag;
        frag.n = n;
        frag.k = k;
        frag.signature = std::move(signature);
        frag.vertices.reserve(count);
        KSubset v{k == 0 ? 0 : (k == 64 ? ~uint64_t{0} : (uint64_t{1} << k) - 1)};
        frag.vertices.push_back(v);
        if (k > 0)
            while (next_colex(v, n))
                frag.vertices.push_back(v);
        return frag;
    }

    namespace
    {
        auto as_masks(span<const KSubset> t) -> vector<PointMask<1>>
        {
            vector<PointMask<1>> result;
            result.reserve(t.size());
            for (auto & s : t)
                result.push_back(s.as_mask());
            return result;
        }
    }

    auto in_relation(const JohnsonFragment & frag, const RelationSymbol & sym, span<const KSubset> t) -> bool
    {
        if (static_cast<int>(t.size()) != sym.arity())
            throw InvalidInput("relation " + sym.to_string() + " has arity " + std::to_string(sym.arity())
                    + " but got a tuple of length " + std::to_string(t.size()));
        for (auto & s : t)
            if (! frag.contains(s))
                throw InvalidInput(s.to_string() + " is not a vertex of J_" + std::to_string(frag.n) + "(" + std::to_string(frag.k) + ")");
        auto masks = as_masks(t);
        return holds<1>(sym, frag.k, masks);
    }

    RelationStream::RelationStream(const JohnsonFragment & frag, const RelationSymbol & sym) :
        _frag(&frag),
        _sym(sym),
        _tuple(sym.arity()),
        _bound(sym.arity(), false)
    {
        double log_size = sym.arity() * std::log2(std::max<double>(2.0, frag.vertex_count()));
        if (log_size > 62)
            throw BudgetExceeded("relation " + sym.to_string() + " has too many candidate tuples to enumerate");
    }

    auto RelationStream::consistent(size_t depth) -> bool
    {
        vector<PointMask<1>> masks = as_masks(_tuple);
        std::unique_ptr<bool[]> bound(new bool[_tuple.size()]);
        for (size_t i = 0 ; i < _tuple.size() ; ++i)
            bound[i] = i <= depth;
        return partially_consistent<1>(_sym, _frag->k, masks, span<const bool>(bound.get(), _tuple.size()));
    }

    auto RelationStream::next(vector<KSubset> & out) -> bool
    {
        if (_done)
            return false;

        auto vcount = _frag->vertex_count();
        auto arity = _tuple.size();

        // Depth-first over index vectors; _stack holds the current prefix.
        if (! _started) {
            _started = true;
            _stack.push_back(0);
        }
        else {
            // advance past the tuple we last returned
            ++_stack.back();
        }

        while (! _stack.empty()) {
            if (_stack.back() >= vcount) {
                _stack.pop_back();
                if (! _stack.empty())
                    ++_stack.back();
                continue;
            }
            auto depth = _stack.size() - 1;
            _tuple[depth] = _frag->vertices[_stack.back()];
            if (! consistent(depth)) {
                ++_stack.back();
                continue;
            }
            if (_stack.size() == arity) {
                out = _tuple;
                return true;
            }
            _stack.push_back(0);
        }

        _done = true;
        return false;
    }

    auto enumerate_relation(const JohnsonFragment & frag, const RelationSymbol & sym) -> RelationStream
    {
        return RelationStream(frag, sym);
    }

    auto TupleOrbitLabel::to_string() const -> string
    {
        string result = "{";
        bool first = true;
        for (auto & [mask, count] : pattern) {
            if (! first)
                result += ", ";
            first = false;
            result += "({";
            bool first_coord = true;
            for (int c = 0 ; c < 64 ; ++c)
                if ((mask >> c) & 1) {
                    if (! first_coord)
                        result += ",";
                    first_coord = false;
                    result += std::to_string(c + 1);
                }
            result += "}):" + std::to_string(count);
        }
        return result + "}, surplus " + std::to_string(surplus);
    }

    auto tuple_orbit_label(span<const KSubset> t, int n) -> TupleOrbitLabel
    {
        if (t.size() > 64)
            throw InvalidInput("orbit labels support tuples of length at most 64");
        std::map<uint64_t, int> counts;
        uint64_t all = 0;
        for (auto & s : t)
            all |= s.bits();
        for (uint64_t w = all ; w ; w &= w - 1) {
            int p = std::countr_zero(w);
            uint64_t pattern = 0;
            for (size_t c = 0 ; c < t.size() ; ++c)
                if (t[c].contains(p))
                    pattern |= uint64_t{1} << c;
            ++counts[pattern];
        }
        TupleOrbitLabel label;
        label.pattern.assign(counts.begin(), counts.end());
        label.surplus = n - std::popcount(all);
        return label;
    }

    auto relative_orbit_representatives(span<const KSubset> fixed, int n, int k) -> vector<KSubset>
    {
        // Cells: base points grouped by which fixed sets contain them.
        std::map<uint64_t, vector<int>> cell_map;
        for (int p = 0 ; p < n ; ++p) {
            uint64_t pattern = 0;
            for (size_t c = 0 ; c < fixed.size() ; ++c)
                if (fixed[c].contains(p))
                    pattern |= uint64_t{1} << c;
            cell_map[pattern].push_back(p);
        }
        vector<vector<int>> cells;
        for (auto & [_, points] : cell_map)
            cells.push_back(std::move(points));

        vector<KSubset> result;
        std::function<void (size_t, int, uint64_t)> choose = [&] (size_t cell, int remaining, uint64_t bits) {
            if (remaining == 0) {
                result.emplace_back(bits);
                return;
            }
            if (cell == cells.size())
                return;
            int most = std::min<int>(remaining, cells[cell].size());
            uint64_t extra = 0;
            choose(cell + 1, remaining, bits);
            for (int c = 1 ; c <= most ; ++c) {
                extra |= uint64_t{1} << cells[cell][c - 1];
                choose(cell + 1, remaining - c, bits | extra);
            }
        };
        choose(0, k, 0);
        std::sort(result.begin(), result.end());
        return result;
    }

    auto for_each_orbit_representative(int n, int k, int arity, const TupleFilter & accept, const TupleFilter & visit,
            uint64_t node_budget) -> bool
    {
        if (arity < 1)
            throw InvalidInput("orbit representatives need arity >= 1");
        if (n > max_base_size)
            throw BudgetExceeded("n=" + std::to_string(n) + " exceeds the 64-point mask width");
        if (k > n || k < 0)
            throw InvalidInput("need 0 <= k <= n");

        vector<KSubset> tuple;
        uint64_t nodes = 0;
        std::function<bool ()> extend = [&] () -> bool {
            if (static_cast<int>(tuple.size()) == arity)
                return visit(tuple);
            for (auto & s : relative_orbit_representatives(tuple, n, k)) {
                if (++nodes > node_budget)
                    throw BudgetExceeded("orbit enumeration exceeded " + std::to_string(node_budget) + " nodes");
                tuple.push_back(s);
                bool keep_going = true;
                if (! accept || accept(tuple))
                    keep_going = extend();
                tuple.pop_back();
                if (! keep_going)
                    return false;
            }
            return true;
        };
        return extend();
    }

    auto orbit_representatives(const JohnsonFragment & frag, int arity, uint64_t node_budget) -> vector<vector<KSubset>>
    {
        vector<vector<KSubset>> result;
        for_each_orbit_representative(frag.n, frag.k, arity, nullptr, [&] (span<const KSubset> t) {
                result.emplace_back(t.begin(), t.end());
                return true;
                }, node_budget);
        return result;
    }
}
