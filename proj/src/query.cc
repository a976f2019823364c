/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/query.hh>
#include <johnson/errors.hh>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <unordered_map>

using std::optional;
using std::size_t;
using std::span;
using std::string;
using std::uint64_t;
using std::vector;

namespace johnson
{
    namespace
    {
        struct Flattener
        {
            vector<string> names;
            vector<QueryAtom> atoms;
            vector<std::pair<int, int>> equalities;
            vector<std::pair<string, int>> scope;

            auto lookup(const string & name) -> int
            {
                for (auto i = scope.rbegin() ; i != scope.rend() ; ++i)
                    if (i->first == name)
                        return i->second;
                throw InvalidInput("variable '" + name + "' is free but not listed as a free variable");
            }

            auto walk(const Formula & f) -> void
            {
                switch (f.kind) {
                    case NodeKind::Atom: {
                        if (static_cast<int>(f.vars.size()) != f.symbol.arity())
                            throw InvalidInput("relation " + f.symbol.to_string() + " applied to the wrong number of variables");
                        QueryAtom a{f.symbol, {}};
                        for (auto & v : f.vars)
                            a.args.push_back(lookup(v));
                        atoms.push_back(std::move(a));
                        break;
                    }
                    case NodeKind::Equal:
                        equalities.emplace_back(lookup(f.vars.at(0)), lookup(f.vars.at(1)));
                        break;
                    case NodeKind::And:
                        for (auto & c : f.children)
                            walk(c);
                        break;
                    case NodeKind::Exists:
                        for (auto & v : f.vars) {
                            scope.emplace_back(v, static_cast<int>(names.size()));
                            names.push_back(v);
                        }
                        walk(f.children.at(0));
                        scope.resize(scope.size() - f.vars.size());
                        break;
                    default:
                        throw InvalidInput("only primitive positive formulas can be compiled into queries");
                }
            }
        };
    }

    auto compile_query(const Formula & f, const vector<string> & free_order) -> ConjunctiveQuery
    {
        Flattener flat;
        for (auto & v : free_order) {
            flat.scope.emplace_back(v, static_cast<int>(flat.names.size()));
            flat.names.push_back(v);
        }
        int free_count = static_cast<int>(free_order.size());
        flat.walk(f);

        int total = static_cast<int>(flat.names.size());
        vector<int> parent(total);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&] (int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };

        ConjunctiveQuery query;
        for (auto [a, b] : flat.equalities) {
            int ra = find(a), rb = find(b);
            if (ra == rb)
                continue;
            if (ra < free_count && rb < free_count) {
                // two free variables: the equality has to stay a constraint
                query.atoms.push_back(QueryAtom{RelationSymbol::eq(), {ra, rb}});
                continue;
            }
            // keep the smaller id as root, so a free variable always wins
            if (rb < ra)
                std::swap(ra, rb);
            parent[rb] = ra;
        }

        vector<int> new_id(total, -1);
        for (int v = 0 ; v < free_count ; ++v) {
            new_id[v] = v;
            query.names.push_back(flat.names[v]);
            query.free.push_back(v);
        }
        for (int v = free_count ; v < total ; ++v)
            if (find(v) == v) {
                new_id[v] = static_cast<int>(query.names.size());
                query.names.push_back(flat.names[v]);
            }

        for (auto & a : query.atoms)
            for (auto & x : a.args)
                x = new_id[find(x)];
        for (auto & a : flat.atoms) {
            for (auto & x : a.args)
                x = new_id[find(x)];
            query.atoms.push_back(std::move(a));
        }
        return query;
    }

    namespace
    {
        struct KeyHash
        {
            auto operator() (const vector<uint64_t> & v) const -> size_t
            {
                uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
                for (auto w : v) {
                    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                    h *= 0xff51afd7ed558ccdULL;
                }
                return static_cast<size_t>(h ^ (h >> 33));
            }
        };

        constexpr size_t max_boundary = 256;
        constexpr size_t memo_limit = 4'000'000;

        using Pattern = std::array<uint64_t, max_boundary / 64>;
    }

    template <std::size_t W>
    struct QuerySolver<W>::Imp
    {
        ConjunctiveQuery query;
        int k, cap;
        uint64_t budget, node_count = 0;
        int var_count;

        vector<vector<int>> atoms_of;
        vector<vector<int>> neighbours;
        vector<int> degree;
        vector<int> first_rank;

        vector<PointMask<W>> value;
        vector<char> bound;
        vector<unsigned> stamp;
        unsigned stamp_counter = 0;

        std::unordered_map<vector<uint64_t>, char, KeyHash> memo;
        bool witness_mode = false;

        Imp(const ConjunctiveQuery & q, int k_, int cap_, uint64_t budget_) :
            query(q), k(k_), cap(cap_), budget(budget_), var_count(q.var_count())
        {
            if (k < 0)
                throw InvalidInput("negative subset size");
            if (cap > PointMask<W>::capacity)
                throw BudgetExceeded("point cap " + std::to_string(cap) + " exceeds the mask width");
            if (cap >= 0 && k > cap)
                throw InvalidInput("subset size exceeds the number of points");

            atoms_of.resize(var_count);
            neighbours.resize(var_count);
            degree.assign(var_count, 0);
            for (size_t a = 0 ; a < query.atoms.size() ; ++a) {
                auto & atom = query.atoms[a];
                atom.symbol.validate(k);
                if (static_cast<int>(atom.args.size()) != atom.symbol.arity())
                    throw InvalidInput("atom arity mismatch for " + atom.symbol.to_string());
                for (int x : atom.args) {
                    if (x < 0 || x >= var_count)
                        throw InvalidInput("atom refers to an unknown variable");
                    if (atoms_of[x].empty() || atoms_of[x].back() != static_cast<int>(a))
                        atoms_of[x].push_back(static_cast<int>(a));
                    for (int y : atom.args)
                        if (y != x)
                            neighbours[x].push_back(y);
                }
            }
            for (int x = 0 ; x < var_count ; ++x) {
                auto & nb = neighbours[x];
                std::sort(nb.begin(), nb.end());
                nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
                degree[x] = static_cast<int>(atoms_of[x].size());
            }
            first_rank.assign(var_count, -1);
            for (size_t r = 0 ; r < query.branch_first.size() ; ++r) {
                int x = query.branch_first[r];
                if (x < 0 || x >= var_count)
                    throw InvalidInput("branching hint refers to an unknown variable");
                first_rank[x] = static_cast<int>(r);
            }
            value.resize(var_count);
            bound.assign(var_count, 0);
            stamp.assign(var_count, 0);
        }

        auto atom_ok(int a) -> bool
        {
            auto & atom = query.atoms[a];
            std::array<PointMask<W>, 16> small_values;
            std::array<bool, 16> small_bound;
            vector<PointMask<W>> big_values;
            vector<char> big_bound_chars;
            std::unique_ptr<bool[]> big_bound;
            size_t m = atom.args.size();
            PointMask<W> * vals;
            bool * bnd;
            if (m <= 16) {
                vals = small_values.data();
                bnd = small_bound.data();
            }
            else {
                big_values.resize(m);
                big_bound.reset(new bool[m]);
                vals = big_values.data();
                bnd = big_bound.get();
            }
            bool all_bound = true;
            for (size_t i = 0 ; i < m ; ++i) {
                int x = atom.args[i];
                bnd[i] = bound[x];
                if (bound[x])
                    vals[i] = value[x];
                else
                    all_bound = false;
            }
            span<const PointMask<W>> tv(vals, m);
            if (all_bound)
                return holds<W>(atom.symbol, k, tv);
            return partially_consistent<W>(atom.symbol, k, tv, span<const bool>(bnd, m));
        }

        auto fresh_points(const PointMask<W> & used, int how_many) -> vector<int>
        {
            vector<int> result;
            int limit = cap < 0 ? PointMask<W>::capacity : cap;
            for (int p = 0 ; p < limit && static_cast<int>(result.size()) < how_many ; ++p)
                if (! used.test(p))
                    result.push_back(p);
            if (static_cast<int>(result.size()) < how_many && cap < 0)
                throw BudgetExceeded("search needed more than " + std::to_string(PointMask<W>::capacity) + " base points");
            return result;
        }

        /// One representative per orbit of the group fixing every boundary
        /// value, among the sets satisfying the constraints between v and the
        /// bound variables.
        auto candidates(int v, const vector<int> & boundary) -> vector<PointMask<W>>
        {
            size_t b = boundary.size();
            if (b > max_boundary)
                throw BudgetExceeded("component boundary of " + std::to_string(b) + " variables is too large");

            // cells of the boundary's Venn diagram, restricted to the union
            PointMask<W> used;
            for (int u : boundary)
                used |= value[u];
            vector<std::pair<Pattern, int>> points;
            for (int p : used.points()) {
                Pattern pat{};
                for (size_t j = 0 ; j < b ; ++j)
                    if (value[boundary[j]].test(p))
                        pat[j >> 6] |= uint64_t{1} << (j & 63);
                points.emplace_back(pat, p);
            }
            std::sort(points.begin(), points.end());

            vector<vector<int>> cells;
            vector<Pattern> cell_patterns;
            for (size_t i = 0 ; i < points.size() ; ++i) {
                if (i == 0 || points[i].first != points[i - 1].first) {
                    cells.emplace_back();
                    cell_patterns.push_back(points[i].first);
                }
                cells.back().push_back(points[i].second);
            }

            // binary constraints towards boundary positions
            vector<uint64_t> allowed(b, ~uint64_t{0});
            vector<char> constrained(b, 0);
            for (int a : atoms_of[v]) {
                auto & atom = query.atoms[a];
                if (atom.args.size() != 2 || ! (atom.symbol.is_binary() || atom.symbol.kind == RelationKind::Sunflower))
                    continue;
                int other = atom.args[0] == v ? atom.args[1] : atom.args[0];
                if (other == v || ! bound[other])
                    continue;
                auto pos = std::lower_bound(boundary.begin(), boundary.end(), other) - boundary.begin();
                allowed[pos] &= atom.symbol.allowed_sizes(k);
                constrained[pos] = 1;
            }
            vector<int> cpos;
            for (size_t j = 0 ; j < b ; ++j)
                if (constrained[j]) {
                    if (allowed[j] == 0)
                        return {};
                    cpos.push_back(static_cast<int>(j));
                }
            size_t c_count = cpos.size();
            vector<int> lo(c_count), hi(c_count);
            for (size_t c = 0 ; c < c_count ; ++c) {
                lo[c] = std::countr_zero(allowed[cpos[c]]);
                hi[c] = 63 - std::countl_zero(allowed[cpos[c]]);
            }
            // membership of cells in constrained positions, and suffix availability
            size_t cell_count = cells.size();
            vector<vector<char>> in_cell(cell_count, vector<char>(c_count, 0));
            for (size_t i = 0 ; i < cell_count ; ++i)
                for (size_t c = 0 ; c < c_count ; ++c)
                    in_cell[i][c] = (cell_patterns[i][cpos[c] >> 6] >> (cpos[c] & 63)) & 1;
            vector<vector<int>> suffix(cell_count + 1, vector<int>(c_count, 0));
            for (size_t i = cell_count ; i-- > 0 ; )
                for (size_t c = 0 ; c < c_count ; ++c)
                    suffix[i][c] = suffix[i + 1][c] + (in_cell[i][c] ? static_cast<int>(cells[i].size()) : 0);

            int fresh_available = cap < 0 ? k : std::max(0, cap - used.count());
            vector<int> fresh;
            vector<int> counts(c_count, 0);
            vector<PointMask<W>> result;
            PointMask<W> chosen;

            auto check_and_emit = [&] (const PointMask<W> & s) {
                for (size_t c = 0 ; c < c_count ; ++c)
                    if (! ((allowed[cpos[c]] >> counts[c]) & 1))
                        return;
                result.push_back(s);
            };

            auto dfs = [&] (size_t cell, int remaining, auto & self) -> void {
                if (remaining == 0) {
                    check_and_emit(chosen);
                    return;
                }
                if (cell == cell_count) {
                    if (remaining > fresh_available)
                        return;
                    if (fresh.empty())
                        fresh = fresh_points(used, k);
                    auto saved = chosen;
                    for (int i = 0 ; i < remaining ; ++i)
                        chosen.set(fresh[i]);
                    check_and_emit(chosen);
                    chosen = saved;
                    return;
                }
                auto saved = chosen;
                int most = std::min<int>(remaining, static_cast<int>(cells[cell].size()));
                int taken = 0;
                for (int take = 0 ; take <= most ; ++take) {
                    if (take > 0) {
                        chosen.set(cells[cell][take - 1]);
                        ++taken;
                        for (size_t c = 0 ; c < c_count ; ++c)
                            if (in_cell[cell][c])
                                ++counts[c];
                    }
                    bool over = false, under = false;
                    for (size_t c = 0 ; c < c_count ; ++c) {
                        if (counts[c] > hi[c])
                            over = true;
                        else if (counts[c] + std::min(remaining - take, suffix[cell + 1][c]) < lo[c])
                            under = true;
                    }
                    if (over)
                        break;
                    if (! under)
                        self(cell + 1, remaining - take, self);
                }
                for (size_t c = 0 ; c < c_count ; ++c)
                    if (in_cell[cell][c])
                        counts[c] -= taken;
                chosen = saved;
            };
            dfs(0, k, dfs);

            // remaining atoms: everything involving v whose other arguments are bound so far
            vector<PointMask<W>> filtered;
            bound[v] = 1;
            for (auto & s : result) {
                value[v] = s;
                bool ok = true;
                for (int a : atoms_of[v])
                    if (! atom_ok(a)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    filtered.push_back(s);
            }
            bound[v] = 0;
            return filtered;
        }

        auto components(const vector<int> & vars) -> vector<vector<int>>
        {
            ++stamp_counter;
            unsigned in_set = stamp_counter;
            for (int x : vars)
                stamp[x] = in_set;
            ++stamp_counter;
            unsigned seen = stamp_counter;

            vector<vector<int>> result;
            vector<int> queue;
            for (int start : vars) {
                if (stamp[start] != in_set)
                    continue;
                vector<int> comp;
                stamp[start] = seen;
                queue.assign(1, start);
                while (! queue.empty()) {
                    int x = queue.back();
                    queue.pop_back();
                    comp.push_back(x);
                    for (int y : neighbours[x])
                        if (stamp[y] == in_set) {
                            stamp[y] = seen;
                            queue.push_back(y);
                        }
                }
                std::sort(comp.begin(), comp.end());
                result.push_back(std::move(comp));
            }
            return result;
        }

        auto boundary_of(const vector<int> & comp) -> vector<int>
        {
            vector<int> result;
            for (int x : comp)
                for (int y : neighbours[x])
                    if (bound[y])
                        result.push_back(y);
            std::sort(result.begin(), result.end());
            result.erase(std::unique(result.begin(), result.end()), result.end());
            return result;
        }

        auto make_key(const vector<int> & comp, const vector<int> & boundary) -> vector<uint64_t>
        {
            size_t words = (var_count + 63) / 64;
            vector<uint64_t> key(words + 1, 0);
            for (int x : comp)
                key[x >> 6] |= uint64_t{1} << (x & 63);
            key[words] = boundary.size();

            size_t b = boundary.size();
            size_t pattern_words = (b + 63) / 64;
            PointMask<W> used;
            for (int u : boundary)
                used |= value[u];
            vector<Pattern> patterns;
            for (int p : used.points()) {
                Pattern pat{};
                for (size_t j = 0 ; j < b ; ++j)
                    if (value[boundary[j]].test(p))
                        pat[j >> 6] |= uint64_t{1} << (j & 63);
                patterns.push_back(pat);
            }
            std::sort(patterns.begin(), patterns.end());
            for (auto & pat : patterns)
                for (size_t w = 0 ; w < pattern_words ; ++w)
                    key.push_back(pat[w]);
            return key;
        }

        auto solve_component(const vector<int> & comp) -> bool
        {
            if (++node_count > budget)
                throw BudgetExceeded("search exceeded " + std::to_string(budget) + " nodes");

            auto boundary = boundary_of(comp);
            vector<uint64_t> key;
            bool keyed = boundary.size() <= max_boundary;
            if (keyed) {
                key = make_key(comp, boundary);
                auto found = memo.find(key);
                if (found != memo.end()) {
                    if (found->second == 0)
                        return false;
                    if (! witness_mode)
                        return true;
                }
            }

            vector<int> pool;
            for (int x : comp)
                if (first_rank[x] >= 0)
                    pool.push_back(x);
            if (pool.empty())
                pool = comp;

            int best_var = -1;
            vector<PointMask<W>> best;
            bool any_adjacent = false;
            for (int x : pool)
                for (int y : neighbours[x])
                    if (bound[y])
                        any_adjacent = true;
            if (! any_adjacent) {
                for (int x : pool)
                    if (best_var < 0 || degree[x] > degree[best_var])
                        best_var = x;
                best = candidates(best_var, boundary);
            }
            else {
                for (int x : pool) {
                    bool adjacent = false;
                    for (int y : neighbours[x])
                        if (bound[y]) {
                            adjacent = true;
                            break;
                        }
                    if (! adjacent)
                        continue;
                    auto c = candidates(x, boundary);
                    if (best_var < 0 || c.size() < best.size()) {
                        best_var = x;
                        best = std::move(c);
                        if (best.size() <= 1)
                            break;
                    }
                }
            }

            bool result = false;
            vector<int> rest;
            for (int x : comp)
                if (x != best_var)
                    rest.push_back(x);

            for (auto & s : best) {
                value[best_var] = s;
                bound[best_var] = 1;
                auto parts = components(rest);
                vector<int> solved;
                bool ok = true;
                for (auto & part : parts) {
                    if (solve_component(part))
                        solved.insert(solved.end(), part.begin(), part.end());
                    else {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    result = true;
                    break;
                }
                for (int x : solved)
                    bound[x] = 0;
                bound[best_var] = 0;
            }

            if (keyed) {
                if (memo.size() >= memo_limit)
                    memo.clear();
                memo.emplace(std::move(key), result ? 1 : 0);
            }
            return result;
        }

        auto run(span<const PointMask<W>> free_values) -> bool
        {
            if (free_values.size() != query.free.size())
                throw InvalidInput("expected " + std::to_string(query.free.size()) + " free values, got " + std::to_string(free_values.size()));
            std::fill(bound.begin(), bound.end(), 0);
            int limit = cap < 0 ? PointMask<W>::capacity : cap;
            for (size_t i = 0 ; i < free_values.size() ; ++i) {
                auto & s = free_values[i];
                if (s.count() != k)
                    throw InvalidInput("free value of the wrong size");
                for (int p : s.points())
                    if (p >= limit)
                        throw InvalidInput("free value outside the base set");
                value[query.free[i]] = s;
                bound[query.free[i]] = 1;
            }
            for (int x : query.free)
                for (int a : atoms_of[x])
                    if (! atom_ok(a))
                        return false;
            // atoms without any variable cannot occur; atoms on unbound variables only are checked during search
            vector<int> open;
            for (int x = 0 ; x < var_count ; ++x)
                if (! bound[x])
                    open.push_back(x);
            for (auto & part : components(open))
                if (! solve_component(part))
                    return false;
            return true;
        }
    };

    template <std::size_t W>
    QuerySolver<W>::QuerySolver(const ConjunctiveQuery & query, int k, int point_cap, uint64_t node_budget) :
        _imp(new Imp(query, k, point_cap, node_budget))
    {
    }

    template <std::size_t W>
    QuerySolver<W>::~QuerySolver() = default;

    template <std::size_t W>
    QuerySolver<W>::QuerySolver(QuerySolver &&) = default;

    template <std::size_t W>
    auto QuerySolver<W>::operator= (QuerySolver &&) -> QuerySolver & = default;

    template <std::size_t W>
    auto QuerySolver<W>::satisfiable(span<const PointMask<W>> free_values) -> bool
    {
        _imp->witness_mode = false;
        return _imp->run(free_values);
    }

    template <std::size_t W>
    auto QuerySolver<W>::solve(span<const PointMask<W>> free_values) -> optional<vector<PointMask<W>>>
    {
        _imp->witness_mode = true;
        if (! _imp->run(free_values))
            return std::nullopt;
        return _imp->value;
    }

    template <std::size_t W>
    auto QuerySolver<W>::nodes() const -> uint64_t
    {
        return _imp->node_count;
    }

    template <std::size_t W>
    auto QuerySolver<W>::cache_size() const -> size_t
    {
        return _imp->memo.size();
    }

    template class QuerySolver<1>;
    template class QuerySolver<4>;
}
