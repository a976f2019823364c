/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/canonical.hh>
#include <johnson/errors.hh>

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

using std::optional;
using std::pair;
using std::string;
using std::uint64_t;
using std::vector;

namespace johnson
{
    auto index_set_to_string(IndexSet I) -> string
    {
        string result = "{";
        bool first = true;
        for (int i = 0 ; i < 32 ; ++i)
            if ((I >> i) & 1) {
                result += (first ? "" : ",") + std::to_string(i + 1);
                first = false;
            }
        return result + "}";
    }

    namespace
    {
        auto find_root(vector<int> & parent, int x) -> int
        {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        }

        auto normalise(vector<int> & parent) -> Partition
        {
            int n = static_cast<int>(parent.size());
            Partition result(n);
            vector<int> least(n, -1);
            for (int i = 0 ; i < n ; ++i) {
                int r = find_root(parent, i);
                if (least[r] < 0)
                    least[r] = i;
                result[i] = least[r];
            }
            return result;
        }
    }

    auto eq_closure(int size, const Relation2 & r) -> Partition
    {
        vector<int> parent(size);
        std::iota(parent.begin(), parent.end(), 0);
        for (auto [a, b] : r) {
            if (a < 0 || b < 0 || a >= size || b >= size)
                throw InvalidInput("relation pair out of range");
            parent[find_root(parent, a)] = find_root(parent, b);
        }
        return normalise(parent);
    }

    auto refines(const Partition & p, const Partition & q) -> bool
    {
        for (size_t i = 0 ; i < p.size() ; ++i)
            if (q[i] != q[p[i]])
                return false;
        return true;
    }

    auto pairs_of(const Partition & p) -> Relation2
    {
        Relation2 result;
        for (size_t i = 0 ; i < p.size() ; ++i)
            result.emplace_back(static_cast<int>(i), p[i]);
        return result;
    }

    auto join(const Partition & p, const Partition & q) -> Partition
    {
        auto r = pairs_of(p);
        auto s = pairs_of(q);
        r.insert(r.end(), s.begin(), s.end());
        return eq_closure(static_cast<int>(p.size()), r);
    }

    auto E_I_relation(const vector<OrderedKTuple> & pool, IndexSet I) -> Partition
    {
        std::map<vector<Rational>, int> first;
        Partition result(pool.size());
        for (size_t x = 0 ; x < pool.size() ; ++x) {
            vector<Rational> key;
            for (int i = 1 ; i <= pool[x].k() ; ++i)
                if ((I >> (i - 1)) & 1)
                    key.push_back(pool[x][i]);
            result[x] = first.emplace(key, static_cast<int>(x)).first->second;
        }
        return result;
    }

    auto pair_type_data(const OrderedKTuple & a, const OrderedKTuple & b) -> PairTypeData
    {
        PairTypeData d;
        for (int i = 1 ; i <= a.k() ; ++i) {
            if (a[i] == b[i])
                d.equal |= IndexSet{1} << (i - 1);
            if (std::find(b.coords().begin(), b.coords().end(), a[i]) != b.coords().end())
                d.left |= IndexSet{1} << (i - 1);
        }
        return d;
    }

    auto pair_orbit_code(const OrderedKTuple & a, const OrderedKTuple & b) -> uint64_t
    {
        uint64_t code = 0;
        for (int r = 1 ; r <= a.k() ; ++r)
            for (int s = 1 ; s <= b.k() ; ++s)
                code = code * 3 + (a[r] < b[s] ? 0 : a[r] == b[s] ? 1 : 2);
        return code;
    }

    auto identity_behavior(int k) -> BehaviorMap
    {
        BehaviorMap b{k, {}};
        for (IndexSet I = 0 ; I <= full_index_set(k) ; ++I)
            b.table.push_back(I);
        return b;
    }

    auto is_meet_preserving(const BehaviorMap & b) -> bool
    {
        IndexSet full = full_index_set(b.k);
        for (IndexSet I = 0 ; I <= full ; ++I)
            for (IndexSet J = 0 ; J <= full ; ++J)
                if (b(I & J) != (b(I) & b(J)))
                    return false;
        return true;
    }

    auto is_permutational(const BehaviorMap & b) -> optional<vector<int>>
    {
        vector<int> pi(b.k);
        IndexSet seen = 0;
        for (int i = 1 ; i <= b.k ; ++i) {
            IndexSet image = b(IndexSet{1} << (i - 1));
            if (std::popcount(image) != 1 || (seen & image))
                return std::nullopt;
            seen |= image;
            pi[i - 1] = std::countr_zero(image) + 1;
        }
        for (IndexSet I = 0 ; I <= full_index_set(b.k) ; ++I) {
            IndexSet image = 0;
            for (int i = 1 ; i <= b.k ; ++i)
                if ((I >> (i - 1)) & 1)
                    image |= IndexSet{1} << (pi[i - 1] - 1);
            if (b(I) != image)
                return std::nullopt;
        }
        return pi;
    }

    auto behavior_from_cosingletons(int k, const vector<IndexSet> & cosingleton) -> BehaviorMap
    {
        if (static_cast<int>(cosingleton.size()) != k)
            throw InvalidInput("need one co-singleton value per index");
        IndexSet full = full_index_set(k);
        BehaviorMap b{k, vector<IndexSet>(full + 1)};
        for (IndexSet I = 0 ; I <= full ; ++I) {
            IndexSet value = full;
            for (int i = 1 ; i <= k ; ++i)
                if (! ((I >> (i - 1)) & 1))
                    value &= cosingleton[i - 1];
            b.table[I] = value;
        }
        return b;
    }

    namespace
    {
        auto cosingleton(const BehaviorMap & b, int i) -> IndexSet
        {
            return b(full_index_set(b.k) & ~(IndexSet{1} << (i - 1)));
        }
    }

    auto chain_satisfies(const BehaviorMap & b, const vector<int> & chain) -> bool
    {
        int k = b.k;
        if (static_cast<int>(chain.size()) != k - 1)
            return false;
        IndexSet used = 0, meet = full_index_set(k);
        for (int l = 1 ; l <= k - 1 ; ++l) {
            int i = chain[l - 1];
            if (i < 1 || i > k || ((used >> (i - 1)) & 1))
                return false;
            used |= IndexSet{1} << (i - 1);
            meet &= cosingleton(b, i);
            if (std::popcount(meet) > k - l - 1)
                return false;
        }
        return true;
    }

    auto shrinking_chain(const BehaviorMap & b) -> ChainResult
    {
        int k = b.k;
        if (! is_meet_preserving(b))
            return {std::nullopt, "not meet-preserving"};
        if (b(0) != 0)
            return {std::nullopt, "the empty set is not sent to itself"};
        int first = 0;
        for (int i = 1 ; i <= k && ! first ; ++i)
            if (std::popcount(cosingleton(b, i)) <= k - 2)
                first = i;
        if (! first)
            return {std::nullopt, "every co-singleton image has k-1 or more elements"};

        vector<int> chain{first};
        IndexSet used = IndexSet{1} << (first - 1), meet = cosingleton(b, first);
        for (int l = 1 ; l < k - 1 ; ++l) {
            int next = 0;
            if (std::popcount(meet) <= k - l - 2) {
                for (int i = 1 ; i <= k && ! next ; ++i)
                    if (! ((used >> (i - 1)) & 1))
                        next = i;
            }
            else {
                // some index outside the image of [k]-{i} removes a survivor;
                // it exists because the images meet in the empty set
                int survivor = std::countr_zero(meet) + 1;
                for (int i = 1 ; i <= k && ! next ; ++i)
                    if (! ((used >> (i - 1)) & 1) && ! ((cosingleton(b, i) >> (survivor - 1)) & 1))
                        next = i;
            }
            if (! next)
                return {std::nullopt, "no unused index shrinks the intersection"};
            chain.push_back(next);
            used |= IndexSet{1} << (next - 1);
            meet &= cosingleton(b, next);
        }
        if (! chain_satisfies(b, chain))
            return {std::nullopt, "greedy chain breaks a size bound"};
        return {chain, ""};
    }

    auto verify_permutational_dichotomy(int k) -> DichotomyReport
    {
        if (k < 1 || k > 4)
            throw BudgetExceeded("co-singleton tables enumerated only for k <= 4");
        DichotomyReport report;
        report.k = k;
        IndexSet full = full_index_set(k);
        uint64_t total = uint64_t{1} << (k * k);
        for (uint64_t code = 0 ; code < total ; ++code) {
            ++report.tables;
            vector<IndexSet> c(k);
            for (int i = 0 ; i < k ; ++i)
                c[i] = (code >> (k * i)) & full;
            auto b = behavior_from_cosingletons(k, c);
            if (b(0) != 0)
                continue;
            ++report.retained;
            bool small = std::any_of(c.begin(), c.end(), [&] (IndexSet s) { return std::popcount(s) <= k - 2; });
            if (is_permutational(b)) {
                ++report.permutational;
                if (small)
                    ++report.permutational_flagged;
                continue;
            }
            if (! small) {
                ++report.violations;
                if (! report.first_violation)
                    report.first_violation = b;
                continue;
            }
            ++report.small_image;
            if (shrinking_chain(b).chain)
                ++report.chains;
            else
                ++report.chain_failures;
        }
        return report;
    }

    FragmentMap::FragmentMap(int k, vector<pair<OrderedKTuple, OrderedKTuple>> entries) :
        _k(k),
        _entries(std::move(entries))
    {
        std::map<OrderedKTuple, int> seen;
        for (auto & [from, to] : _entries) {
            if (from.k() != k || to.k() != k)
                throw InvalidInput("map entry with the wrong number of coordinates");
            if (! seen.emplace(from, 0).second)
                throw InvalidInput("domain tuple " + from.to_string() + " listed twice");
        }
    }

    auto FragmentMap::domain() const -> vector<OrderedKTuple>
    {
        vector<OrderedKTuple> result;
        for (auto & e : _entries)
            result.push_back(e.first);
        return result;
    }

    auto FragmentMap::image_pool() const -> vector<OrderedKTuple>
    {
        vector<OrderedKTuple> result;
        for (auto & e : _entries)
            result.push_back(e.second);
        std::sort(result.begin(), result.end());
        result.erase(std::unique(result.begin(), result.end()), result.end());
        return result;
    }

    auto FragmentMap::image_index() const -> vector<int>
    {
        auto pool = image_pool();
        vector<int> result;
        for (auto & e : _entries)
            result.push_back(static_cast<int>(std::lower_bound(pool.begin(), pool.end(), e.second) - pool.begin()));
        return result;
    }

    auto map_pool(const vector<OrderedKTuple> & pool, const std::function<OrderedKTuple (const OrderedKTuple &)> & f) -> FragmentMap
    {
        vector<pair<OrderedKTuple, OrderedKTuple>> entries;
        for (auto & a : pool)
            entries.emplace_back(a, f(a));
        return FragmentMap(pool.empty() ? 0 : pool[0].k(), std::move(entries));
    }

    auto identity_map(const vector<OrderedKTuple> & pool) -> FragmentMap
    {
        return map_pool(pool, [] (const OrderedKTuple & a) { return a; });
    }

    auto collapse_last_map(const vector<OrderedKTuple> & pool) -> FragmentMap
    {
        Rational top(0);
        for (auto & a : pool)
            top = std::max(top, a[a.k()]);
        Rational fresh = top + 1;
        return map_pool(pool, [&] (const OrderedKTuple & a) {
            auto c = a.coords();
            c.back() = fresh;
            return OrderedKTuple(c);
        });
    }

    auto automorphism_map(const vector<OrderedKTuple> & pool) -> FragmentMap
    {
        return map_pool(pool, [] (const OrderedKTuple & a) {
            auto c = a.coords();
            for (auto & x : c)
                x = (2 * x + 1) / 3;
            return OrderedKTuple(c);
        });
    }

    auto reversal_map(const vector<OrderedKTuple> & pool) -> FragmentMap
    {
        return map_pool(pool, [] (const OrderedKTuple & a) {
            vector<Rational> c;
            for (int i = a.k() ; i >= 1 ; --i)
                c.push_back(-a[i]);
            return OrderedKTuple(c);
        });
    }

    auto generic_pool(int k, int points) -> vector<OrderedKTuple>
    {
        if (points <= 0)
            points = 2 * k + 1;
        return increasing_tuples(points, k);
    }

    auto canonicity_check(const FragmentMap & fm) -> CanonicityReport
    {
        CanonicityReport report;
        auto & e = fm.entries();
        std::map<uint64_t, pair<size_t, size_t>> first;
        for (size_t x = 0 ; x < e.size() ; ++x)
            for (size_t y = 0 ; y < e.size() ; ++y) {
                auto [it, fresh] = first.emplace(pair_orbit_code(e[x].first, e[y].first), pair{x, y});
                if (fresh)
                    continue;
                auto [u, v] = it->second;
                if (pair_orbit_code(e[u].second, e[v].second) != pair_orbit_code(e[x].second, e[y].second)) {
                    report.canonical = false;
                    report.witness = std::array<OrderedKTuple, 4>{e[u].first, e[v].first, e[x].first, e[y].first};
                    return report;
                }
            }
        return report;
    }

    auto image_closure(const FragmentMap & fm, const Partition & on_domain) -> Partition
    {
        auto index = fm.image_index();
        Relation2 r;
        for (size_t x = 0 ; x < on_domain.size() ; ++x)
            r.emplace_back(index[x], index[on_domain[x]]);
        return eq_closure(static_cast<int>(fm.image_pool().size()), r);
    }

    auto behavior_of(const FragmentMap & fm) -> BehaviorResult
    {
        int k = fm.k();
        IndexSet full = full_index_set(k);
        auto domain = fm.domain();
        auto image = fm.image_pool();
        vector<Partition> on_image;
        for (IndexSet J = 0 ; J <= full ; ++J)
            on_image.push_back(E_I_relation(image, J));

        BehaviorResult result;
        BehaviorMap b{k, vector<IndexSet>(full + 1)};
        for (IndexSet I = 0 ; I <= full ; ++I) {
            auto closed = image_closure(fm, E_I_relation(domain, I));
            optional<IndexSet> best;
            for (IndexSet J = 0 ; J <= full ; ++J)
                if (on_image[J] == closed && (! best || std::popcount(J) > std::popcount(*best)))
                    best = J;
            if (best)
                b.table[I] = *best;
            else
                result.not_of_form.push_back(I);
        }
        if (result.not_of_form.empty())
            result.map = b;
        return result;
    }

    namespace
    {
        /// Union-find per orbit of pairs, fed by every pair of increasing
        /// integer tuples over 0 .. grid-1.
        struct OrbitClosures
        {
            std::map<uint64_t, vector<int>> parent;

            auto root(vector<int> & p, int x) -> int
            {
                while (p[x] != x)
                    x = p[x] = p[p[x]];
                return x;
            }
        };

        auto int_orbit_code(const vector<int> & a, const vector<int> & b) -> uint64_t
        {
            uint64_t code = 0;
            for (size_t r = 0 ; r < a.size() ; ++r)
                for (size_t s = 0 ; s < b.size() ; ++s)
                    code = code * 3 + (a[r] < b[s] ? 0 : a[r] == b[s] ? 1 : 2);
            return code;
        }

        /// For each orbit of pairs present in the pool, closing the orbit
        /// inside a widened pool relates exactly the pool pairs agreeing on
        /// the orbit's equality pattern. Only the order of coordinates
        /// matters, so the pool's values are placed on an integer grid with
        /// `gap` free points between consecutive values and `margin` beyond
        /// each end; the tuples over the grid supply the interpolating
        /// tuples an orbit needs to connect two pool tuples. The grid grows
        /// until the check passes or max_grid is reached.
        auto check_orbits_close(const vector<OrderedKTuple> & pool, LemmaCheck & check, int max_grid = 40) -> void
        {
            if (pool.empty())
                return;
            int k = pool[0].k();
            vector<Rational> values;
            for (auto & a : pool)
                values.insert(values.end(), a.coords().begin(), a.coords().end());
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            int m = static_cast<int>(values.size());

            std::map<uint64_t, pair<size_t, size_t>> present;
            for (size_t x = 0 ; x < pool.size() ; ++x)
                for (size_t y = 0 ; y < pool.size() ; ++y)
                    present.emplace(pair_orbit_code(pool[x], pool[y]), pair{x, y});
            check.checked = present.size();

            for (int size = 1 ; ; ++size) {
                int gap = size, margin = size + 1;
                int grid = m + (m - 1) * gap + 2 * margin;
                if (grid > max_grid && size > 1) {
                    check.pass = false;
                    check.note = "no grid up to " + std::to_string(max_grid) + " points connects every orbit";
                    return;
                }

                vector<vector<int>> wide;
                vector<int> t(k);
                std::function<void (int, int)> fill = [&] (int pos, int from) {
                    if (pos == k) {
                        wide.push_back(t);
                        return;
                    }
                    for (int v = from ; v < grid ; ++v) {
                        t[pos] = v;
                        fill(pos + 1, v + 1);
                    }
                };
                fill(0, 0);
                std::map<vector<int>, int> position_of;
                for (size_t i = 0 ; i < wide.size() ; ++i)
                    position_of.emplace(wide[i], static_cast<int>(i));

                OrbitClosures closures;
                for (auto & [code, witness] : present) {
                    auto & p = closures.parent[code];
                    p.resize(wide.size());
                    std::iota(p.begin(), p.end(), 0);
                }
                for (size_t x = 0 ; x < wide.size() ; ++x)
                    for (size_t y = 0 ; y < wide.size() ; ++y) {
                        auto it = closures.parent.find(int_orbit_code(wide[x], wide[y]));
                        if (it != closures.parent.end())
                            it->second[closures.root(it->second, x)] = closures.root(it->second, y);
                    }

                vector<int> position;
                for (auto & a : pool) {
                    vector<int> placed;
                    for (auto & c : a.coords())
                        placed.push_back(margin + static_cast<int>(std::lower_bound(values.begin(), values.end(), c) - values.begin()) * (gap + 1));
                    position.push_back(position_of.at(placed));
                }

                optional<pair<size_t, size_t>> failed;
                for (auto & [code, witness] : present) {
                    auto & p = closures.parent[code];
                    auto expected = E_I_relation(pool, pair_type_data(pool[witness.first], pool[witness.second]).equal);
                    bool ok = true;
                    for (size_t x = 0 ; ok && x < pool.size() ; ++x)
                        for (size_t y = 0 ; ok && y < pool.size() ; ++y)
                            ok = (closures.root(p, position[x]) == closures.root(p, position[y])) == related(expected, x, y);
                    if (! ok && ! failed)
                        failed = witness;
                }
                if (! failed) {
                    check.counterexample.reset();
                    check.note = "grid of " + std::to_string(grid) + " points";
                    return;
                }
                check.counterexample.emplace(pool[failed->first], pool[failed->second]);
            }
        }

        auto check_join(const vector<OrderedKTuple> & pool, LemmaCheck & check) -> void
        {
            if (pool.empty())
                return;
            IndexSet full = full_index_set(pool[0].k());
            vector<Partition> e;
            for (IndexSet I = 0 ; I <= full ; ++I)
                e.push_back(E_I_relation(pool, I));
            for (IndexSet I = 0 ; I <= full ; ++I)
                for (IndexSet J = 0 ; J <= full ; ++J) {
                    ++check.checked;
                    if (join(e[I], e[J]) != e[I & J] && check.pass) {
                        check.pass = false;
                        check.note = "fails at I = " + index_set_to_string(I) + ", J = " + index_set_to_string(J);
                    }
                }
        }
    }

    auto pool_adequacy(const vector<OrderedKTuple> & pool) -> PoolAdequacy
    {
        PoolAdequacy result;
        if (pool.empty())
            return result;
        IndexSet full = full_index_set(pool[0].k());
        vector<Partition> e;
        for (IndexSet I = 0 ; I <= full ; ++I)
            e.push_back(E_I_relation(pool, I));
        for (IndexSet I = 0 ; I <= full ; ++I)
            for (IndexSet J = I + 1 ; J <= full ; ++J)
                if (e[I] == e[J])
                    result.separates = false;
        LemmaCheck joins, orbits;
        check_join(pool, joins);
        check_orbits_close(pool, orbits);
        result.joins = joins.pass;
        result.orbits_close = orbits.pass;
        return result;
    }

    auto verify_join(const vector<OrderedKTuple> & pool) -> LemmaCheck
    {
        LemmaCheck check{"join of agreement relations", true, true, 0, std::nullopt, ""};
        check_join(pool, check);
        return check;
    }

    auto verify_image_join(const FragmentMap & fm) -> LemmaCheck
    {
        LemmaCheck check{"image of a join", true, true, 0, std::nullopt, ""};
        IndexSet full = full_index_set(fm.k());
        auto domain = fm.domain();
        vector<Partition> closed;
        for (IndexSet I = 0 ; I <= full ; ++I)
            closed.push_back(image_closure(fm, E_I_relation(domain, I)));
        for (IndexSet I = 0 ; I <= full ; ++I)
            for (IndexSet J = 0 ; J <= full ; ++J) {
                ++check.checked;
                if (closed[I & J] != join(closed[I], closed[J]) && check.pass) {
                    check.pass = false;
                    check.note = "fails at I = " + index_set_to_string(I) + ", J = " + index_set_to_string(J);
                }
            }
        return check;
    }

    namespace
    {
        auto random_relation(int size, std::mt19937_64 & rng) -> Relation2
        {
            Relation2 r;
            if (size == 0)
                return r;
            std::uniform_int_distribution<int> count(0, 2 * size), element(0, size - 1);
            for (int c = count(rng) ; c > 0 ; --c)
                r.emplace_back(element(rng), element(rng));
            return r;
        }
    }

    auto verify_image_closure(const FragmentMap & fm, std::mt19937_64 & rng, int samples) -> LemmaCheck
    {
        LemmaCheck check{"closing commutes with the image", true, true, 0, std::nullopt, ""};
        auto index = fm.image_index();
        int domain = static_cast<int>(fm.entries().size()), image = static_cast<int>(fm.image_pool().size());
        auto image_of = [&] (const Relation2 & r) {
            Relation2 result;
            for (auto [a, b] : r)
                result.emplace_back(index[a], index[b]);
            return result;
        };
        for (int s = 0 ; s < samples ; ++s) {
            auto r = random_relation(domain, rng);
            auto closed_first = eq_closure(image, image_of(pairs_of(eq_closure(domain, r))));
            auto image_first = eq_closure(image, image_of(r));
            ++check.checked;
            if (closed_first != image_first && check.pass) {
                check.pass = false;
                check.note = "sample " + std::to_string(s);
            }
        }
        return check;
    }

    auto verify_closure_laws(int size, std::mt19937_64 & rng, int samples) -> LemmaCheck
    {
        LemmaCheck check{"closure laws", true, true, 0, std::nullopt, ""};
        for (int s = 0 ; s < samples ; ++s) {
            auto r = random_relation(size, rng);
            auto bigger = r;
            auto extra = random_relation(size, rng);
            bigger.insert(bigger.end(), extra.begin(), extra.end());
            auto closed = eq_closure(size, r);
            ++check.checked;
            bool extensive = std::all_of(r.begin(), r.end(), [&] (auto p) { return related(closed, p.first, p.second); });
            bool idempotent = eq_closure(size, pairs_of(closed)) == closed;
            bool monotone = refines(closed, eq_closure(size, bigger));
            if (! (extensive && idempotent && monotone) && check.pass) {
                check.pass = false;
                check.note = string(! extensive ? "not extensive" : ! idempotent ? "not idempotent" : "not monotone")
                    + " at sample " + std::to_string(s);
            }
        }
        return check;
    }

    auto PairLemmaReport::pass() const -> bool
    {
        return std::all_of(checks.begin(), checks.end(), [] (const LemmaCheck & c) { return ! c.applicable || c.pass; });
    }

    auto verify_pair_lemmas(const FragmentMap & fm) -> PairLemmaReport
    {
        PairLemmaReport report;
        auto & e = fm.entries();
        auto domain = fm.domain();

        auto canon = canonicity_check(fm);
        report.canonical = canon.canonical;
        LemmaCheck canonical{"canonical on pairs", true, canon.canonical, 1, std::nullopt, ""};
        if (canon.witness)
            canonical.counterexample.emplace((*canon.witness)[2], (*canon.witness)[3]);
        report.checks.push_back(canonical);

        auto adequacy = pool_adequacy(domain);
        report.checks.push_back(LemmaCheck{"domain pool adequate", true, adequacy.ok(), 1, std::nullopt,
                adequacy.ok() ? "" : string(! adequacy.separates ? "agreement relations coincide" : ! adequacy.joins ? "joins fail" : "orbits do not close")});

        auto behavior = behavior_of(fm);
        report.behavior = behavior.map;
        LemmaCheck determined{"behavior determined", true, behavior.map.has_value(), 1, std::nullopt, ""};
        for (auto I : behavior.not_of_form)
            determined.note += (determined.note.empty() ? "no agreement relation for " : ", ") + index_set_to_string(I);
        report.checks.push_back(determined);

        LemmaCheck pattern{"equality pattern", true, true, 0, std::nullopt, ""};
        LemmaCheck left{"left intersection", true, true, 0, std::nullopt, ""};
        LemmaCheck disjoint{"disjoint pairs stay disjoint", false, true, 0, std::nullopt, ""};
        LemmaCheck growth{"intersections do not grow", false, true, 0, std::nullopt, ""};
        if (behavior.map) {
            auto & b = *behavior.map;
            disjoint.applicable = b(0) == 0;
            growth.applicable = is_permutational(b).has_value();
            auto fail = [&] (LemmaCheck & c, size_t x, size_t y) {
                if (c.pass)
                    c.counterexample.emplace(e[x].first, e[y].first);
                c.pass = false;
            };
            for (size_t x = 0 ; x < e.size() ; ++x)
                for (size_t y = 0 ; y < e.size() ; ++y) {
                    auto before = pair_type_data(e[x].first, e[y].first);
                    auto after = pair_type_data(e[x].second, e[y].second);
                    ++pattern.checked;
                    if (b(before.equal) != after.equal)
                        fail(pattern, x, y);
                    ++left.checked;
                    if ((after.left & ~b(before.left)) != 0)
                        fail(left, x, y);
                    if (disjoint.applicable && before.left == 0) {
                        ++disjoint.checked;
                        if (after.left != 0)
                            fail(disjoint, x, y);
                    }
                    if (growth.applicable) {
                        ++growth.checked;
                        if (std::popcount(after.left) > std::popcount(before.left))
                            fail(growth, x, y);
                    }
                }
        }
        else {
            pattern.applicable = left.applicable = false;
            pattern.note = left.note = disjoint.note = growth.note = "behavior undetermined";
        }
        report.checks.push_back(pattern);
        report.checks.push_back(left);
        report.checks.push_back(disjoint);
        report.checks.push_back(growth);

        LemmaCheck orbits{"pair orbits close to agreement relations", true, true, 0, std::nullopt, ""};
        check_orbits_close(domain, orbits);
        report.checks.push_back(orbits);
        return report;
    }
}
