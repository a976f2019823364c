/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_TESTS_ORACLES_HH
#define JOHNSON_TESTS_ORACLES_HH 1

// Slow reference implementations. Nothing here calls into the library's
// search, orbit or solver code.

#include <johnson/formula.hh>
#include <johnson/ksubset.hh>
#include <johnson/relation_symbol.hh>

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle
{
    using johnson::KSubset;
    using johnson::RelationKind;
    using johnson::RelationSymbol;

    inline auto meet(KSubset a, KSubset b) -> int
    {
        int count = 0;
        for (int p = 0 ; p < 64 ; ++p)
            count += a.contains(p) && b.contains(p);
        return count;
    }

    /// Membership straight from the definitions of the symbols.
    inline auto holds(const RelationSymbol & s, int k, const std::vector<KSubset> & t) -> bool
    {
        switch (s.kind) {
            case RelationKind::Exact: return meet(t[0], t[1]) == s.index;
            case RelationKind::AtMost: return meet(t[0], t[1]) <= s.index;
            case RelationKind::AtLeast: return meet(t[0], t[1]) >= s.index;
            case RelationKind::Edge: return meet(t[0], t[1]) == k - 1;
            case RelationKind::Near: return meet(t[0], t[1]) == k - 2;
            case RelationKind::Overlap: return meet(t[0], t[1]) == k - 1 || meet(t[0], t[1]) == k - 2;
            case RelationKind::Union: return (s.sizes >> meet(t[0], t[1])) & 1;
            case RelationKind::Eq: return t[0] == t[1];
            case RelationKind::Neq: return ! (t[0] == t[1]);
            case RelationKind::Sunflower: {
                for (std::size_t p = 0 ; p < t.size() ; ++p)
                    for (std::size_t q = p + 1 ; q < t.size() ; ++q)
                        if (meet(t[p], t[q]) != s.index)
                            return false;
                int common = 0;
                for (int p = 0 ; p < 64 ; ++p)
                    common += std::all_of(t.begin(), t.end(), [&] (KSubset v) { return v.contains(p); });
                return common == s.index;
            }
            case RelationKind::Core: {
                if (meet(t[0], t[1]) != s.index || meet(t[2], t[3]) != s.index)
                    return false;
                for (int p = 0 ; p < 64 ; ++p)
                    if ((t[0].contains(p) && t[1].contains(p)) != (t[2].contains(p) && t[3].contains(p)))
                        return false;
                return true;
            }
        }
        return false;
    }

    /// All k-subsets of {0, .., n-1} by counting through all masks.
    inline auto vertices(int n, int k) -> std::vector<KSubset>
    {
        std::vector<KSubset> result;
        for (std::uint64_t m = 0 ; m < (std::uint64_t{1} << n) ; ++m)
            if (std::popcount(m) == k)
                result.emplace_back(m);
        return result;
    }

    using Env = std::map<std::string, KSubset>;

    /// Tarski semantics, quantifiers ranging over the given vertex list.
    inline auto evaluate(const johnson::Formula & f, int k, const std::vector<KSubset> & universe, Env & env) -> bool
    {
        using johnson::NodeKind;
        switch (f.kind) {
            case NodeKind::Atom: {
                std::vector<KSubset> t;
                for (auto & v : f.vars)
                    t.push_back(env.at(v));
                return holds(f.symbol, k, t);
            }
            case NodeKind::Equal:
                return env.at(f.vars[0]) == env.at(f.vars[1]);
            case NodeKind::And:
                for (auto & c : f.children)
                    if (! evaluate(c, k, universe, env))
                        return false;
                return true;
            case NodeKind::Or:
                for (auto & c : f.children)
                    if (evaluate(c, k, universe, env))
                        return true;
                return false;
            case NodeKind::Not:
                return ! evaluate(f.children[0], k, universe, env);
            case NodeKind::Exists:
            case NodeKind::Forall: {
                bool want = f.kind == NodeKind::Exists;
                auto saved = env;
                std::vector<std::size_t> idx(f.vars.size(), 0);
                bool result = ! want;
                while (true) {
                    for (std::size_t i = 0 ; i < f.vars.size() ; ++i)
                        env[f.vars[i]] = universe[idx[i]];
                    if (evaluate(f.children[0], k, universe, env) == want) {
                        result = want;
                        break;
                    }
                    std::size_t i = 0;
                    while (i < idx.size() && ++idx[i] == universe.size())
                        idx[i++] = 0;
                    if (i == idx.size())
                        break;
                }
                env = saved;
                return result;
            }
        }
        return false;
    }

    // orbits of pairs under S_n: components of the graph whose edges apply
    // the generators (0 1) and (0 1 .. n-1)
    inline auto pair_orbits_by_generators(int n, int k) -> int
    {
        auto verts = vertices(n, k);
        std::map<std::uint64_t, int> index;
        for (std::size_t i = 0 ; i < verts.size() ; ++i)
            index[verts[i].bits()] = static_cast<int>(i);
        auto apply = [&] (std::uint64_t m, const std::vector<int> & perm) {
            std::uint64_t r = 0;
            for (int p = 0 ; p < n ; ++p)
                if ((m >> p) & 1)
                    r |= std::uint64_t{1} << perm[p];
            return r;
        };
        std::vector<int> swap01(n), cycle(n);
        for (int p = 0 ; p < n ; ++p) {
            swap01[p] = p;
            cycle[p] = (p + 1) % n;
        }
        if (n >= 2)
            std::swap(swap01[0], swap01[1]);

        int v = static_cast<int>(verts.size());
        std::vector<int> parent(v * v);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int (int)> find = [&] (int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        for (int a = 0 ; a < v ; ++a)
            for (int b = 0 ; b < v ; ++b)
                for (auto * perm : {&swap01, &cycle}) {
                    int c = index[apply(verts[a].bits(), *perm)], d = index[apply(verts[b].bits(), *perm)];
                    parent[find(a * v + b)] = find(c * v + d);
                }
        std::set<int> roots;
        for (int x = 0 ; x < v * v ; ++x)
            roots.insert(find(x));
        return static_cast<int>(roots.size());
    }
}

#endif
