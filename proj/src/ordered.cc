/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/ordered.hh>
#include <johnson/errors.hh>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

using std::int64_t;
using std::optional;
using std::string;
using std::uint64_t;
using std::vector;

namespace johnson
{
    auto rational_to_string(const Rational & q) -> string
    {
        if (q.denominator() == 1)
            return std::to_string(q.numerator());
        return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
    }

    auto parse_rational(const string & text) -> Rational
    {
        auto slash = text.find('/');
        auto parse_int = [&] (const string & part) -> int64_t {
            size_t used = 0;
            int64_t value = 0;
            try {
                value = std::stoll(part, &used);
            }
            catch (const std::exception &) {
                throw InvalidInput("bad rational '" + text + "'");
            }
            if (used != part.size())
                throw InvalidInput("bad rational '" + text + "'");
            return value;
        };
        if (slash == string::npos)
            return Rational(parse_int(text));
        auto den = parse_int(text.substr(slash + 1));
        if (den == 0)
            throw InvalidInput("zero denominator in '" + text + "'");
        return Rational(parse_int(text.substr(0, slash)), den);
    }

    OrderedKTuple::OrderedKTuple(vector<Rational> coords) :
        _coords(std::move(coords))
    {
        if (_coords.empty())
            throw InvalidInput("a tuple needs at least one coordinate");
        for (size_t i = 1 ; i < _coords.size() ; ++i)
            if (! (_coords[i - 1] < _coords[i]))
                throw InvalidInput("coordinates must be strictly increasing");
    }

    auto OrderedKTuple::of_ints(const vector<int64_t> & coords) -> OrderedKTuple
    {
        vector<Rational> q;
        for (auto c : coords)
            q.emplace_back(c);
        return OrderedKTuple(std::move(q));
    }

    auto OrderedKTuple::to_string() const -> string
    {
        string result = "(";
        for (size_t i = 0 ; i < _coords.size() ; ++i)
            result += (i ? "," : "") + rational_to_string(_coords[i]);
        return result + ")";
    }

    auto ordered_relations(const OrderedKTuple & a, const OrderedKTuple & b, int r, int s) -> OrderedFlags
    {
        if (r < 1 || r > a.k() || s < 1 || s > b.k())
            throw InvalidInput("relation index out of range");
        return OrderedFlags{a[r] < b[s], a[r] == b[s], b[s] < a[r]};
    }

    OrderedStructure::OrderedStructure(int k, int size) :
        _k(k),
        _size(size)
    {
        if (k < 1 || size < 0)
            throw InvalidInput("bad structure dimensions");
        auto cells = static_cast<size_t>(size) * k * size * k;
        _less.assign(cells, 0);
        _equal.assign(cells, 0);
    }

    auto OrderedStructure::index(int a, int r, int b, int s) const -> size_t
    {
        if (a < 0 || a >= _size || b < 0 || b >= _size || r < 1 || r > _k || s < 1 || s > _k)
            throw InvalidInput("structure index out of range");
        return ((static_cast<size_t>(a) * _k + (r - 1)) * _size + b) * _k + (s - 1);
    }

    auto OrderedStructure::set_comparison(int a, int r, int b, int s, int c) -> void
    {
        set_less(a, r, b, s, c < 0);
        set_equal(a, r, b, s, c == 0);
        set_less(b, s, a, r, c > 0);
        set_equal(b, s, a, r, c == 0);
    }

    auto OrderedStructure::restrict_to(const vector<int> & elements) const -> OrderedStructure
    {
        OrderedStructure result(_k, static_cast<int>(elements.size()));
        for (size_t x = 0 ; x < elements.size() ; ++x)
            for (size_t y = 0 ; y < elements.size() ; ++y)
                for (int r = 1 ; r <= _k ; ++r)
                    for (int s = 1 ; s <= _k ; ++s) {
                        result.set_less(x, r, y, s, less(elements[x], r, elements[y], s));
                        result.set_equal(x, r, y, s, equal(elements[x], r, elements[y], s));
                    }
        return result;
    }

    auto induced_structure(const vector<OrderedKTuple> & tuples) -> OrderedStructure
    {
        int k = tuples.empty() ? 1 : tuples[0].k();
        for (auto & t : tuples)
            if (t.k() != k)
                throw InvalidInput("tuples of different lengths");
        int n = static_cast<int>(tuples.size());
        OrderedStructure s(k, n);
        for (int a = 0 ; a < n ; ++a)
            for (int b = 0 ; b < n ; ++b)
                for (int r = 1 ; r <= k ; ++r)
                    for (int t = 1 ; t <= k ; ++t) {
                        s.set_less(a, r, b, t, tuples[a][r] < tuples[b][t]);
                        s.set_equal(a, r, b, t, tuples[a][r] == tuples[b][t]);
                    }
        return s;
    }

    auto is_flag_consistent(const OrderedStructure & s) -> bool
    {
        for (int a = 0 ; a < s.size() ; ++a)
            for (int b = 0 ; b < s.size() ; ++b)
                for (int r = 1 ; r <= s.k() ; ++r)
                    for (int t = 1 ; t <= s.k() ; ++t) {
                        int count = s.less(a, r, b, t) + s.equal(a, r, b, t) + s.less(b, t, a, r);
                        if (count != 1 || s.equal(a, r, b, t) != s.equal(b, t, a, r))
                            return false;
                    }
        return true;
    }

    auto AxiomViolation::to_string() const -> string
    {
        std::ostringstream out;
        out << axiom << " elements";
        for (int e : elements)
            out << " " << e;
        if (! indices.empty()) {
            out << " indices";
            for (int i : indices)
                out << " " << i;
        }
        return out.str();
    }

    namespace
    {
        auto violates_instance(const OrderedStructure & s, const string & axiom, const vector<int> & e, const vector<int> & i) -> bool
        {
            if (axiom == "qup")
                return i[0] < i[1] && ! s.less(e[0], i[0], e[0], i[1]);
            if (axiom == "refl") {
                bool all = true;
                for (int r = 1 ; r <= s.k() ; ++r)
                    all = all && s.equal(e[0], r, e[1], r);
                return all != (e[0] == e[1]);
            }
            if (axiom == "total")
                return ! (s.less(e[0], i[0], e[1], i[1]) || s.less(e[1], i[1], e[0], i[0]) || s.equal(e[0], i[0], e[1], i[1]));
            if (axiom == "antisym1")
                return s.equal(e[0], i[0], e[1], i[1]) && s.less(e[0], i[0], e[1], i[1]);
            if (axiom == "antisym2")
                return s.less(e[0], i[0], e[1], i[1]) && s.less(e[1], i[1], e[0], i[0]);
            if (axiom == "eq_sym")
                return s.equal(e[0], i[0], e[1], i[1]) && ! s.equal(e[1], i[1], e[0], i[0]);

            bool xy_less = s.less(e[0], i[0], e[1], i[1]), yz_less = s.less(e[1], i[1], e[2], i[2]);
            bool xy_eq = s.equal(e[0], i[0], e[1], i[1]), yz_eq = s.equal(e[1], i[1], e[2], i[2]);
            if (axiom == "trans")
                return xy_less && yz_less && ! s.less(e[0], i[0], e[2], i[2]);
            if (axiom == "eq_trans")
                return xy_eq && yz_eq && ! s.equal(e[0], i[0], e[2], i[2]);
            if (axiom == "eq_less")
                return ((xy_eq && yz_less) || (xy_less && yz_eq)) && ! s.less(e[0], i[0], e[2], i[2]);
            throw InvalidInput("unknown axiom '" + axiom + "'");
        }

        auto axiom_order(AxiomSet axioms) -> vector<string>
        {
            vector<string> result{"qup", "refl", "total", "antisym1", "antisym2", "trans"};
            if (axioms == AxiomSet::Complete)
                for (auto a : {"eq_sym", "eq_trans", "eq_less"})
                    result.push_back(a);
            return result;
        }

        auto axiom_shape(const string & axiom) -> std::pair<int, int>
        {
            if (axiom == "qup")
                return {1, 2};
            if (axiom == "refl")
                return {2, 0};
            if (axiom == "trans" || axiom == "eq_trans" || axiom == "eq_less")
                return {3, 3};
            return {2, 2};
        }
    }

    auto violates(const OrderedStructure & s, const AxiomViolation & v) -> bool
    {
        auto [elements, indices] = axiom_shape(v.axiom);
        if (static_cast<int>(v.elements.size()) != elements || static_cast<int>(v.indices.size()) != indices)
            throw InvalidInput("witness has the wrong shape for " + v.axiom);
        return violates_instance(s, v.axiom, v.elements, v.indices);
    }

    auto check_axioms(const OrderedStructure & s, AxiomSet axioms) -> optional<AxiomViolation>
    {
        int n = s.size(), k = s.k();
        for (auto & axiom : axiom_order(axioms)) {
            auto [elements, indices] = axiom_shape(axiom);
            vector<int> e(elements, 0), i(indices, 1);
            // odometer over elements (outer) and indices (inner)
            std::function<optional<AxiomViolation> (int)> scan_indices = [&] (int pos) -> optional<AxiomViolation> {
                if (pos == indices)
                    return violates_instance(s, axiom, e, i) ? optional<AxiomViolation>(AxiomViolation{axiom, e, i}) : std::nullopt;
                for (i[pos] = 1 ; i[pos] <= k ; ++i[pos])
                    if (auto v = scan_indices(pos + 1))
                        return v;
                return std::nullopt;
            };
            std::function<optional<AxiomViolation> (int)> scan_elements = [&] (int pos) -> optional<AxiomViolation> {
                if (pos == elements)
                    return scan_indices(0);
                for (e[pos] = 0 ; e[pos] < n ; ++e[pos])
                    if (auto v = scan_elements(pos + 1))
                        return v;
                return std::nullopt;
            };
            if (auto v = scan_elements(0))
                return v;
        }
        return std::nullopt;
    }

    namespace
    {
        auto find_root(vector<int> & parent, int x) -> int
        {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        }
    }

    auto embed(const OrderedStructure & s, AxiomSet axioms) -> EmbedResult
    {
        if (auto v = check_axioms(s, axioms))
            return EmbedFailure{*v, "axiom violated: " + v->to_string()};

        int k = s.k(), n = s.size(), nodes = n * k;
        auto node = [&] (int a, int r) { return a * k + (r - 1); };

        vector<int> parent(nodes);
        std::iota(parent.begin(), parent.end(), 0);
        for (int a = 0 ; a < n ; ++a)
            for (int r = 1 ; r <= k ; ++r)
                for (int b = 0 ; b < n ; ++b)
                    for (int t = 1 ; t <= k ; ++t)
                        if (s.equal(a, r, b, t))
                            parent[find_root(parent, node(a, r))] = find_root(parent, node(b, t));

        vector<int> cls(nodes);
        for (int u = 0 ; u < nodes ; ++u)
            cls[u] = find_root(parent, u);

        // the merged relation must be a linear order: every two classes
        // related one way by every pair of their nodes, and the count of
        // classes below each class distinct
        std::map<std::pair<int, int>, int> direction;
        for (int a = 0 ; a < n ; ++a)
            for (int r = 1 ; r <= k ; ++r)
                for (int b = 0 ; b < n ; ++b)
                    for (int t = 1 ; t <= k ; ++t) {
                        int u = node(a, r), v = node(b, t);
                        bool lt = s.less(a, r, b, t), gt = s.less(b, t, a, r);
                        if (cls[u] == cls[v]) {
                            if (lt || gt)
                                return EmbedFailure{std::nullopt, "an order flag holds inside a class of equal coordinates"};
                            continue;
                        }
                        int d = lt && ! gt ? -1 : gt && ! lt ? 1 : 0;
                        if (d == 0)
                            return EmbedFailure{std::nullopt, "two coordinates are neither ordered nor merged"};
                        auto [it, fresh] = direction.emplace(std::pair{cls[u], cls[v]}, d);
                        if (! fresh && it->second != d)
                            return EmbedFailure{std::nullopt, "two classes of equal coordinates are ordered both ways"};
                    }

        std::map<int, int> below;
        for (int u = 0 ; u < nodes ; ++u)
            below.emplace(cls[u], 0);
        for (auto & [pair, d] : direction)
            if (d > 0)
                ++below[pair.first];
        vector<bool> rank_used(below.size(), false);
        for (auto & [c, count] : below) {
            if (rank_used[count])
                return EmbedFailure{std::nullopt, "the order on coordinates is not transitive"};
            rank_used[count] = true;
        }

        vector<OrderedKTuple> result;
        for (int a = 0 ; a < n ; ++a) {
            vector<Rational> coords;
            for (int r = 1 ; r <= k ; ++r)
                coords.emplace_back(below[cls[node(a, r)]]);
            for (int r = 1 ; r < k ; ++r)
                if (! (coords[r - 1] < coords[r]))
                    return EmbedFailure{std::nullopt, "coordinates of an element are not increasing"};
            result.emplace_back(std::move(coords));
        }
        if (n > 0 && induced_structure(result) != s)
            return EmbedFailure{std::nullopt, "the constructed tuples do not reproduce the flags"};
        return result;
    }

    namespace
    {
        /// fits(a, r, b, s, c): is an actual comparison c of a_r against
        /// b_s (-1, 0, 1) compatible with what is required?
        template <typename Fits_>
        auto realize(int k, int size, int pool, uint64_t budget, const Fits_ & fits) -> bool
        {
            vector<int> coord(size * k, -1);
            uint64_t nodes = 0;
            std::function<bool (int)> place = [&] (int pos) -> bool {
                if (pos == size * k)
                    return true;
                int a = pos / k, r = pos % k + 1;
                int from = r == 1 ? 0 : coord[pos - 1] + 1;
                for (int v = from ; v < pool ; ++v) {
                    if (++nodes > budget)
                        throw BudgetExceeded("brute force embedding budget exhausted");
                    bool ok = fits(a, r, a, r, 0);
                    for (int q = 0 ; ok && q < pos ; ++q) {
                        int c = v < coord[q] ? -1 : v == coord[q] ? 0 : 1;
                        ok = fits(a, r, q / k, q % k + 1, c);
                    }
                    if (ok) {
                        coord[pos] = v;
                        // an embedding is injective
                        if (r == k)
                            for (int b = 0 ; ok && b < a ; ++b)
                                ok = ! std::equal(coord.begin() + a * k, coord.begin() + (a + 1) * k, coord.begin() + b * k);
                    }
                    if (ok) {
                        if (place(pos + 1))
                            return true;
                    }
                }
                coord[pos] = -1;
                return false;
            };
            return place(0);
        }
    }

    auto brute_force_embed(const OrderedStructure & s, int pool, uint64_t node_budget) -> bool
    {
        if (static_cast<int64_t>(s.size()) * s.k() > pool)
            throw InvalidInput("coordinate pool smaller than size * k");
        return realize(s.k(), s.size(), pool, node_budget, [&] (int a, int r, int b, int t, int c) {
            return s.less(a, r, b, t) == (c < 0) && s.equal(a, r, b, t) == (c == 0)
                && s.less(b, t, a, r) == (c > 0) && s.equal(b, t, a, r) == (c == 0);
        });
    }

    auto increasing_tuples(int n, int k) -> vector<OrderedKTuple>
    {
        vector<OrderedKTuple> result;
        vector<int64_t> t(k);
        std::function<void (int, int64_t)> fill = [&] (int pos, int64_t from) {
            if (pos == k) {
                result.push_back(OrderedKTuple::of_ints(t));
                return;
            }
            for (int64_t v = from ; v < n ; ++v) {
                t[pos] = v;
                fill(pos + 1, v + 1);
            }
        };
        if (k >= 1)
            fill(0, 0);
        return result;
    }

    auto homogeneity_probe(int n_points, int k, int sub_size, int max_pool, uint64_t budget) -> HomogeneityReport
    {
        if (k < 1 || sub_size < 0 || n_points < 0)
            throw InvalidInput("bad probe parameters");
        auto pool = increasing_tuples(n_points, k);
        if (max_pool > 0 && static_cast<int>(pool.size()) > max_pool)
            pool.resize(max_pool);
        int p = static_cast<int>(pool.size());

        // comparison pattern of every ordered pair of pool tuples
        vector<vector<int>> pattern(p, vector<int>(p));
        for (int x = 0 ; x < p ; ++x)
            for (int y = 0 ; y < p ; ++y) {
                int code = 0;
                for (int r = 1 ; r <= k ; ++r)
                    for (int s = 1 ; s <= k ; ++s) {
                        auto f = ordered_relations(pool[x], pool[y], r, s);
                        code = code * 3 + (f.less ? 0 : f.equal ? 1 : 2);
                    }
                pattern[x][y] = code;
            }

        HomogeneityReport report;
        report.pool = p;
        uint64_t visited = 0;
        vector<int> source, target;
        vector<bool> used(p, false);

        auto try_lift = [&] {
            std::map<Rational, Rational> beta;
            bool ok = true;
            for (size_t i = 0 ; ok && i < source.size() ; ++i)
                for (int r = 1 ; ok && r <= k ; ++r) {
                    auto [it, fresh] = beta.emplace(pool[source[i]][r], pool[target[i]][r]);
                    if (! fresh && it->second != pool[target[i]][r])
                        ok = false;
                }
            // map iterates sources in increasing order
            optional<Rational> last;
            for (auto & [from, to] : beta) {
                if (last && ! (*last < to))
                    ok = false;
                last = to;
            }
            if (! ok) {
                ++report.failures;
                if (! report.first_failure) {
                    vector<OrderedKTuple> a, b;
                    for (size_t i = 0 ; i < source.size() ; ++i) {
                        a.push_back(pool[source[i]]);
                        b.push_back(pool[target[i]]);
                    }
                    report.first_failure.emplace(a, b);
                }
            }
        };

        std::function<void (size_t)> choose_target = [&] (size_t pos) {
            if (pos == source.size()) {
                for (size_t i = 0 ; i < source.size() ; ++i)
                    for (size_t j = 0 ; j < source.size() ; ++j)
                        if (pattern[source[i]][source[j]] != pattern[target[i]][target[j]]) {
                            ++report.rejected;
                            return;
                        }
                ++report.isomorphisms;
                try_lift();
                return;
            }
            for (int y = 0 ; y < p ; ++y) {
                if (used[y])
                    continue;
                if (++visited > budget)
                    throw BudgetExceeded("homogeneity probe budget exhausted");
                used[y] = true;
                target.push_back(y);
                choose_target(pos + 1);
                target.pop_back();
                used[y] = false;
            }
        };

        // sources as increasing index sequences, targets as any injective sequence
        std::function<void (int)> choose_source = [&] (int from) {
            if (! source.empty())
                choose_target(0);
            if (static_cast<int>(source.size()) == sub_size)
                return;
            for (int x = from ; x < p ; ++x) {
                source.push_back(x);
                choose_source(x + 1);
                source.pop_back();
            }
        };
        choose_source(0);
        return report;
    }

    auto to_johnson(const OrderedKTuple & a, const vector<Rational> & points) -> KSubset
    {
        vector<int> members;
        for (auto & c : a.coords()) {
            auto it = std::lower_bound(points.begin(), points.end(), c);
            if (it == points.end() || *it != c)
                throw InvalidInput("coordinate " + rational_to_string(c) + " is not a listed base point");
            members.push_back(static_cast<int>(it - points.begin()));
        }
        return KSubset::from_members(members);
    }

    auto at_least_combination(const OrderedKTuple & a, const OrderedKTuple & b, int i, ConjunctionReading reading) -> bool
    {
        int k = a.k();
        if (i < 0)
            return true;
        vector<int> p(i), q(i);
        // disjunction over increasing p and arbitrary q
        std::function<bool (int)> choose_q = [&] (int pos) -> bool {
            if (pos == i) {
                for (int s = 0 ; s < i ; ++s)
                    for (int t = 0 ; t < i ; ++t) {
                        if (reading == ConjunctionReading::Diagonal && s != t)
                            continue;
                        if (a[p[s]] != b[q[t]])
                            return false;
                    }
                return true;
            }
            for (q[pos] = 1 ; q[pos] <= k ; ++q[pos])
                if (choose_q(pos + 1))
                    return true;
            return false;
        };
        std::function<bool (int, int)> choose_p = [&] (int pos, int from) -> bool {
            if (pos == i)
                return choose_q(0);
            for (int v = from ; v <= k ; ++v) {
                p[pos] = v;
                if (choose_p(pos + 1, v + 1))
                    return true;
            }
            return false;
        };
        return choose_p(0, 1);
    }

    auto verify_si_boolean_combination(int k, int i, int n, ConjunctionReading reading) -> BooleanCombinationReport
    {
        if (k < 1 || i < 0 || i > k || n < k)
            throw InvalidInput("need 0 <= i <= k <= n");
        auto pool = increasing_tuples(n, k);
        vector<Rational> points;
        for (int x = 0 ; x < n ; ++x)
            points.emplace_back(x);

        BooleanCombinationReport report;
        for (auto & a : pool)
            for (auto & b : pool) {
                ++report.pairs;
                int common = intersection_size(to_johnson(a, points), to_johnson(b, points));
                bool at_least = at_least_combination(a, b, i, reading);
                bool exact = at_least && ! at_least_combination(a, b, i + 1, reading);
                if (at_least != (common >= i)) {
                    ++report.mismatches;
                    if (! report.first_mismatch)
                        report.first_mismatch.emplace(a, b);
                }
                if (exact != (common == i))
                    ++report.exact_mismatches;
            }
        return report;
    }

    namespace
    {
        constexpr std::int8_t unknown = 2;

        struct Sweep
        {
            int k, max_size;
            AxiomSet axioms;
            bool stop_first;
            SweepReport & report;

            int nodes;
            vector<std::int8_t> cmp;
            std::map<string, bool> pattern_memo;

            auto at(int u, int v) -> std::int8_t & { return cmp[u * nodes + v]; }

            auto set(int u, int v, int c) -> void
            {
                at(u, v) = c;
                at(v, u) = c == unknown ? unknown : -c;
            }

            auto mismatch(SweepMismatch m) -> void
            {
                ++report.mismatches;
                if (! report.first_mismatch)
                    report.first_mismatch = std::move(m);
            }

            auto done() const -> bool { return stop_first && report.mismatches > 0; }

            auto structure(int size, int fill) -> OrderedStructure
            {
                OrderedStructure s(k, size);
                for (int u = 0 ; u < size * k ; ++u)
                    for (int v = u ; v < size * k ; ++v) {
                        int c = at(u, v) == unknown ? fill : at(u, v);
                        s.set_comparison(u / k, u % k + 1, v / k, v % k + 1, c);
                    }
                return s;
            }

            /// Elements of a violated instance among assigned comparisons
            /// created by giving (u, v) its current value, or nullopt.
            auto local_violation(int u, int v) -> optional<vector<int>>
            {
                int c = at(u, v);
                if (u / k == v / k) {
                    int r = u % k, s = v % k;
                    if ((r < s && c != -1) || (r > s && c != 1))
                        return vector<int>{u / k};
                }
                int limit = (std::max(u, v) / k + 1) * k;
                for (int w = 0 ; w < limit ; ++w) {
                    if (w == u || w == v || at(u, w) == unknown || at(v, w) == unknown)
                        continue;
                    int tri[3] = {u, v, w};
                    for (int x = 0 ; x < 3 ; ++x)
                        for (int y = 0 ; y < 3 ; ++y)
                            for (int z = 0 ; z < 3 ; ++z) {
                                if (x == y || y == z || x == z)
                                    continue;
                                int first = at(tri[x], tri[y]), second = at(tri[y], tri[z]), result = at(tri[x], tri[z]);
                                bool bad = first == -1 && second == -1 && result != -1;
                                if (axioms == AxiomSet::Complete)
                                    bad = bad || (first == 0 && second == 0 && result != 0)
                                        || (((first == 0 && second == -1) || (first == -1 && second == 0)) && result != -1);
                                if (bad) {
                                    vector<int> e{u / k, v / k, w / k};
                                    std::sort(e.begin(), e.end());
                                    e.erase(std::unique(e.begin(), e.end()), e.end());
                                    return e;
                                }
                            }
                }
                return std::nullopt;
            }

            auto refl_violation(int a, int b) -> bool
            {
                for (int r = 0 ; r < k ; ++r)
                    if (at(a * k + r, b * k + r) != 0)
                        return false;
                return true;
            }

            /// The assigned comparisons among the given elements must be
            /// unrealizable, and a completion must be rejected.
            auto abandoned(const vector<int> & elements, int size) -> void
            {
                ++report.pruned;
                string key;
                int m = static_cast<int>(elements.size());
                for (int x = 0 ; x < m ; ++x)
                    for (int r = 0 ; r < k ; ++r)
                        for (int y = 0 ; y < m ; ++y)
                            for (int s = 0 ; s < k ; ++s)
                                key += char('1' + at(elements[x] * k + r, elements[y] * k + s));
                auto it = pattern_memo.find(key);
                if (it == pattern_memo.end()) {
                    bool realizable = realize(k, m, m * k, 100'000'000, [&] (int a, int r, int b, int s, int c) {
                        int want = at(elements[a] * k + r - 1, elements[b] * k + s - 1);
                        return want == unknown || want == c;
                    });
                    it = pattern_memo.emplace(key, realizable).first;
                }

                auto completion = structure(size, 0);
                bool axioms_ok = ! check_axioms(completion, axioms);
                bool embedded = std::holds_alternative<vector<OrderedKTuple>>(embed(completion, axioms));
                if (it->second || axioms_ok || embedded)
                    mismatch(SweepMismatch{completion, axioms_ok, embedded, it->second, false,
                            it->second ? "a violated instance is realizable" : "a completion of a violated instance is accepted"});
            }

            auto complete(int size) -> void
            {
                auto s = structure(size, 0);
                bool axioms_ok = ! check_axioms(s, axioms);
                auto result = embed(s, axioms);
                bool embedded = std::holds_alternative<vector<OrderedKTuple>>(result);
                bool reinduced = embedded && (size == 0 || induced_structure(std::get<0>(result)) == s);
                bool brute = brute_force_embed(s, size * k);
                ++report.accepted;
                if (! axioms_ok || ! embedded || ! brute || ! reinduced)
                    mismatch(SweepMismatch{s, axioms_ok, embedded, brute, reinduced,
                            "locally consistent structure not accepted by every route"});
            }

            /// pairs of nodes in assignment order for element b
            auto pairs_for(int b) -> vector<std::pair<int, int>>
            {
                vector<std::pair<int, int>> result;
                for (int r = 0 ; r < k ; ++r)
                    for (int s = r + 1 ; s < k ; ++s)
                        result.emplace_back(b * k + r, b * k + s);
                for (int a = 0 ; a < b ; ++a)
                    for (int r = 0 ; r < k ; ++r)
                        for (int s = 0 ; s < k ; ++s)
                            result.emplace_back(a * k + r, b * k + s);
                return result;
            }

            auto extend(int b) -> void
            {
                if (done() || b == max_size)
                    return;
                auto pairs = pairs_for(b);
                std::function<void (size_t)> assign = [&] (size_t pos) {
                    if (done())
                        return;
                    if (pos == pairs.size()) {
                        complete(b + 1);
                        extend(b + 1);
                        return;
                    }
                    auto [u, v] = pairs[pos];
                    for (int c : {-1, 0, 1}) {
                        set(u, v, c);
                        auto bad = local_violation(u, v);
                        // refl is decided once a block of (a, b) comparisons is full
                        bool block_end = u / k != v / k && u % k == k - 1 && v % k == k - 1;
                        if (! bad && block_end && refl_violation(u / k, v / k))
                            bad = vector<int>{u / k, v / k};
                        if (bad)
                            abandoned(*bad, b + 1);
                        else
                            assign(pos + 1);
                        if (done())
                            break;
                    }
                    set(u, v, unknown);
                };
                assign(0);
            }
        };
    }

    auto sweep_ordered_structures(int k, int max_size, AxiomSet axioms, bool stop_at_first_mismatch) -> SweepReport
    {
        if (k < 1 || max_size < 0)
            throw InvalidInput("bad sweep parameters");
        auto start = std::chrono::steady_clock::now();
        SweepReport report;
        report.k = k;
        report.max_size = max_size;
        report.axioms = axioms;

        Sweep sweep{k, max_size, axioms, stop_at_first_mismatch, report, max_size * k, {}, {}};
        sweep.cmp.assign(sweep.nodes * sweep.nodes, unknown);
        for (int u = 0 ; u < sweep.nodes ; ++u)
            sweep.at(u, u) = 0;
        sweep.complete(0);
        sweep.extend(0);
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }
}
