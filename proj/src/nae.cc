/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/nae.hh>
#include <johnson/builtins.hh>
#include <johnson/errors.hh>
#include <johnson/fragment.hh>
#include <johnson/query.hh>

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

using std::array;
using std::optional;
using std::string;
using std::uint64_t;
using std::vector;

namespace johnson
{
    auto validate_nae(const NAEInstance & inst) -> void
    {
        if (inst.vars < 0)
            throw InvalidInput("negative variable count");
        for (auto & c : inst.clauses)
            for (int v : c)
                if (v < 0 || v >= inst.vars)
                    throw InvalidInput("clause variable " + std::to_string(v + 1) + " out of range");
    }

    auto parse_nae(const string & text) -> NAEInstance
    {
        std::istringstream in(text);
        string line;
        int line_no = 0;
        optional<int> declared_clauses;
        NAEInstance result;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream words(line);
            string first;
            if (! (words >> first) || first[0] == 'c')
                continue;
            if (first == "p") {
                string format;
                int v = -1, c = -1;
                if (declared_clauses || ! (words >> format >> v >> c) || format != "nae" || v < 0 || c < 0)
                    throw ParseError("expected a single header 'p nae <vars> <clauses>'", line_no, 1);
                result.vars = v;
                declared_clauses = c;
                continue;
            }
            if (! declared_clauses)
                throw ParseError("clause before the header", line_no, 1);
            std::istringstream clause(line);
            array<int, 3> c{};
            for (auto & v : c) {
                long long value;
                if (! (clause >> value) || value < 1 || value > result.vars)
                    throw ParseError("expected three variables between 1 and " + std::to_string(result.vars), line_no, 1);
                v = static_cast<int>(value - 1);
            }
            string rest;
            if (clause >> rest && rest != "0")
                throw ParseError("a clause has exactly three variables", line_no, 1);
            result.clauses.push_back(c);
        }
        if (! declared_clauses)
            throw ParseError("missing header 'p nae <vars> <clauses>'", line_no, 1);
        if (static_cast<int>(result.clauses.size()) != *declared_clauses)
            throw ParseError("header declares " + std::to_string(*declared_clauses) + " clauses but "
                    + std::to_string(result.clauses.size()) + " were given", line_no, 1);
        return result;
    }

    auto print_nae(const NAEInstance & inst) -> string
    {
        std::ostringstream out;
        out << "p nae " << inst.vars << " " << inst.clauses.size() << "\n";
        for (auto & c : inst.clauses)
            out << c[0] + 1 << " " << c[1] + 1 << " " << c[2] + 1 << "\n";
        return out.str();
    }

    auto nae_satisfied(const NAEInstance & inst, const vector<bool> & values) -> bool
    {
        for (auto & c : inst.clauses)
            if (values[c[0]] == values[c[1]] && values[c[1]] == values[c[2]])
                return false;
        return true;
    }

    auto nae_solve(const NAEInstance & inst) -> optional<vector<bool>>
    {
        validate_nae(inst);
        if (inst.vars > 30)
            throw BudgetExceeded("too many variables for exhaustive NAE search");
        for (uint64_t bits = 0 ; bits < (uint64_t{1} << inst.vars) ; ++bits) {
            vector<bool> values(inst.vars);
            for (int v = 0 ; v < inst.vars ; ++v)
                values[v] = (bits >> v) & 1;
            if (nae_satisfied(inst, values))
                return values;
        }
        return std::nullopt;
    }

    auto encoding_vars(int v) -> array<string, 2>
    {
        auto base = "v" + std::to_string(v + 1);
        return {base + "_1", base + "_2"};
    }

    auto reduce_nae(const NAEInstance & inst, int k) -> CSPInstance
    {
        validate_nae(inst);
        if (k < 2)
            throw InvalidInput("the reduction needs k >= 2");

        CSPInstance result;
        for (int v = 0 ; v < inst.vars ; ++v) {
            auto names = encoding_vars(v);
            result.vars.push_back(names[0]);
            result.vars.push_back(names[1]);
            result.constraints.push_back(Constraint{RelationSymbol::overlap(), {names[0], names[1]}});
        }

        if (inst.clauses.empty())
            return result;

        auto gadget = builtin("nae_clause", k);
        vector<string> gadget_free{"x1_1", "x1_2", "x2_1", "x2_2", "x3_1", "x3_2"};
        auto query = compile_query(gadget, gadget_free);

        for (size_t c = 0 ; c < inst.clauses.size() ; ++c) {
            vector<string> names(query.var_count());
            for (int x = 0 ; x < query.var_count() ; ++x)
                names[x] = "c" + std::to_string(c + 1) + query.names[x];
            for (int pos = 0 ; pos < 6 ; ++pos)
                names[query.free[pos]] = encoding_vars(inst.clauses[c][pos / 2])[pos % 2];
            for (int x = 0 ; x < query.var_count() ; ++x)
                if (std::find(query.free.begin(), query.free.end(), x) == query.free.end())
                    result.vars.push_back(names[x]);
            for (auto & a : query.atoms) {
                Constraint con{a.symbol, {}};
                for (int x : a.args)
                    con.scope.push_back(names[x]);
                result.constraints.push_back(std::move(con));
            }
        }
        return result;
    }

    auto decode_nae(const PointAssignment & a, int vars) -> optional<vector<bool>>
    {
        vector<bool> values(vars);
        for (int v = 0 ; v < vars ; ++v) {
            auto names = encoding_vars(v);
            auto first = a.find(names[0]), second = a.find(names[1]);
            if (first == a.end() || second == a.end())
                return std::nullopt;
            auto & p = first->second;
            auto & q = second->second;
            int common = 0;
            for (int x : p)
                common += std::count(q.begin(), q.end(), x);
            int k = static_cast<int>(p.size());
            if (common == k - 1)
                values[v] = true;
            else if (common == k - 2)
                values[v] = false;
            else
                return std::nullopt;
        }
        return values;
    }

    namespace
    {
        const vector<string> gadget_free{"x1_1", "x1_2", "x2_1", "x2_2", "x3_1", "x3_2"};

        auto encoding_order(int vars) -> vector<string>
        {
            vector<string> result;
            for (int v = 0 ; v < vars ; ++v)
                for (auto & name : encoding_vars(v))
                    result.push_back(name);
            return result;
        }

        auto widen(KSubset v) -> PointMask<4>
        {
            PointMask<4> m;
            m.words[0] = v.bits();
            return m;
        }

        // One clause gadget, solved for given encoding values. Outcomes are
        // kept per orbit of the six boundary sets and shared by every call;
        // the nodes each call spends are charged to the caller's budget.
        class GadgetOracle
        {
            private:
                ConjunctiveQuery _query;
                UnboundedSolver _solver;
                std::map<TupleOrbitLabel, bool> _known;

                auto charge(uint64_t before, uint64_t & nodes, uint64_t node_budget) -> void
                {
                    nodes += _solver.nodes() - before;
                    if (nodes > node_budget)
                        throw BudgetExceeded("reduced instance search exceeded " + std::to_string(node_budget) + " nodes");
                }

                static auto values_of(const array<KSubset, 6> & boundary) -> array<PointMask<4>, 6>
                {
                    array<PointMask<4>, 6> values;
                    for (int p = 0 ; p < 6 ; ++p)
                        values[p] = widen(boundary[p]);
                    return values;
                }

            public:
                explicit GadgetOracle(int k) :
                    _query(compile_query(builtin("nae_clause", k), gadget_free)),
                    _solver(_query, k, -1, std::numeric_limits<uint64_t>::max())
                {
                }

                auto query() const -> const ConjunctiveQuery & { return _query; }

                auto satisfiable(const array<KSubset, 6> & boundary, uint64_t & nodes, uint64_t node_budget) -> bool
                {
                    auto label = tuple_orbit_label(boundary, 64);
                    auto found = _known.find(label);
                    if (found != _known.end())
                        return found->second;
                    auto before = _solver.nodes();
                    bool sat = _solver.satisfiable(values_of(boundary));
                    _known.emplace(label, sat);
                    charge(before, nodes, node_budget);
                    return sat;
                }

                auto solve(const array<KSubset, 6> & boundary, uint64_t & nodes, uint64_t node_budget) -> optional<vector<PointMask<4>>>
                {
                    auto before = _solver.nodes();
                    auto result = _solver.solve(values_of(boundary));
                    charge(before, nodes, node_budget);
                    return result;
                }
        };

        auto gadget_oracle(int k) -> std::pair<GadgetOracle &, std::unique_lock<std::mutex>>
        {
            static std::mutex mutex;
            static std::map<int, std::unique_ptr<GadgetOracle>> oracles;
            std::unique_lock<std::mutex> lock(mutex);
            auto & slot = oracles[k];
            if (! slot)
                slot = std::make_unique<GadgetOracle>(k);
            return {*slot, std::move(lock)};
        }

        auto boundary_of(const array<int, 3> & clause, const vector<KSubset> & encoding) -> array<KSubset, 6>
        {
            array<KSubset, 6> result;
            for (int pos = 0 ; pos < 6 ; ++pos)
                result[pos] = encoding[2 * clause[pos / 2] + pos % 2];
            return result;
        }

        // Assigns the encoding pairs one set at a time, trying one set per
        // orbit of the permutations fixing the sets chosen so far. A clause
        // is checked once all three of its variables have both sets.
        auto search_encoding(const NAEInstance & inst, int k, GadgetOracle & oracle, vector<KSubset> & encoding,
                uint64_t & nodes, uint64_t node_budget) -> bool
        {
            int depth = static_cast<int>(encoding.size());
            if (depth == 2 * inst.vars)
                return true;
            if (++nodes > node_budget)
                throw BudgetExceeded("encoding search exceeded " + std::to_string(node_budget) + " nodes");
            auto overlap = RelationSymbol::overlap().allowed_sizes(k);
            int n = 2 * inst.vars * k;
            for (auto candidate : relative_orbit_representatives(encoding, n, k)) {
                if (depth % 2 == 1 && ! ((overlap >> intersection_size(encoding.back(), candidate)) & 1))
                    continue;
                encoding.push_back(candidate);
                bool ok = true;
                if (depth % 2 == 1) {
                    int v = depth / 2;
                    for (auto & c : inst.clauses)
                        if (ok && *std::max_element(c.begin(), c.end()) == v)
                            ok = oracle.satisfiable(boundary_of(c, encoding), nodes, node_budget);
                }
                if (ok && search_encoding(inst, k, oracle, encoding, nodes, node_budget))
                    return true;
                encoding.pop_back();
            }
            return false;
        }

        auto points_of(const PointMask<4> & m) -> vector<int>
        {
            vector<int> result;
            for (int p = 0 ; p < 256 ; ++p)
                if (m.test(p))
                    result.push_back(p);
            return result;
        }

        // A full assignment for the reduced instance from the encoding and
        // one witness per clause gadget, checked against every constraint.
        auto assemble(const NAEInstance & inst, int k, const CSPInstance & reduced, GadgetOracle & oracle,
                const vector<KSubset> & encoding, uint64_t & nodes, uint64_t node_budget) -> PointAssignment
        {
            std::map<string, PointMask<4>> values;
            for (int v = 0 ; v < inst.vars ; ++v)
                for (int s = 0 ; s < 2 ; ++s)
                    values[encoding_vars(v)[s]] = widen(encoding[2 * v + s]);
            auto & query = oracle.query();
            for (size_t c = 0 ; c < inst.clauses.size() ; ++c) {
                auto witness = oracle.solve(boundary_of(inst.clauses[c], encoding), nodes, node_budget);
                if (! witness)
                    throw std::logic_error("clause gadget lost its witness");
                for (int x = 0 ; x < query.var_count() ; ++x)
                    if (std::find(query.free.begin(), query.free.end(), x) == query.free.end())
                        values["c" + std::to_string(c + 1) + query.names[x]] = (*witness)[x];
            }
            for (auto & con : reduced.constraints) {
                vector<PointMask<4>> t;
                for (auto & name : con.scope)
                    t.push_back(values.at(name));
                if (! holds<4>(con.rel, k, t))
                    throw std::logic_error("assembled assignment violates " + con.rel.to_string());
            }
            PointAssignment result;
            for (auto & [name, m] : values)
                result[name] = points_of(m);
            return result;
        }
    }

    namespace
    {
        // Splits the instance into groups of clauses connected through
        // shared variables. Each group is renumbered in order of first use,
        // so a clause's last variable comes as early as possible.
        auto clause_groups(const NAEInstance & inst) -> vector<std::pair<NAEInstance, vector<int>>>
        {
            vector<int> parent(inst.vars);
            for (int v = 0 ; v < inst.vars ; ++v)
                parent[v] = v;
            std::function<int (int)> find = [&] (int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
            for (auto & c : inst.clauses)
                for (int p = 1 ; p < 3 ; ++p)
                    parent[find(c[p])] = find(c[0]);

            std::map<int, std::pair<NAEInstance, vector<int>>> groups;
            std::map<int, int> renumbered;
            for (auto & c : inst.clauses) {
                auto & [sub, original] = groups[find(c[0])];
                array<int, 3> local{};
                for (int p = 0 ; p < 3 ; ++p) {
                    auto [at, fresh] = renumbered.try_emplace(c[p], static_cast<int>(original.size()));
                    if (fresh)
                        original.push_back(c[p]);
                    local[p] = at->second;
                }
                sub.vars = static_cast<int>(original.size());
                sub.clauses.push_back(local);
            }
            vector<std::pair<NAEInstance, vector<int>>> result;
            for (auto & [root, g] : groups)
                result.push_back(std::move(g));
            // small groups first: they fail fastest
            std::stable_sort(result.begin(), result.end(), [] (auto & a, auto & b) { return a.first.vars < b.first.vars; });
            return result;
        }

        auto shifted(KSubset v, int offset) -> KSubset
        {
            return KSubset(v.bits() << offset);
        }
    }

    auto equisat_check(const NAEInstance & inst, int k, uint64_t node_budget) -> EquisatReport
    {
        auto start = std::chrono::steady_clock::now();
        EquisatReport report;
        report.source_sat = nae_solve(inst).has_value();
        auto reduced = reduce_nae(inst, k);
        report.target_vars = reduced.vars.size();

        optional<PointAssignment> solution;
        if (2 * inst.vars * k <= 64) {
            // the clause gadgets only meet through the encoding pairs, so
            // groups of clauses without common variables are independent
            auto [oracle, lock] = gadget_oracle(k);
            vector<KSubset> encoding(2 * inst.vars);
            vector<bool> placed(inst.vars, false);
            int offset = 0;
            bool sat = true;
            uint64_t nodes = 0;
            // a clause that fails on its own fails everywhere
            for (auto & c : inst.clauses) {
                NAEInstance alone{0, {{}}};
                for (int p = 0 ; p < 3 ; ++p) {
                    int q = 0;
                    while (q < p && c[q] != c[p])
                        ++q;
                    alone.clauses[0][p] = q < p ? alone.clauses[0][q] : alone.vars++;
                }
                vector<KSubset> local;
                sat = sat && search_encoding(alone, k, oracle, local, nodes, node_budget);
            }
            if (sat)
                for (auto & [sub, original] : clause_groups(inst)) {
                    vector<KSubset> local;
                    if (! search_encoding(sub, k, oracle, local, nodes, node_budget)) {
                        sat = false;
                        break;
                    }
                    for (int v = 0 ; v < sub.vars ; ++v) {
                        encoding[2 * original[v]] = shifted(local[2 * v], offset);
                        encoding[2 * original[v] + 1] = shifted(local[2 * v + 1], offset);
                        placed[original[v]] = true;
                    }
                    offset += 2 * sub.vars * k;
                }
            if (sat) {
                // a variable in no clause only needs an overlapping pair
                for (int v = 0 ; v < inst.vars ; ++v)
                    if (! placed[v]) {
                        encoding[2 * v] = KSubset(((uint64_t{1} << k) - 1) << offset);
                        encoding[2 * v + 1] = KSubset(((uint64_t{1} << k) - 1) << (offset + 1));
                        offset += k + 1;
                    }
                solution = assemble(inst, k, reduced, oracle, encoding, nodes, node_budget);
            }
        }
        else
            solution = solve_csp_unbounded(reduced, k, node_budget, encoding_order(inst.vars));

        report.target_sat = solution.has_value();
        if (solution) {
            report.decoded = decode_nae(*solution, inst.vars);
            report.decoded_ok = report.decoded && nae_satisfied(inst, *report.decoded);
        }
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }

    auto all_nae_instances(int vars, int max_clauses) -> vector<NAEInstance>
    {
        vector<array<int, 3>> clauses;
        for (int a = 0 ; a < vars ; ++a)
            for (int b = 0 ; b < vars ; ++b)
                for (int c = 0 ; c < vars ; ++c)
                    clauses.push_back({a, b, c});

        vector<NAEInstance> result;
        // nondecreasing index sequences into the clause list
        vector<size_t> chosen;
        auto emit = [&] {
            NAEInstance inst{vars, {}};
            for (auto i : chosen)
                inst.clauses.push_back(clauses[i]);
            result.push_back(std::move(inst));
        };
        std::function<void (size_t)> extend = [&] (size_t from) {
            emit();
            if (static_cast<int>(chosen.size()) == max_clauses)
                return;
            for (size_t i = from ; i < clauses.size() ; ++i) {
                chosen.push_back(i);
                extend(i);
                chosen.pop_back();
            }
        };
        extend(0);
        return result;
    }

    auto random_nae_instance(std::mt19937_64 & rng, int max_vars, int max_clauses) -> NAEInstance
    {
        std::uniform_int_distribution<int> var_count(1, max_vars), clause_count(0, max_clauses);
        NAEInstance inst;
        inst.vars = var_count(rng);
        int clauses = clause_count(rng);
        std::uniform_int_distribution<int> pick(0, inst.vars - 1);
        for (int c = 0 ; c < clauses ; ++c) {
            array<int, 3> clause{};
            for (auto & v : clause)
                v = pick(rng);
            inst.clauses.push_back(clause);
        }
        return inst;
    }

    auto hardness_verdict(const vector<HardnessCertificate> & certified, const JohnsonFragment & frag,
            const CheckOptions & options) -> HardnessVerdict
    {
        uint64_t all = (uint64_t{1} << frag.k) - 1;
        uint64_t common = all;
        for (auto & cert : certified) {
            if (cert.sizes == 0 || (cert.sizes & ~all))
                throw InvalidInput("certificate index sets must be nonempty subsets of 0 .. k-1");
            auto report = check_definition(frag, cert.definition, RelationSymbol::union_of(cert.sizes), options);
            if (! report.pass)
                throw InvalidInput("certificate for " + RelationSymbol::union_of(cert.sizes).to_string()
                        + " does not define it");
            common &= cert.sizes;
        }
        if (! certified.empty() && common == 0)
            return HardnessVerdict::NPHardCertified;
        return HardnessVerdict::Inconclusive;
    }
}
