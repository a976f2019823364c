/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/eval.hh>
#include <johnson/errors.hh>

#include <algorithm>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

using std::optional;
using std::size_t;
using std::span;
using std::string;
using std::uint64_t;
using std::vector;

namespace johnson
{
    struct FormulaEvaluator::Imp
    {
        const JohnsonFragment & frag;
        Formula formula;
        vector<string> order;
        uint64_t budget;

        std::unique_ptr<FragmentSolver> root;

        struct Part
        {
            vector<string> free;
            FragmentSolver solver;
        };
        std::unordered_map<const Formula *, std::unique_ptr<Part>> parts;
        std::unordered_map<const Formula *, bool> pp_cache;
        std::map<string, KSubset> env;

        Imp(const JohnsonFragment & fr, const Formula & f, vector<string> o, uint64_t b) :
            frag(fr), formula(f), order(std::move(o)), budget(b)
        {
            check_well_formed(formula);
            for (auto & s : symbols_used(formula))
                s.validate(frag.k);
            auto fv = free_vars(formula);
            for (auto & v : fv)
                if (std::find(order.begin(), order.end(), v) == order.end())
                    throw InvalidInput("free variable '" + v + "' has no value");
            if (is_pp(formula))
                root = std::make_unique<FragmentSolver>(compile_query(formula, order), frag.k, frag.n, budget);
        }

        auto node_is_pp(const Formula & f) -> bool
        {
            auto found = pp_cache.find(&f);
            if (found != pp_cache.end())
                return found->second;
            bool result = is_pp(f);
            pp_cache.emplace(&f, result);
            return result;
        }

        auto value_of(const string & name) -> KSubset
        {
            auto found = env.find(name);
            if (found == env.end())
                throw InvalidInput("variable '" + name + "' has no value");
            return found->second;
        }

        auto eval(const Formula & f) -> bool
        {
            switch (f.kind) {
                case NodeKind::Atom: {
                    vector<PointMask<1>> masks;
                    for (auto & v : f.vars)
                        masks.push_back(value_of(v).as_mask());
                    return holds<1>(f.symbol, frag.k, masks);
                }
                case NodeKind::Equal:
                    return value_of(f.vars[0]) == value_of(f.vars[1]);
                default:
                    break;
            }

            if (node_is_pp(f)) {
                auto found = parts.find(&f);
                if (found == parts.end()) {
                    auto fv = free_vars(f);
                    auto part = std::unique_ptr<Part>(new Part{fv, FragmentSolver(compile_query(f, fv), frag.k, frag.n, budget)});
                    found = parts.emplace(&f, std::move(part)).first;
                }
                vector<PointMask<1>> values;
                for (auto & v : found->second->free)
                    values.push_back(value_of(v).as_mask());
                return found->second->solver.satisfiable(values);
            }

            switch (f.kind) {
                case NodeKind::And:
                    return std::all_of(f.children.begin(), f.children.end(), [&] (const Formula & c) { return eval(c); });
                case NodeKind::Or:
                    return std::any_of(f.children.begin(), f.children.end(), [&] (const Formula & c) { return eval(c); });
                case NodeKind::Not:
                    return ! eval(f.children[0]);
                case NodeKind::Exists:
                case NodeKind::Forall: {
                    bool want = f.kind == NodeKind::Exists;
                    vector<optional<KSubset>> saved;
                    for (auto & v : f.vars) {
                        auto found = env.find(v);
                        saved.push_back(found == env.end() ? optional<KSubset>() : optional<KSubset>(found->second));
                    }
                    vector<size_t> idx(f.vars.size(), 0);
                    bool result = ! want;
                    if (! frag.vertices.empty()) {
                        while (true) {
                            for (size_t i = 0 ; i < idx.size() ; ++i)
                                env[f.vars[i]] = frag.vertices[idx[i]];
                            if (eval(f.children[0]) == want) {
                                result = want;
                                break;
                            }
                            size_t pos = idx.size();
                            while (pos > 0) {
                                --pos;
                                if (++idx[pos] < frag.vertices.size())
                                    break;
                                idx[pos] = 0;
                                if (pos == 0) {
                                    pos = idx.size() + 1;
                                    break;
                                }
                            }
                            if (pos > idx.size())
                                break;
                        }
                    }
                    for (size_t i = 0 ; i < f.vars.size() ; ++i) {
                        if (saved[i])
                            env[f.vars[i]] = *saved[i];
                        else
                            env.erase(f.vars[i]);
                    }
                    return result;
                }
                default:
                    break;
            }
            throw InvalidInput("malformed formula");
        }

        auto nodes() const -> uint64_t
        {
            uint64_t total = root ? root->nodes() : 0;
            for (auto & [_, part] : parts)
                total += part->solver.nodes();
            return total;
        }
    };

    FormulaEvaluator::FormulaEvaluator(const JohnsonFragment & frag, const Formula & f, optional<vector<string>> free_order, uint64_t node_budget) :
        _imp(new Imp(frag, f, free_order ? *free_order : free_vars(f), node_budget))
    {
    }

    FormulaEvaluator::~FormulaEvaluator() = default;
    FormulaEvaluator::FormulaEvaluator(FormulaEvaluator &&) = default;

    auto FormulaEvaluator::free_order() const -> const vector<string> &
    {
        return _imp->order;
    }

    auto FormulaEvaluator::operator() (span<const KSubset> values) -> bool
    {
        if (values.size() != _imp->order.size())
            throw InvalidInput("expected " + std::to_string(_imp->order.size()) + " values");
        for (auto & v : values)
            if (! _imp->frag.contains(v))
                throw InvalidInput(v.to_string() + " is not a vertex of the fragment");
        if (_imp->root) {
            vector<PointMask<1>> masks;
            for (auto & v : values)
                masks.push_back(v.as_mask());
            return _imp->root->satisfiable(masks);
        }
        _imp->env.clear();
        for (size_t i = 0 ; i < values.size() ; ++i)
            _imp->env[_imp->order[i]] = values[i];
        return _imp->eval(_imp->formula);
    }

    auto FormulaEvaluator::nodes() const -> uint64_t
    {
        return _imp->nodes();
    }

    auto evaluate(const JohnsonFragment & frag, const Formula & f, const Assignment & a, uint64_t node_budget) -> bool
    {
        auto fv = free_vars(f);
        vector<KSubset> values;
        for (auto & v : fv) {
            auto found = a.find(v);
            if (found == a.end())
                throw InvalidInput("free variable '" + v + "' is unassigned");
            if (found->second >= frag.vertex_count())
                throw InvalidInput("vertex index " + std::to_string(found->second) + " out of range");
            values.push_back(frag.vertices[found->second]);
        }
        FormulaEvaluator eval(frag, f, fv, node_budget);
        return eval(values);
    }

    namespace
    {
        /// Lexicographic odometer over index tuples; false when it wraps.
        auto advance(vector<size_t> & idx, size_t limit, size_t from = 0) -> bool
        {
            for (size_t pos = idx.size() ; pos-- > from ; ) {
                if (++idx[pos] < limit)
                    return true;
                idx[pos] = 0;
            }
            return false;
        }

        auto to_vertices(const JohnsonFragment & frag, const vector<size_t> & idx) -> vector<KSubset>
        {
            vector<KSubset> result;
            for (auto i : idx)
                result.push_back(frag.vertices[i]);
            return result;
        }

        auto to_indices(const JohnsonFragment & frag, span<const KSubset> t) -> vector<size_t>
        {
            vector<size_t> result;
            for (auto & s : t)
                result.push_back(frag.index_of(s));
            return result;
        }
    }

    auto defined_relation(const JohnsonFragment & frag, const Formula & f, uint64_t node_budget) -> Relation
    {
        auto fv = free_vars(f);
        if (fv.empty())
            throw InvalidInput("a sentence does not define a relation");
        FormulaEvaluator eval(frag, f, fv, node_budget);
        Relation result;
        result.arity = static_cast<int>(fv.size());
        if (frag.vertices.empty())
            return result;
        vector<size_t> idx(fv.size(), 0);
        do {
            if (eval(to_vertices(frag, idx)))
                result.tuples.insert(idx);
        } while (advance(idx, frag.vertex_count()));
        return result;
    }

    namespace
    {
        struct Judge
        {
            virtual ~Judge() = default;
            virtual auto operator() (span<const KSubset> t) -> bool = 0;
            virtual auto nodes() const -> uint64_t = 0;
        };

        struct FragmentJudge : Judge
        {
            FormulaEvaluator eval;

            FragmentJudge(const JohnsonFragment & frag, const Formula & f, const vector<string> & order, uint64_t budget) :
                eval(frag, f, order, budget)
            {
            }

            auto operator() (span<const KSubset> t) -> bool override { return eval(t); }
            auto nodes() const -> uint64_t override { return eval.nodes(); }
        };

        struct UnboundedJudge : Judge
        {
            UnboundedSolver solver;

            UnboundedJudge(const ConjunctiveQuery & q, int k, uint64_t budget) :
                solver(q, k, -1, budget)
            {
            }

            auto operator() (span<const KSubset> t) -> bool override
            {
                vector<PointMask<4>> values;
                for (auto & s : t) {
                    PointMask<4> m;
                    for (int p : s.members())
                        m.set(p);
                    values.push_back(m);
                }
                return solver.satisfiable(values);
            }

            auto nodes() const -> uint64_t override { return solver.nodes(); }
        };

        using Membership = std::function<bool (span<const KSubset>)>;

        struct Target
        {
            Membership member;
            bool invariant = true;
            int arity = 0;
        };

        auto resolve_target(const DefinitionTarget & target, int k, const JohnsonFragment * frag) -> Target
        {
            Target result;
            if (auto sym = std::get_if<RelationSymbol>(&target)) {
                sym->validate(k);
                result.arity = sym->arity();
                auto s = *sym;
                result.member = [s, k] (span<const KSubset> t) {
                    vector<PointMask<1>> masks;
                    for (auto & v : t)
                        masks.push_back(v.as_mask());
                    return holds<1>(s, k, masks);
                };
            }
            else if (auto rel = std::get_if<Relation>(&target)) {
                if (! frag)
                    throw InvalidInput("explicit relations need a fragment");
                result.arity = rel->arity;
                result.invariant = false;
                result.member = [rel, frag] (span<const KSubset> t) { return rel->contains(to_indices(*frag, t)); };
            }
            else {
                auto & sem = std::get<SemanticTarget>(target);
                result.arity = sem.arity;
                result.member = sem.member;
            }
            return result;
        }

        /// Either a list of tuples (orbit representatives) or, when absent,
        /// every tuple of fragment vertices in lexicographic order.
        auto run_check(const Target & target, const std::function<std::unique_ptr<Judge> ()> & make_judge,
                const optional<vector<vector<KSubset>>> & reps, const JohnsonFragment * frag, int arity,
                const CheckOptions & options) -> DefCheckReport
        {
            auto start = std::chrono::steady_clock::now();
            int jobs = std::max(1, options.jobs);
            struct WorkerResult
            {
                optional<Counterexample> first;
                size_t first_position = 0;
                uint64_t nodes = 0, tuples = 0;
                std::exception_ptr error;
            };
            vector<WorkerResult> results(jobs);

            auto check_one = [&] (Judge & judge, WorkerResult & out, const vector<KSubset> & t, size_t position) -> bool {
                ++out.tuples;
                bool expected = target.member(t);
                bool got = judge(t);
                if (expected != got) {
                    out.first = Counterexample{t, expected, got};
                    out.first_position = position;
                    return false;
                }
                return true;
            };

            auto worker = [&] (int w) {
                auto & out = results[w];
                try {
                    auto judge = make_judge();
                    if (reps) {
                        for (size_t r = w ; r < reps->size() ; r += jobs)
                            if (! check_one(*judge, out, (*reps)[r], r))
                                break;
                    }
                    else if (! frag->vertices.empty()) {
                        // this worker owns the tuples whose first index is w mod jobs
                        size_t count = frag->vertex_count();
                        vector<size_t> idx(arity, 0);
                        for (size_t first = w ; first < count ; first += jobs) {
                            std::fill(idx.begin(), idx.end(), 0);
                            idx[0] = first;
                            bool stop = false;
                            do {
                                auto t = to_vertices(*frag, idx);
                                if (options.domain && ! options.domain(t))
                                    continue;
                                size_t position = 0;
                                for (auto i : idx)
                                    position = position * count + i;
                                if (! check_one(*judge, out, t, position)) {
                                    stop = true;
                                    break;
                                }
                            } while (advance(idx, count, 1));
                            if (stop)
                                break;
                        }
                    }
                    out.nodes = judge->nodes();
                }
                catch (...) {
                    out.error = std::current_exception();
                }
            };

            if (jobs == 1)
                worker(0);
            else {
                vector<std::thread> threads;
                for (int w = 0 ; w < jobs ; ++w)
                    threads.emplace_back(worker, w);
                for (auto & t : threads)
                    t.join();
            }

            DefCheckReport report;
            optional<size_t> best;
            for (auto & r : results) {
                if (r.error)
                    std::rethrow_exception(r.error);
                report.stats.nodes += r.nodes;
                report.stats.tuples += r.tuples;
                if (r.first && (! best || r.first_position < *best)) {
                    best = r.first_position;
                    report.counterexample = r.first;
                }
            }
            report.pass = ! report.counterexample.has_value();
            report.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return report;
        }

        auto collect_representatives(int n, int k, int arity, const TupleFilter & domain) -> vector<vector<KSubset>>
        {
            vector<vector<KSubset>> result;
            for_each_orbit_representative(n, k, arity, domain, [&] (span<const KSubset> t) {
                    result.emplace_back(t.begin(), t.end());
                    return true;
                    });
            return result;
        }
    }

    auto check_definition(const JohnsonFragment & frag, const Formula & f, const DefinitionTarget & target,
            const CheckOptions & options) -> DefCheckReport
    {
        return check_definition(frag, f, free_vars(f), target, options);
    }

    auto check_definition(const JohnsonFragment & frag, const Formula & f, const vector<string> & free_order,
            const DefinitionTarget & target, const CheckOptions & options) -> DefCheckReport
    {
        int arity = static_cast<int>(free_order.size());
        if (arity == 0)
            throw InvalidInput("a sentence does not define a relation");
        auto resolved = resolve_target(target, frag.k, &frag);
        if (resolved.arity != arity)
            throw InvalidInput("target has arity " + std::to_string(resolved.arity) + " but the formula has "
                    + std::to_string(arity) + " free variables");

        optional<vector<vector<KSubset>>> reps;
        if (options.orbit_reduction && resolved.invariant)
            reps = collect_representatives(frag.n, frag.k, arity, options.domain);

        return run_check(resolved, [&] { return std::make_unique<FragmentJudge>(frag, f, free_order, options.node_budget); },
                reps, &frag, arity, options);
    }

    auto check_definition_unbounded(int k, const Formula & f, const vector<string> & free_order,
            const DefinitionTarget & target, const CheckOptions & options) -> DefCheckReport
    {
        int arity = static_cast<int>(free_order.size());
        if (arity == 0)
            throw InvalidInput("a sentence does not define a relation");
        auto resolved = resolve_target(target, k, nullptr);
        if (resolved.arity != arity)
            throw InvalidInput("target has arity " + std::to_string(resolved.arity) + " but the formula has "
                    + std::to_string(arity) + " free variables");
        for (auto & s : symbols_used(f))
            s.validate(k);
        auto query = compile_query(f, free_order);
        int points = k * arity;
        if (points > 64)
            throw BudgetExceeded("free tuples need " + std::to_string(points) + " points, over the mask width");
        optional<vector<vector<KSubset>>> reps = collect_representatives(points, k, arity, options.domain);
        return run_check(resolved, [&] { return std::make_unique<UnboundedJudge>(query, k, options.node_budget); },
                reps, nullptr, arity, options);
    }

    auto validate_instance(const CSPInstance & inst) -> void
    {
        std::set<string> names;
        for (auto & v : inst.vars)
            if (! names.insert(v).second)
                throw InvalidInput("duplicate variable '" + v + "'");
        for (auto & c : inst.constraints) {
            if (static_cast<int>(c.scope.size()) != c.rel.arity())
                throw InvalidInput("constraint " + c.rel.to_string() + " has a scope of length " + std::to_string(c.scope.size()));
            for (auto & v : c.scope)
                if (! names.contains(v))
                    throw InvalidInput("constraint uses undeclared variable '" + v + "'");
        }
    }

    auto instance_from_formula(const Formula & f) -> CSPInstance
    {
        auto query = compile_query(f, free_vars(f));
        CSPInstance inst;
        std::set<string> taken;
        for (int x = 0 ; x < query.var_count() ; ++x) {
            string name = query.names[x];
            if (taken.contains(name)) {
                int suffix = 1;
                while (taken.contains(name + "_" + std::to_string(suffix)))
                    ++suffix;
                name += "_" + std::to_string(suffix);
            }
            taken.insert(name);
            inst.vars.push_back(name);
        }
        for (auto & a : query.atoms) {
            Constraint c{a.symbol, {}};
            for (int x : a.args)
                c.scope.push_back(inst.vars[x]);
            inst.constraints.push_back(std::move(c));
        }
        return inst;
    }

    namespace
    {
        auto query_from_instance(const CSPInstance & inst) -> ConjunctiveQuery
        {
            validate_instance(inst);
            std::map<string, int> id;
            ConjunctiveQuery q;
            for (auto & v : inst.vars) {
                id[v] = static_cast<int>(q.names.size());
                q.names.push_back(v);
            }
            for (auto & c : inst.constraints) {
                QueryAtom a{c.rel, {}};
                for (auto & v : c.scope)
                    a.args.push_back(id.at(v));
                q.atoms.push_back(std::move(a));
            }
            return q;
        }
    }

    auto solve_csp(const CSPInstance & inst, const JohnsonFragment & frag, uint64_t node_budget) -> optional<Assignment>
    {
        for (auto & c : inst.constraints)
            if (! frag.signature.empty() && ! frag.has_symbol(c.rel))
                throw InvalidInput("relation " + c.rel.to_string() + " is not in the template's signature");
        FragmentSolver solver(query_from_instance(inst), frag.k, frag.n, node_budget);
        auto values = solver.solve({});
        if (! values)
            return std::nullopt;
        Assignment result;
        for (size_t x = 0 ; x < inst.vars.size() ; ++x)
            result[inst.vars[x]] = KSubset{(*values)[x].words[0]}.colex_rank();
        return result;
    }

    auto solve_csp_unbounded(const CSPInstance & inst, int k, uint64_t node_budget,
            const vector<string> & branch_first) -> optional<PointAssignment>
    {
        auto query = query_from_instance(inst);
        for (auto & name : branch_first) {
            auto found = std::find(query.names.begin(), query.names.end(), name);
            if (found == query.names.end())
                throw InvalidInput("branching hint names unknown variable '" + name + "'");
            query.branch_first.push_back(static_cast<int>(found - query.names.begin()));
        }
        UnboundedSolver solver(query, k, -1, node_budget);
        auto values = solver.solve({});
        if (! values)
            return std::nullopt;
        PointAssignment result;
        for (size_t x = 0 ; x < inst.vars.size() ; ++x)
            result[inst.vars[x]] = (*values)[x].points();
        return result;
    }

    auto witness_threshold(const Formula & f, int k) -> int
    {
        if (! is_pp(f))
            throw InvalidInput("witness thresholds are only guaranteed for primitive positive formulas");
        return k * static_cast<int>(free_vars(f).size() + quantifier_count(f));
    }
}
