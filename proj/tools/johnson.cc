/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/builtins.hh>
#include <johnson/canonical.hh>
#include <johnson/errors.hh>
#include <johnson/eval.hh>
#include <johnson/formula.hh>
#include <johnson/fragment.hh>
#include <johnson/io.hh>
#include <johnson/lemma_suite.hh>
#include <johnson/nae.hh>
#include <johnson/ordered.hh>
#include <johnson/poly.hh>

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

using namespace johnson;

using std::cerr;
using std::optional;
using std::string;
using std::vector;

namespace
{
    enum ExitCode
    {
        exit_pass = 0,
        exit_fail = 1,
        exit_usage = 2,
        exit_budget = 3
    };

    struct RunConfig
    {
        string command;
        optional<int> k, n;
        std::uint64_t vertex_budget = default_vertex_budget;
        std::uint64_t node_budget = default_node_budget;
        double time_limit = 0.0;
        int jobs = 1;
        std::uint64_t seed = 0;
        string output;
        bool stats = true;
        bool orbit_reduction = true;
    };

    auto emit(const RunConfig & config, const Json & j) -> void
    {
        auto text = j.dump(2) + "\n";
        if (config.output.empty() || config.output == "-")
            std::cout << text << std::flush;
        else {
            std::ofstream out(config.output);
            if (! out)
                throw InvalidInput("cannot write '" + config.output + "'");
            out << text;
        }
    }

    auto require_k(const RunConfig & config) -> int
    {
        if (! config.k)
            throw InvalidInput("--k is required");
        return *config.k;
    }

    auto parse_symbols(const vector<string> & texts) -> vector<RelationSymbol>
    {
        vector<RelationSymbol> result;
        for (auto & t : texts)
            result.push_back(RelationSymbol::parse(t));
        return result;
    }

    auto split_commas(const string & text) -> vector<string>
    {
        vector<string> result;
        string current;
        for (char c : text) {
            if (c == ',') {
                if (! current.empty())
                    result.push_back(current);
                current.clear();
            }
            else if (c != ' ')
                current += c;
        }
        if (! current.empty())
            result.push_back(current);
        return result;
    }

    auto members_of(const vector<KSubset> & t) -> Json
    {
        Json result = Json::array();
        for (auto & v : t)
            result.push_back(json_of(v));
        return result;
    }

    auto axioms_named(const string & name) -> AxiomSet
    {
        if (name == "stated")
            return AxiomSet::Stated;
        if (name == "complete")
            return AxiomSet::Complete;
        throw InvalidInput("--axioms is 'stated' or 'complete'");
    }

    // gen, orbits

    struct FragmentArgs
    {
        string relations;
    };

    auto fragment_for(const RunConfig & config, const string & relations) -> JohnsonFragment
    {
        if (! config.n)
            throw InvalidInput("--n is required");
        int k = require_k(config);
        if (relations.empty())
            return make_fragment(*config.n, k, config.vertex_budget);
        return make_fragment(*config.n, k, parse_symbols(split_commas(relations)), config.vertex_budget);
    }

    auto cmd_gen(const RunConfig & config, const FragmentArgs & args) -> int
    {
        auto frag = fragment_for(config, args.relations);
        emit(config, json_of(frag));
        cerr << "J_" << frag.n << "(" << frag.k << "): " << frag.vertex_count() << " vertices\n";
        return exit_pass;
    }

    auto cmd_orbits(const RunConfig & config, int arity) -> int
    {
        if (! config.n)
            throw InvalidInput("--n is required");
        int n = *config.n, k = require_k(config);
        if (arity < 1)
            throw InvalidInput("--arity must be positive");
        if (k < 0 || k > n)
            throw InvalidInput("need 0 <= k <= n");
        if (n > 64)
            throw BudgetExceeded("base sets beyond 64 points exceed the mask width");
        Json reps = Json::array();
        for_each_orbit_representative(n, k, arity, nullptr, [&] (std::span<const KSubset> t) {
                Json entry;
                entry["tuple"] = members_of(vector<KSubset>(t.begin(), t.end()));
                entry["label"] = tuple_orbit_label(t, n).to_string();
                reps.push_back(entry);
                return true;
                }, config.node_budget);
        Json j;
        j["n"] = n;
        j["k"] = k;
        j["arity"] = arity;
        j["count"] = reps.size();
        j["representatives"] = reps;
        emit(config, j);
        cerr << reps.size() << " orbits\n";
        return exit_pass;
    }

    // check-def

    struct CheckDefArgs
    {
        string structure, formula, formula_file, builtin, target, free, relations;
        int i = -1, j = -1, m = -1;
        bool unbounded = false;
    };

    auto cmd_check_def(const RunConfig & config, const CheckDefArgs & args) -> int
    {
        if (args.target.empty())
            throw InvalidInput("--target is required");
        int sources = ! args.formula.empty() + ! args.formula_file.empty() + ! args.builtin.empty();
        if (sources != 1)
            throw InvalidInput("give exactly one of --formula, --formula-file, --builtin");

        optional<JohnsonFragment> frag;
        if (! args.structure.empty()) {
            frag = fragment_from_json(parse_json(read_file(args.structure)));
            if (config.k && *config.k != frag->k)
                throw InvalidInput("--k disagrees with the structure file");
        }
        int k = frag ? frag->k : require_k(config);

        Formula f;
        if (! args.builtin.empty()) {
            BuiltinParams bp;
            bp.i = args.i;
            bp.j = args.j;
            bp.m = args.m;
            f = builtin(args.builtin, k, bp);
        }
        else {
            auto text = args.formula.empty() ? read_file(args.formula_file) : args.formula;
            f = parse_formula(text, frag ? frag->signature : vector<RelationSymbol>{});
        }

        auto target = RelationSymbol::parse(args.target);
        target.validate(k);
        auto free_order = args.free.empty() ? free_vars(f) : split_commas(args.free);

        CheckOptions options;
        options.orbit_reduction = config.orbit_reduction;
        options.jobs = config.jobs;
        options.node_budget = config.node_budget;

        DefCheckReport report;
        int n_used = 0;
        if (args.unbounded)
            report = check_definition_unbounded(k, f, free_order, target, options);
        else {
            if (! frag) {
                int n = config.n ? *config.n : is_pp(f) ? derived_fragment_size(f, k, 0) : -1;
                if (n < 0)
                    throw InvalidInput("--n is required for formulas that are not primitive positive");
                auto signature = default_signature(k);
                for (auto & s : symbols_used(f))
                    if (std::find(signature.begin(), signature.end(), s) == signature.end())
                        signature.push_back(s);
                if (std::find(signature.begin(), signature.end(), target) == signature.end())
                    signature.push_back(target);
                frag = make_fragment(n, k, signature, config.vertex_budget);
            }
            n_used = frag->n;
            report = check_definition(*frag, f, free_order, target, options);
        }

        Json j;
        j["formula"] = print_formula(f);
        j["free"] = free_order;
        j["target"] = target.to_string();
        j["k"] = k;
        if (args.unbounded)
            j["n"] = "unbounded";
        else
            j["n"] = n_used;
        j.update(json_of(report, config.stats));
        emit(config, j);
        cerr << "check-def: " << (report.pass ? "pass" : "fail") << "\n";
        return report.pass ? exit_pass : exit_fail;
    }

    // verify

    struct VerifyArgs
    {
        string lemma, manifest, target;
        optional<int> i, j, m, length, psi_index;
    };

    struct SuiteRun
    {
        string lemma;
        int k = 0;
        LemmaParams params;
        Json params_json;
        string expect = "pass";
    };

    auto expand_grid(const Json & params) -> vector<Json>
    {
        vector<Json> result{Json::object()};
        for (auto & [key, value] : params.items()) {
            vector<Json> next;
            auto values = value.is_array() ? value : Json::array({value});
            for (auto & partial : result)
                for (auto & v : values) {
                    auto p = partial;
                    p[key] = v;
                    next.push_back(p);
                }
            result = next;
        }
        return result;
    }

    auto params_from_json(const Json & p, LemmaParams & lp) -> void
    {
        for (auto & [key, value] : p.items()) {
            if (key == "target") {
                if (! value.is_string())
                    throw InvalidInput("manifest parameter 'target' is a symbol string");
                lp.target = RelationSymbol::parse(value.get<string>());
                continue;
            }
            if (! value.is_number_integer())
                throw InvalidInput("manifest parameter '" + key + "' must be an integer");
            int v = value.get<int>();
            if (key == "i")
                lp.i = v;
            else if (key == "j")
                lp.j = v;
            else if (key == "m")
                lp.m = v;
            else if (key == "n")
                lp.n = v;
            else if (key == "length")
                lp.length = v;
            else if (key == "psi_index")
                lp.psi_index = v;
            else
                throw InvalidInput("unknown manifest parameter '" + key + "'");
        }
    }

    auto load_manifest(const RunConfig & config, const string & path) -> vector<SuiteRun>
    {
        auto m = parse_json(read_file(path));
        if (! m.is_object() || ! m.contains("runs") || ! m["runs"].is_array())
            throw InvalidInput("a manifest is {\"runs\": [..]}");
        auto ids = lemma_ids();
        vector<SuiteRun> runs;
        for (auto & entry : m["runs"]) {
            if (! entry.is_object() || ! entry.contains("lemma") || ! entry.contains("k"))
                throw InvalidInput("every manifest run names a lemma and k");
            auto lemma = entry["lemma"].get<string>();
            if (std::find(ids.begin(), ids.end(), lemma) == ids.end())
                throw InvalidInput("unknown lemma '" + lemma + "'");
            auto ks = entry["k"].is_array() ? entry["k"] : Json::array({entry["k"]});
            string mode = entry.value("mode", "orbit-reduced");
            if (mode != "full" && mode != "orbit-reduced")
                throw InvalidInput("run mode is 'full' or 'orbit-reduced'");
            string expect = entry.value("expect", "pass");
            if (expect != "pass" && expect != "fail")
                throw InvalidInput("run expectation is 'pass' or 'fail'");
            for (auto & kj : ks)
                for (auto & p : expand_grid(entry.value("params", Json::object()))) {
                    SuiteRun run;
                    run.lemma = lemma;
                    run.k = kj.get<int>();
                    run.params_json = p;
                    run.expect = expect;
                    params_from_json(p, run.params);
                    run.params.orbit_reduction = mode == "orbit-reduced" && config.orbit_reduction;
                    run.params.node_budget = config.node_budget;
                    runs.push_back(run);
                }
        }
        return runs;
    }

    auto cmd_verify(const RunConfig & config, const VerifyArgs & args) -> int
    {
        if (args.manifest.empty() == args.lemma.empty())
            throw InvalidInput("give exactly one of --lemma, --manifest");

        if (! args.lemma.empty()) {
            LemmaParams lp;
            lp.i = args.i;
            lp.j = args.j;
            lp.m = args.m;
            lp.n = config.n;
            lp.length = args.length;
            lp.psi_index = args.psi_index;
            if (! args.target.empty())
                lp.target = RelationSymbol::parse(args.target);
            lp.orbit_reduction = config.orbit_reduction;
            lp.jobs = config.jobs;
            lp.node_budget = config.node_budget;
            auto report = verify(args.lemma, require_k(config), lp);
            emit(config, json_of(report, config.stats));
            cerr << report.lemma << " k=" << report.k << ": " << verdict_name(report.verdict) << "\n";
            switch (report.verdict) {
                case Verdict::Pass: return exit_pass;
                case Verdict::Fail: return exit_fail;
                case Verdict::Skipped: return exit_budget;
            }
            return exit_budget;
        }

        auto runs = load_manifest(config, args.manifest);
        vector<optional<VerificationReport>> reports(runs.size());
        vector<string> errors(runs.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t r ; (r = next++) < runs.size() ; ) {
                try {
                    reports[r] = verify(runs[r].lemma, runs[r].k, runs[r].params);
                }
                catch (const BudgetExceeded & e) {
                    errors[r] = e.what();
                }
            }
        };
        vector<std::thread> threads;
        for (int w = 1 ; w < config.jobs ; ++w)
            threads.emplace_back(worker);
        worker();
        for (auto & t : threads)
            t.join();

        int passed = 0, failed = 0, skipped = 0, unexpected = 0;
        Json results = Json::array();
        for (std::size_t r = 0 ; r < runs.size() ; ++r) {
            Json entry;
            entry["lemma"] = runs[r].lemma;
            entry["k"] = runs[r].k;
            entry["params"] = runs[r].params_json;
            entry["mode"] = runs[r].params.orbit_reduction ? "orbit-reduced" : "full";
            entry["expect"] = runs[r].expect;
            Verdict v = reports[r] ? reports[r]->verdict : Verdict::Skipped;
            entry["verdict"] = verdict_name(v);
            Json n_used = Json::array();
            if (reports[r]) {
                for (auto & c : reports[r]->checks) {
                    if (c.n)
                        n_used.push_back(c.n);
                    else
                        n_used.push_back("unbounded");
                }
            }
            entry["n_used"] = n_used;
            if (reports[r])
                entry["report"] = json_of(*reports[r], config.stats);
            else
                entry["error"] = errors[r];
            results.push_back(entry);

            switch (v) {
                case Verdict::Pass: ++passed; break;
                case Verdict::Fail: ++failed; break;
                case Verdict::Skipped: ++skipped; break;
            }
            bool as_expected = v != Verdict::Skipped && verdict_name(v) == runs[r].expect;
            if (! as_expected && v != Verdict::Skipped)
                ++unexpected;
            cerr << runs[r].lemma << " k=" << runs[r].k << " " << runs[r].params_json.dump() << ": " << verdict_name(v)
                << (runs[r].expect == "fail" ? " (expected fail)" : "") << "\n";
        }

        string verdict = unexpected ? "fail" : skipped ? "skipped" : "pass";
        Json j;
        j["verdict"] = verdict;
        j["summary"] = Json{{"runs", runs.size()}, {"pass", passed}, {"fail", failed}, {"skipped", skipped},
            {"unexpected", unexpected}};
        j["runs"] = results;
        emit(config, j);
        cerr << "suite: " << verdict << " (" << passed << " pass, " << failed << " fail, " << skipped << " skipped, "
            << unexpected << " unexpected)\n";
        return unexpected ? exit_fail : skipped ? exit_budget : exit_pass;
    }

    // reduce-nae, solve, equisat

    auto cmd_reduce_nae(const RunConfig & config, const string & file) -> int
    {
        auto inst = parse_nae(read_file(file));
        auto csp = reduce_nae(inst, require_k(config));
        emit(config, json_of(csp));
        cerr << inst.vars << " NAE variables, " << inst.clauses.size() << " clauses -> " << csp.vars.size()
            << " variables, " << csp.constraints.size() << " constraints\n";
        return exit_pass;
    }

    auto cmd_solve(const RunConfig & config, const string & file, const string & structure) -> int
    {
        auto inst = csp_from_json(parse_json(read_file(file)));
        Json j;
        optional<PointAssignment> solution;
        if (! structure.empty() || config.n) {
            auto frag = ! structure.empty() ? fragment_from_json(parse_json(read_file(structure)))
                : make_fragment(*config.n, require_k(config), [&] {
                        auto signature = default_signature(require_k(config));
                        for (auto & c : inst.constraints)
                            if (std::find(signature.begin(), signature.end(), c.rel) == signature.end())
                                signature.push_back(c.rel);
                        return signature;
                        }(), config.vertex_budget);
            j["template"] = Json{{"n", frag.n}, {"k", frag.k}};
            if (auto a = solve_csp(inst, frag, config.node_budget)) {
                solution.emplace();
                for (auto & [name, index] : *a)
                    (*solution)[name] = frag.vertices[index].members();
            }
        }
        else {
            j["template"] = Json{{"n", "unbounded"}, {"k", require_k(config)}};
            solution = solve_csp_unbounded(inst, require_k(config), config.node_budget);
        }
        j["result"] = solution ? "SAT" : "UNSAT";
        if (solution)
            j["assignment"] = json_of(*solution);
        emit(config, j);
        cerr << (solution ? "SAT" : "UNSAT") << "\n";
        return exit_pass;
    }

    auto cmd_equisat(const RunConfig & config, const string & file, int random_count, int max_vars, int max_clauses) -> int
    {
        int k = require_k(config);
        if (! file.empty()) {
            auto inst = parse_nae(read_file(file));
            auto report = equisat_check(inst, k, config.node_budget);
            Json j;
            j["verdict"] = report.agree() ? "pass" : "fail";
            j.update(json_of(report, config.stats));
            emit(config, j);
            cerr << "equisat: " << (report.agree() ? "agree" : "disagree") << "\n";
            return report.agree() ? exit_pass : exit_fail;
        }
        if (random_count <= 0)
            throw InvalidInput("give an instance file or --random");

        std::mt19937_64 rng(config.seed);
        Json cases = Json::array();
        int disagreements = 0;
        for (int r = 0 ; r < random_count ; ++r) {
            auto inst = random_nae_instance(rng, max_vars, max_clauses);
            auto report = equisat_check(inst, k, config.node_budget);
            if (! report.agree()) {
                ++disagreements;
                cases.push_back(Json{{"instance", json_of(inst)}, {"report", json_of(report, config.stats)}});
            }
        }
        Json j;
        j["verdict"] = disagreements ? "fail" : "pass";
        j["seed"] = config.seed;
        j["instances"] = random_count;
        j["disagreements"] = disagreements;
        j["disagreeing"] = cases;
        emit(config, j);
        cerr << "equisat: " << disagreements << " of " << random_count << " disagree\n";
        return disagreements ? exit_fail : exit_pass;
    }

    // embed, sweep

    auto cmd_embed(const RunConfig & config, const string & file, const string & axioms) -> int
    {
        auto s = structure_from_json(parse_json(read_file(file)));
        auto result = embed(s, axioms_named(axioms));
        Json j;
        j["axioms"] = axioms;
        if (auto tuples = std::get_if<vector<OrderedKTuple>>(&result)) {
            j["result"] = "embedded";
            Json ts = Json::array();
            for (auto & t : *tuples)
                ts.push_back(json_of(t));
            j["tuples"] = ts;
            cerr << "embedded " << tuples->size() << " elements\n";
        }
        else {
            auto & failure = std::get<EmbedFailure>(result);
            j["result"] = "not embeddable";
            if (failure.violation)
                j["violation"] = json_of(*failure.violation);
            j["reason"] = failure.reason;
            cerr << "not embeddable: " << failure.reason << "\n";
        }
        emit(config, j);
        return exit_pass;
    }

    auto cmd_sweep(const RunConfig & config, int max_size, const string & axioms) -> int
    {
        auto report = sweep_ordered_structures(require_k(config), max_size, axioms_named(axioms));
        emit(config, json_of(report, config.stats));
        cerr << "sweep: " << report.accepted << " accepted, " << report.pruned << " pruned, " << report.mismatches << " mismatches\n";
        return report.pass() ? exit_pass : exit_fail;
    }

    // behavior, battery, dichotomy

    auto cmd_behavior(const RunConfig & config, const string & file) -> int
    {
        auto fm = fragment_map_from_json(parse_json(read_file(file)));
        auto report = verify_pair_lemmas(fm);
        emit(config, json_of(report));
        cerr << "pair lemmas: " << (report.pass() ? "pass" : "fail") << "\n";
        return report.pass() ? exit_pass : exit_fail;
    }

    auto cmd_battery(const RunConfig & config, int samples) -> int
    {
        int k = require_k(config);
        auto pool = generic_pool(k);
        std::mt19937_64 rng(config.seed);
        bool ok = true;

        Json maps = Json::array();
        for (auto & [name, fm] : vector<std::pair<string, FragmentMap>>{
                {"identity", identity_map(pool)},
                {"collapse-last", collapse_last_map(pool)},
                {"automorphism", automorphism_map(pool)},
                {"reversal", reversal_map(pool)}}) {
            auto report = verify_pair_lemmas(fm);
            auto image_join = verify_image_join(fm);
            auto closure = verify_image_closure(fm, rng, samples);
            ok = ok && report.pass() && image_join.pass && closure.pass;
            Json entry;
            entry["map"] = name;
            entry["pair_lemmas"] = json_of(report);
            entry["image_join"] = json_of(image_join);
            entry["image_closure"] = json_of(closure);
            maps.push_back(entry);
            cerr << name << ": " << (report.pass() && image_join.pass && closure.pass ? "pass" : "fail") << "\n";
        }
        auto join_check = verify_join(pool);
        auto laws = verify_closure_laws(static_cast<int>(pool.size()), rng, samples);
        ok = ok && join_check.pass && laws.pass;

        Json j;
        j["k"] = k;
        j["seed"] = config.seed;
        j["verdict"] = ok ? "pass" : "fail";
        j["pool_size"] = pool.size();
        j["join"] = json_of(join_check);
        j["closure_laws"] = json_of(laws);
        j["maps"] = maps;
        emit(config, j);
        return ok ? exit_pass : exit_fail;
    }

    auto cmd_dichotomy(const RunConfig & config) -> int
    {
        auto report = verify_permutational_dichotomy(require_k(config));
        emit(config, json_of(report));
        cerr << "dichotomy k=" << report.k << ": " << report.tables << " tables, " << report.violations << " violations\n";
        return report.pass() ? exit_pass : exit_fail;
    }

    // poly-search

    auto cmd_poly_search(const RunConfig & config, const string & mode, const string & relations, bool stop_early) -> int
    {
        if (mode == "projection") {
            auto report = projection_check();
            emit(config, json_of(report));
            cerr << report.preserving.size() << " of " << report.candidates << " operations preserve the template\n";
            return report.only_projections() ? exit_pass : exit_fail;
        }
        if (mode != "full")
            throw InvalidInput("--mode is 'projection' or 'full'");
        PolySearchOptions options;
        if (config.k)
            options.k = *config.k;
        if (config.n)
            options.n = *config.n;
        if (! relations.empty())
            options.relations = parse_symbols(split_commas(relations));
        options.stop_at_first_binary = stop_early;
        options.node_budget = config.node_budget;
        auto report = poly_search(options);
        Json j = json_of(report, config.stats);
        j["k"] = options.k;
        j["n"] = options.n;
        Json rs = Json::array();
        for (auto & r : options.relations)
            rs.push_back(r.to_string());
        j["relations"] = rs;
        emit(config, j);
        cerr << report.found << " polymorphisms, " << report.essentially_unary << " essentially unary\n";
        // an observation about one finite fragment, not a verdict
        return exit_pass;
    }

    auto env_budget() -> std::uint64_t
    {
        if (auto e = std::getenv("JOHNSON_NODE_BUDGET")) {
            try {
                auto v = std::stoull(e);
                if (v > 0)
                    return v;
            }
            catch (const std::exception &) {
            }
            cerr << "ignoring malformed JOHNSON_NODE_BUDGET\n";
        }
        return default_node_budget;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Johnson graph definability workbench"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig config;
    config.node_budget = env_budget();
    optional<int> k, n;
    app.add_option("--k", k, "subset size")->check(CLI::Range(0, 64));
    app.add_option("--n", n, "base set size")->check(CLI::NonNegativeNumber);
    app.add_option("--budget", config.node_budget, "search node budget (default JOHNSON_NODE_BUDGET or 2e8)")->check(CLI::PositiveNumber);
    app.add_option("--vertex-budget", config.vertex_budget, "largest fragment to build")->check(CLI::PositiveNumber);
    app.add_option("--time-limit", config.time_limit, "wall time in seconds; exceeding it exits with 3")->check(CLI::PositiveNumber);
    app.add_option("--jobs", config.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", config.seed, "seed for sampled modes");
    app.add_option("--output,-o", config.output, "write the report here instead of stdout");
    app.add_flag("!--no-stats", config.stats, "leave timing and counters out of reports");
    app.add_flag("!--no-orbit-reduction", config.orbit_reduction, "enumerate every tuple");

    FragmentArgs gen_args;
    auto gen = app.add_subcommand("gen", "emit the fragment J_n(k)");
    gen->add_option("--relations", gen_args.relations, "comma separated symbols");

    int arity = 2;
    auto orbits = app.add_subcommand("orbits", "orbit representatives of tuples of k-subsets");
    orbits->add_option("--arity", arity);

    CheckDefArgs def_args;
    auto check_def = app.add_subcommand("check-def", "compare a formula with a target relation");
    check_def->add_option("--structure", def_args.structure, "fragment descriptor file");
    check_def->add_option("--formula", def_args.formula);
    check_def->add_option("--formula-file", def_args.formula_file);
    check_def->add_option("--builtin", def_args.builtin);
    check_def->add_option("--target", def_args.target, "relation symbol");
    check_def->add_option("--free", def_args.free, "comma separated order of free variables");
    check_def->add_option("--i", def_args.i);
    check_def->add_option("--j", def_args.j);
    check_def->add_option("--m", def_args.m);
    check_def->add_flag("--unbounded", def_args.unbounded, "decide over all of J(k)");

    VerifyArgs verify_args;
    auto verify_cmd = app.add_subcommand("verify", "run catalog checks");
    verify_cmd->add_option("--lemma", verify_args.lemma);
    verify_cmd->add_option("--manifest", verify_args.manifest);
    verify_cmd->add_option("--i", verify_args.i);
    verify_cmd->add_option("--j", verify_args.j);
    verify_cmd->add_option("--m", verify_args.m);
    verify_cmd->add_option("--length", verify_args.length);
    verify_cmd->add_option("--psi-index", verify_args.psi_index);
    verify_cmd->add_option("--target", verify_args.target);

    string nae_file;
    auto reduce = app.add_subcommand("reduce-nae", "reduce an NAE instance to a CSP instance");
    reduce->add_option("file", nae_file)->required();

    string instance_file, structure_file;
    auto solve = app.add_subcommand("solve", "solve a CSP instance over J(k) or a fragment");
    solve->add_option("file", instance_file)->required();
    solve->add_option("--structure", structure_file, "fragment descriptor file");

    string equisat_file;
    int random_count = 0, max_vars = 5, max_clauses = 5;
    auto equisat = app.add_subcommand("equisat", "compare an NAE instance with its reduction");
    equisat->add_option("file", equisat_file);
    equisat->add_option("--random", random_count, "check this many seeded random instances instead");
    equisat->add_option("--max-vars", max_vars)->check(CLI::PositiveNumber);
    equisat->add_option("--max-clauses", max_clauses)->check(CLI::NonNegativeNumber);

    string embed_file, axioms = "complete";
    auto embed_cmd = app.add_subcommand("embed", "embed an ordered structure into ordered k-tuples");
    embed_cmd->add_option("file", embed_file)->required();
    embed_cmd->add_option("--axioms", axioms, "stated or complete");

    int max_size = 3;
    auto sweep = app.add_subcommand("sweep", "compare the axioms with embeddability on all small structures");
    sweep->add_option("--max-size", max_size)->check(CLI::PositiveNumber);
    sweep->add_option("--axioms", axioms, "stated or complete");

    string map_file;
    auto behavior = app.add_subcommand("behavior", "behavior map and pair checks of a fragment map");
    behavior->add_option("file", map_file)->required();

    int samples = 2000;
    auto battery = app.add_subcommand("battery", "pair checks and join checks on the fixed map battery");
    battery->add_option("--samples", samples)->check(CLI::PositiveNumber);

    auto dichotomy = app.add_subcommand("dichotomy", "every meet-preserving behavior table is permutational or has a shrinking chain");

    string mode = "projection", poly_relations;
    bool stop_early = false;
    auto poly = app.add_subcommand("poly-search", "binary polymorphisms of a fragment");
    poly->add_option("--mode", mode, "projection or full");
    poly->add_option("--relations", poly_relations, "comma separated binary symbols");
    poly->add_flag("--stop-at-first-binary", stop_early);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    config.k = k;
    config.n = n;
    if (config.time_limit > 0) {
        std::thread([limit = config.time_limit] {
                std::this_thread::sleep_for(std::chrono::duration<double>(limit));
                cerr << "time limit exceeded\n";
                std::_Exit(exit_budget);
                }).detach();
    }

    try {
        if (gen->parsed())
            return cmd_gen(config, gen_args);
        if (orbits->parsed())
            return cmd_orbits(config, arity);
        if (check_def->parsed())
            return cmd_check_def(config, def_args);
        if (verify_cmd->parsed())
            return cmd_verify(config, verify_args);
        if (reduce->parsed())
            return cmd_reduce_nae(config, nae_file);
        if (solve->parsed())
            return cmd_solve(config, instance_file, structure_file);
        if (equisat->parsed())
            return cmd_equisat(config, equisat_file, random_count, max_vars, max_clauses);
        if (embed_cmd->parsed())
            return cmd_embed(config, embed_file, axioms);
        if (sweep->parsed())
            return cmd_sweep(config, max_size, axioms);
        if (behavior->parsed())
            return cmd_behavior(config, map_file);
        if (battery->parsed())
            return cmd_battery(config, samples);
        if (dichotomy->parsed())
            return cmd_dichotomy(config);
        if (poly->parsed())
            return cmd_poly_search(config, mode, poly_relations, stop_early);
    }
    catch (const ParseError & e) {
        cerr << "parse error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
        return exit_usage;
    }
    catch (const InvalidInput & e) {
        cerr << "invalid input: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const BudgetExceeded & e) {
        cerr << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    }
    return exit_usage;
}
