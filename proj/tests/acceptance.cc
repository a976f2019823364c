/* vim: set sw=4 sts=4 et foldmethod=syntax : */

// Runs the acceptance criteria in order and prints one PASS/FAIL line per
// criterion, with supporting detail indented below it. Exits non-zero when
// any criterion fails.

#include "corpus.hh"
#include "oracles.hh"

#include <johnson/canonical.hh>
#include <johnson/errors.hh>
#include <johnson/fragment.hh>
#include <johnson/io.hh>
#include <johnson/lemma_suite.hh>
#include <johnson/nae.hh>
#include <johnson/ordered.hh>
#include <johnson/poly.hh>

#include <fmt/core.h>

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace johnson;
using std::string;
using std::vector;

namespace
{
    using Clock = std::chrono::steady_clock;

    auto seconds_since(Clock::time_point start) -> double
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    struct Outcome
    {
        bool pass = true;
        vector<string> details;

        auto require(bool ok, const string & what) -> void
        {
            pass = pass && ok;
            details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", what));
        }

        auto note(const string & what) -> void
        {
            details.push_back("     " + what);
        }
    };

    auto describe(const VerificationReport & r) -> string
    {
        string s = fmt::format("{} k={}: {} ({} checks, {:.1f}s)", r.lemma, r.k, verdict_name(r.verdict), r.checks.size(), r.seconds);
        if (auto f = r.first_failure()) {
            s += fmt::format("; first failing check '{}'", f->name);
            if (f->counterexample) {
                s += " at (";
                for (std::size_t p = 0 ; p < f->counterexample->tuple.size() ; ++p)
                    s += (p ? " " : "") + f->counterexample->tuple[p].to_string();
                s += fmt::format(") expected {} got {}", f->counterexample->expected, f->counterexample->formula_value);
            }
            else if (! f->note.empty())
                s += ": " + f->note;
        }
        return s;
    }

    auto run_lemma(Outcome & out, const string & id, int k, bool orbit_reduced, double limit,
            std::optional<int> psi_index = std::nullopt) -> void
    {
        LemmaParams lp;
        lp.orbit_reduction = orbit_reduced;
        lp.psi_index = psi_index;
        try {
            auto report = verify(id, k, lp);
            out.require(report.verdict == Verdict::Pass && report.seconds <= limit,
                    describe(report) + (orbit_reduced ? " orbit-reduced" : " full"));
        }
        catch (const BudgetExceeded & e) {
            out.require(false, fmt::format("{} k={}: budget exceeded: {}", id, k, e.what()));
        }
    }

    auto pp_definition_suite() -> Outcome
    {
        Outcome out;
        for (auto id : {"down", "flip", "si_chain", "rn", "c_def", "biint_neq", "biint_c1"}) {
            run_lemma(out, id, 2, false, 60.0);
            run_lemma(out, id, 3, true, 60.0);
        }
        return out;
    }

    auto sunflower() -> Outcome
    {
        Outcome out;
        auto start = Clock::now();
        for (auto [k, m] : {std::pair{2, 1}, {2, 2}, {3, 3}}) {
            int length = (k - 1) * static_cast<int>(binomial(k, m)) + 2;
            auto c = check_sunflower(k, m, length);
            out.require(c.verdict == Verdict::Pass, fmt::format("k={} m={} length {} on n={}: {}", k, m, length, c.n, verdict_name(c.verdict)));
        }
        auto below = check_sunflower(2, 1, 3);
        bool found = below.verdict == Verdict::Fail && below.counterexample && below.counterexample->tuple.size() == 3;
        if (found) {
            auto & t = below.counterexample->tuple;
            for (int p = 0 ; p < 3 ; ++p)
                for (int q = p + 1 ; q < 3 ; ++q)
                    found = found && oracle::meet(t[p], t[q]) == 1;
            found = found && (t[0].bits() & t[1].bits() & t[2].bits()) == 0;
        }
        out.require(found, "k=2 m=1 length 3: a pairwise-meeting triple with empty common part is reported");
        double elapsed = seconds_since(start);
        out.require(elapsed <= 10.0, fmt::format("elapsed {:.1f}s", elapsed));
        return out;
    }

    auto nae_gadgets() -> Outcome
    {
        Outcome out;
        for (auto id : {"nae_phi", "nae_sigma", "phi_r_cases"}) {
            run_lemma(out, id, 2, false, 120.0);
            run_lemma(out, id, 3, true, 1800.0);
        }
        run_lemma(out, "nae_psi", 2, false, 120.0, 0);
        run_lemma(out, "nae_psi", 3, true, 1800.0, 1);
        return out;
    }

    auto reduction_end_to_end() -> Outcome
    {
        Outcome out;
        auto start = Clock::now();
        std::uint64_t instances = 0, disagreements = 0;
        std::optional<NAEInstance> first;
        auto check = [&] (const NAEInstance & inst) {
            ++instances;
            // the source side again, by counting assignments
            bool direct = false;
            for (std::uint64_t m = 0 ; m < (std::uint64_t{1} << inst.vars) && ! direct ; ++m) {
                bool ok = true;
                for (auto & c : inst.clauses) {
                    int ones = ((m >> c[0]) & 1) + ((m >> c[1]) & 1) + ((m >> c[2]) & 1);
                    ok = ok && ones != 0 && ones != 3;
                }
                direct = ok;
            }
            auto report = equisat_check(inst, 2);
            if (! report.agree() || report.source_sat != direct) {
                ++disagreements;
                if (! first)
                    first = inst;
            }
        };
        for (int vars = 1 ; vars <= 3 ; ++vars)
            for (auto & inst : all_nae_instances(vars, 3))
                check(inst);
        auto exhaustive = instances;
        std::mt19937_64 rng(20240601);
        for (int r = 0 ; r < 100 ; ++r)
            check(random_nae_instance(rng, 5, 5));
        out.require(disagreements == 0, fmt::format("{} exhaustive and 100 random instances at k=2, {} disagreements",
                    exhaustive, disagreements));
        if (first) {
            string text = print_nae(*first);
            for (auto & c : text)
                if (c == '\n')
                    c = ';';
            out.note("first disagreement: " + text);
        }
        double elapsed = seconds_since(start);
        out.require(elapsed <= 1800.0, fmt::format("elapsed {:.1f}s", elapsed));
        return out;
    }

    auto finite_boundedness() -> Outcome
    {
        Outcome out;
        auto start = Clock::now();
        for (auto [k, size] : {std::pair{2, 4}, {3, 3}}) {
            auto report = sweep_ordered_structures(k, size, AxiomSet::Stated, true);
            out.require(report.pass(), fmt::format("six stated schemes, k={} up to {} elements: {} accepted, {} pruned, {} mismatches ({:.1f}s)",
                        k, size, report.accepted, report.pruned, report.mismatches, report.seconds));
            if (report.first_mismatch) {
                auto & m = *report.first_mismatch;
                out.note(fmt::format("mismatch: axioms {} embed {} brute force {}; {}", m.axioms_ok, m.embedded, m.brute_force,
                            json_of(m.structure).dump()));
            }
        }
        double elapsed = seconds_since(start);
        out.require(elapsed <= 300.0, fmt::format("elapsed {:.1f}s", elapsed));

        // not part of the verdict: the same sweep with the extended scheme list
        for (auto [k, size] : {std::pair{2, 4}, {3, 3}}) {
            auto report = sweep_ordered_structures(k, size, AxiomSet::Complete);
            out.note(fmt::format("extended schemes, k={} up to {} elements: {} accepted, {} pruned, {} mismatches ({:.1f}s)",
                        k, size, report.accepted, report.pruned, report.mismatches, report.seconds));
        }
        return out;
    }

    auto battery(int k) -> vector<std::pair<string, FragmentMap>>
    {
        auto pool = generic_pool(k);
        return {{"identity", identity_map(pool)}, {"collapse-last", collapse_last_map(pool)},
            {"automorphism", automorphism_map(pool)}, {"reversal", reversal_map(pool)}};
    }

    auto behavior_algebra() -> Outcome
    {
        Outcome out;
        auto start = Clock::now();
        std::mt19937_64 rng(11);
        auto laws = verify_closure_laws(10, rng, 1000);
        out.require(laws.pass, fmt::format("closure laws on {} random relations", laws.checked));
        for (int k = 1 ; k <= 3 ; ++k) {
            auto j = verify_join(generic_pool(k));
            out.require(j.pass, fmt::format("join of agreement relations, k={} ({} checked)", k, j.checked));
            if (k >= 2)
                for (auto & [name, fm] : battery(k)) {
                    auto ij = verify_image_join(fm);
                    out.require(ij.pass, fmt::format("image of a join, {} map, k={} ({} checked)", name, k, ij.checked));
                }
        }
        for (int k = 2 ; k <= 4 ; ++k) {
            auto d = verify_permutational_dichotomy(k);
            out.require(d.pass() && d.tables == (std::uint64_t{1} << (k * k)),
                    fmt::format("dichotomy k={}: {} tables, {} permutational, {} violations, {} chain failures",
                        k, d.tables, d.permutational, d.violations, d.chain_failures));
        }
        for (int k = 2 ; k <= 3 ; ++k) {
            std::uint64_t tried = 0, failed = 0;
            for (int code = 0 ; code < (1 << (k * k)) ; ++code) {
                vector<IndexSet> cos(k);
                for (int i = 0 ; i < k ; ++i)
                    cos[i] = (code >> (i * k)) & full_index_set(k);
                auto b = behavior_from_cosingletons(k, cos);
                if (b(0) != 0 || is_permutational(b))
                    continue;
                ++tried;
                auto r = shrinking_chain(b);
                if (! r.chain || ! chain_satisfies(b, *r.chain))
                    ++failed;
            }
            out.require(tried > 0 && failed == 0, fmt::format("shrinking chains k={}: {} tables, {} without a chain", k, tried, failed));
        }
        double elapsed = seconds_since(start);
        out.require(elapsed <= 300.0, fmt::format("elapsed {:.1f}s", elapsed));
        return out;
    }

    auto pair_lemmas() -> Outcome
    {
        Outcome out;
        auto start = Clock::now();
        for (int k = 2 ; k <= 3 ; ++k)
            for (auto & [name, fm] : battery(k)) {
                auto r = verify_pair_lemmas(fm);
                int applicable = 0;
                for (auto & c : r.checks)
                    applicable += c.applicable;
                string failing;
                for (auto & c : r.checks)
                    if (c.applicable && ! c.pass)
                        failing += " " + c.name;
                out.require(r.pass(), fmt::format("{} map, k={}: {} of {} identities applicable{}", name, k, applicable,
                            r.checks.size(), failing.empty() ? "" : ", failing:" + failing));
            }
        double elapsed = seconds_since(start);
        out.require(elapsed <= 60.0, fmt::format("elapsed {:.1f}s", elapsed));
        return out;
    }

    auto polymorphism_lab() -> Outcome
    {
        Outcome out;
        auto start = Clock::now();
        auto p = projection_check();
        out.require(p.candidates == 16 && p.preserving.size() == 2 && p.only_projections(),
                fmt::format("{} candidate Boolean operations, {} preserve the template", p.candidates, p.preserving.size()));
        auto s = poly_search();
        out.require(! s.binary_witness && s.essentially_unary == s.found,
                fmt::format("J_4(2) with S0, S1, neq: {} binary polymorphisms fixing the first vertex, {} essentially unary ({} nodes)",
                    s.found, s.essentially_unary, s.nodes));
        out.note("an observation about this fragment only");
        double elapsed = seconds_since(start);
        out.require(elapsed <= 1800.0, fmt::format("elapsed {:.1f}s", elapsed));
        return out;
    }

    auto infrastructure() -> Outcome
    {
        Outcome out;
        auto start = Clock::now();

        auto corpus = corpus::formulas(1, 200);
        int round_trips = 0;
        for (auto & f : corpus)
            round_trips += parse_formula(print_formula(f)) == f && print_formula(parse_formula(print_formula(f))) == print_formula(f);
        out.require(round_trips == 200, fmt::format("{} of 200 formulas survive print and parse", round_trips));

        int orbit_cases = 0, orbit_ok = 0;
        for (int n = 1 ; n <= 8 ; ++n)
            for (int k = 0 ; k <= std::min(n, 4) ; ++k) {
                int expected = std::min(k, n - k) + 1;
                ++orbit_cases;
                orbit_ok += oracle::pair_orbits_by_generators(n, k) == expected
                    && orbit_representatives(make_fragment(n, k), 2).size() == static_cast<std::size_t>(expected);
            }
        out.require(orbit_ok == orbit_cases, fmt::format("pair orbit count min(k, n - k) + 1 for {} of {} (n, k) with n <= 8, k <= 4",
                    orbit_ok, orbit_cases));

        vector<std::pair<string, std::function<string ()>>> reports{
            {"lemma report", [] { return json_of(verify("flip", 2), false).dump(); }},
            {"lemma report with 4 jobs", [] { LemmaParams lp; lp.jobs = 4; return json_of(verify("flip", 2, lp), false).dump(); }},
            {"equisat report", [] {
                std::mt19937_64 rng(5);
                return json_of(equisat_check(random_nae_instance(rng, 4, 4), 2), false).dump(); }},
            {"sweep report", [] { return json_of(sweep_ordered_structures(2, 2), false).dump(); }},
            {"pair lemma report", [] { return json_of(verify_pair_lemmas(collapse_last_map(generic_pool(3)))).dump(); }},
            {"dichotomy report", [] { return json_of(verify_permutational_dichotomy(3)).dump(); }},
            {"projection report", [] { return json_of(projection_check()).dump(); }}};
        auto reference = reports[0].second();
        for (auto & [name, produce] : reports) {
            auto a = produce(), b = produce();
            bool same = a == b && (name != "lemma report with 4 jobs" || a == reference);
            out.require(same, name + " serializes identically on repeated runs");
        }

        double elapsed = seconds_since(start);
        out.require(elapsed <= 60.0, fmt::format("elapsed {:.1f}s", elapsed));
        return out;
    }
}

auto main() -> int
{
    vector<std::pair<string, std::function<Outcome ()>>> criteria{
        {"pp-definition suite", pp_definition_suite},
        {"sunflower bound", sunflower},
        {"NAE gadget checks", nae_gadgets},
        {"end-to-end reduction", reduction_end_to_end},
        {"finite boundedness", finite_boundedness},
        {"behavior algebra", behavior_algebra},
        {"pair identities", pair_lemmas},
        {"polymorphism lab", polymorphism_lab},
        {"infrastructure", infrastructure}};

    int failed = 0, number = 0;
    for (auto & [title, run] : criteria) {
        ++number;
        auto start = Clock::now();
        Outcome out;
        try {
            out = run();
        }
        catch (const std::exception & e) {
            out.require(false, string("exception: ") + e.what());
        }
        fmt::print("criterion {}: {} {} ({:.1f}s)\n", number, out.pass ? "PASS" : "FAIL", title, seconds_since(start));
        for (auto & d : out.details)
            fmt::print("    {}\n", d);
        std::fflush(stdout);
        failed += ! out.pass;
    }
    fmt::print("{} of {} criteria passed\n", number - failed, number);
    return failed == 0 ? 0 : 1;
}
