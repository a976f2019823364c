/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/lemma_suite.hh>
#include <johnson/builtins.hh>
#include <johnson/errors.hh>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

using std::map;
using std::optional;
using std::span;
using std::string;
using std::uint64_t;
using std::vector;

namespace johnson
{
    namespace
    {
        using R = RelationSymbol;

        /// Full enumeration beyond this many tuples falls back to orbit
        /// representatives.
        constexpr double full_enumeration_limit = 5e7;

        auto popcount(uint64_t x) -> int
        {
            return std::popcount(x);
        }

        auto numbered(const string & prefix, int count) -> vector<string>
        {
            vector<string> result;
            for (int i = 1 ; i <= count ; ++i)
                result.push_back(prefix + std::to_string(i));
            return result;
        }

        auto range(optional<int> given, int lo, int hi) -> vector<int>
        {
            if (given)
                return {*given};
            vector<int> result;
            for (int v = lo ; v <= hi ; ++v)
                result.push_back(v);
            return result;
        }

        auto need(bool condition, const string & why) -> void
        {
            if (! condition)
                throw InvalidInput(why);
        }

        auto finish(SubCheck & check, const DefCheckReport & report) -> void
        {
            check.verdict = report.pass ? Verdict::Pass : Verdict::Fail;
            check.counterexample = report.counterexample;
            check.stats = report.stats;
        }

        auto add_note(SubCheck & check, const string & note) -> void
        {
            if (! check.note.empty())
                check.note += "; ";
            check.note += note;
        }

        /// Compares the relation defined by a pp formula with a target, on
        /// the derived fragment when it fits in the mask width and over all
        /// of J(k) otherwise.
        auto definability(const string & name, map<string, int> params, int k, const Formula & f,
                const vector<string> & free_order, const DefinitionTarget & target, int semantic_points,
                const LemmaParams & lp, const TupleFilter & domain = {}) -> SubCheck
        {
            SubCheck check;
            check.name = name;
            check.params = std::move(params);
            try {
                CheckOptions options;
                options.jobs = lp.jobs;
                options.node_budget = lp.node_budget;
                options.domain = domain;
                options.orbit_reduction = lp.orbit_reduction;

                int n = lp.n ? *lp.n : derived_fragment_size(f, k, semantic_points);
                if (n > max_base_size) {
                    check.n = 0;
                    check.orbit_reduced = true;
                    add_note(check, "derived fragment size " + std::to_string(n)
                            + " exceeds the mask width; decided over all of J(k)");
                    finish(check, check_definition_unbounded(k, f, free_order, target, options));
                    return check;
                }

                auto frag = make_fragment(n, k);
                check.n = n;
                if (! options.orbit_reduction) {
                    double tuples = std::pow(static_cast<double>(frag.vertex_count()), static_cast<double>(free_order.size()));
                    if (tuples > full_enumeration_limit) {
                        options.orbit_reduction = true;
                        add_note(check, "full enumeration of " + std::to_string(static_cast<uint64_t>(tuples))
                                + " tuples is beyond budget; orbit-reduced");
                    }
                }
                check.orbit_reduced = options.orbit_reduction;
                finish(check, check_definition(frag, f, free_order, target, options));
            }
            catch (const BudgetExceeded & e) {
                check.verdict = Verdict::Skipped;
                add_note(check, string("budget exceeded: ") + e.what());
            }
            return check;
        }

        auto semantic(const string & name, int arity, std::function<bool (span<const KSubset>)> member) -> SemanticTarget
        {
            return SemanticTarget{name, arity, std::move(member)};
        }

        auto size_of(uint64_t bits) -> int
        {
            return popcount(bits);
        }

        auto pair_sizes_filter(int arity, std::function<bool (const KSubset &, const KSubset &)> pair_ok) -> TupleFilter
        {
            return [arity, pair_ok] (span<const KSubset> t) {
                for (size_t p = 1 ; p < t.size() && static_cast<int>(p) < arity ; p += 2)
                    if (! pair_ok(t[p - 1], t[p]))
                        return false;
                return true;
            };
        }

        auto verify_down(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            for (int i : range(lp.i, 0, k))
                for (int j : range(lp.j, 0, k)) {
                    need(0 <= i && i <= k && 0 <= j && j <= k, "down needs 0 <= i, j <= k");
                    if (i + j < k) {
                        need(! (lp.i && lp.j), "down needs i + j >= k");
                        continue;
                    }
                    BuiltinParams bp;
                    bp.i = i;
                    bp.j = j;
                    auto target = R::at_least(i + j - k);
                    out.push_back(definability(target.to_string(), {{"i", i}, {"j", j}}, k, builtin("down", k, bp),
                                {"x", "y"}, target, 2 * k, lp));
                }
        }

        auto verify_flip(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            for (int i : range(lp.i, 0, k - 1)) {
                need(0 <= i && i < k, "flip needs 0 <= i < k");
                BuiltinParams bp;
                bp.i = i;
                auto target = R::at_most(k - i);
                out.push_back(definability(target.to_string(), {{"i", i}}, k, builtin("flip", k, bp),
                            {"x", "y"}, target, 2 * k, lp));
            }
        }

        auto verify_si_chain(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            vector<R> targets;
            if (lp.target)
                targets.push_back(*lp.target);
            else
                for (int i : range(lp.i, 0, k)) {
                    targets.push_back(R::exact(i));
                    targets.push_back(R::at_most(i));
                    targets.push_back(R::at_least(i));
                }
            for (auto & t : targets) {
                BuiltinParams bp;
                bp.target = t;
                out.push_back(definability(t.to_string(), {{"i", t.index}}, k, builtin("si_chain", k, bp),
                            {"x", "y"}, t, 2 * k, lp));
            }
        }

        auto verify_rn(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            for (int i : range(lp.i, 0, k))
                for (int m : range(lp.m, 2, 4)) {
                    need(0 <= i && i <= k && m >= 2, "rn needs 0 <= i <= k and m >= 2");
                    BuiltinParams to;
                    to.i = i;
                    to.m = m;
                    to.to_binary = true;
                    out.push_back(definability("S_" + std::to_string(i) + " from " + R::sunflower(m, i).to_string(),
                                {{"i", i}, {"m", m}}, k, builtin("rn", k, to), {"u1", "u2"}, R::exact(i), 2 * k, lp));

                    BuiltinParams from = to;
                    from.to_binary = false;
                    auto target = R::sunflower(m, i);
                    out.push_back(definability(target.to_string() + " from S_" + std::to_string(i),
                                {{"i", i}, {"m", m}, {"length", sunflower_tuple_length(k, i, m)}}, k, builtin("rn", k, from),
                                numbered("u", m), target, m * k, lp));
                }
        }

        auto verify_c_def(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            for (int i : range(lp.i, 1, k)) {
                need(0 <= i && i <= k, "c_def needs 0 <= i <= k");
                BuiltinParams bp;
                bp.i = i;
                out.push_back(definability(R::core(i).to_string(), {{"i", i}}, k, builtin("c_def", k, bp),
                            numbered("u", 4), R::core(i), 4 * k, lp));
                out.push_back(definability(R::core(i).to_string() + " on (u1, u2, u1, u2)", {{"i", i}}, k,
                            builtin("c_diag", k, bp), {"u1", "u2"}, R::exact(i), 2 * k, lp));
            }
        }

        auto meet_target() -> SemanticTarget
        {
            return semantic("pairs in S_1 meeting in different points", 4, [] (span<const KSubset> t) {
                    auto a = t[0].bits() & t[1].bits(), b = t[2].bits() & t[3].bits();
                    return size_of(a) == 1 && size_of(b) == 1 && a != b;
                    });
        }

        auto verify_biint_neq(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            need(k >= 1, "biint_neq needs k >= 1");
            vector<string> order{"U", "V", "A", "B"};
            for (bool expand : {false, true}) {
                BuiltinParams bp;
                bp.expand = expand;
                out.push_back(definability(expand ? "over S_1 alone" : "over S_1 and S^3_1", {{"expand", expand}}, k,
                            builtin("biint_neq", k, bp), order, meet_target(), 4 * k, lp));
            }
        }

        auto verify_biint_c1(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            need(k >= 1, "biint_c1 needs k >= 1");
            out.push_back(definability(R::core(1).to_string() + " over S_1", {}, k, builtin("biint_c1", k),
                        numbered("u", 4), R::core(1), 4 * k, lp));
        }

        /// x1 = S + {p, q}, x3 = S + {r, s}, x2 = S + {t, u} with u one of
        /// p, q, r, s and t outside x1 and x3.
        auto phi_shape(int k, span<const KSubset> t) -> bool
        {
            auto x1 = t[0].bits(), x2 = t[1].bits(), x3 = t[2].bits();
            auto core = x1 & x3;
            if (size_of(core) != k - 2 || (core & x2) != core)
                return false;
            auto rest = x2 & ~core;
            return size_of(rest & (x1 | x3)) == 1;
        }

        auto verify_nae_phi(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            need(k >= 2, "nae_phi needs k >= 2");
            auto f = builtin("nae_phi", k);
            vector<string> order{"x1", "x2", "x3"};

            out.push_back(definability("structural characterization", {}, k, f, order,
                        semantic("shared core shape", 3, [k] (span<const KSubset> t) { return phi_shape(k, t); }), 3 * k, lp));

            // the consequence is an implication, so compare phi with
            // phi-and-consequence
            auto consequence = [k] (span<const KSubset> t) {
                bool e = intersection_size(t[0], t[1]) == k - 1;
                bool n = intersection_size(t[1], t[2]) == k - 2;
                return e == n;
            };
            SubCheck implied;
            implied.name = "E(x1,x2) iff N(x2,x3) whenever phi holds";
            try {
                int n = lp.n ? *lp.n : derived_fragment_size(f, k, 3 * k);
                auto frag = make_fragment(n, k);
                implied.n = n;
                FormulaEvaluator eval(frag, f, order, lp.node_budget);
                auto start = std::chrono::steady_clock::now();
                for_each_orbit_representative(n, k, 3, {}, [&] (span<const KSubset> t) {
                        ++implied.stats.tuples;
                        if (eval(t) && ! consequence(t)) {
                            implied.counterexample = Counterexample{{t.begin(), t.end()}, false, true};
                            return false;
                        }
                        return true;
                        });
                implied.stats.nodes = eval.nodes();
                implied.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                implied.verdict = implied.counterexample ? Verdict::Fail : Verdict::Pass;
            }
            catch (const BudgetExceeded & e) {
                implied.verdict = Verdict::Skipped;
                add_note(implied, string("budget exceeded: ") + e.what());
            }
            out.push_back(std::move(implied));

            auto widened = [k] (span<const KSubset> t) {
                if (intersection_size(t[0], t[2]) == k - 2 && (t[1] == t[0] || t[1] == t[2]))
                    return true;
                return phi_shape(k, t);
            };
            auto observed = definability("characterization allowing x2 in {x1, x3}", {}, k, f, order,
                        semantic("shared core shape or x2 in {x1, x3}", 3, widened), 3 * k, lp);
            add_note(observed, "observation only: exact extent of phi");
            out.push_back(std::move(observed));
        }

        auto psi_target(int k) -> SemanticTarget
        {
            return semantic("(N and N) or (E and E)", 4, [k] (span<const KSubset> t) {
                    int a = intersection_size(t[0], t[1]), b = intersection_size(t[2], t[3]);
                    return (a == k - 2 && b == k - 2) || (a == k - 1 && b == k - 1);
                    });
        }

        auto overlap_pair(int k) -> std::function<bool (const KSubset &, const KSubset &)>
        {
            return [k] (const KSubset & a, const KSubset & b) {
                int s = intersection_size(a, b);
                return s == k - 1 || s == k - 2;
            };
        }

        auto verify_nae_psi(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            need(k >= 2, "nae_psi needs k >= 2");
            BuiltinParams bp;
            bp.n = lp.psi_index ? *lp.psi_index : (k + 1) / 2 - 1;
            need(bp.n >= 0, "nae_psi needs a nonnegative chain index");
            auto f = builtin("nae_psi", k, bp);
            vector<string> order{"x1", "x2", "y1", "y2"};
            out.push_back(definability("equivalence", {{"n", bp.n}}, k, f, order, psi_target(k), 4 * k, lp));
            auto on_domain = definability("equivalence on pairs in O", {{"n", bp.n}}, k, f, order, psi_target(k), 4 * k, lp,
                    pair_sizes_filter(4, overlap_pair(k)));
            out.push_back(std::move(on_domain));
        }

        auto verify_nae_sigma(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            need(k >= 2, "nae_sigma needs k >= 2");
            out.push_back(definability("common (k-2)-subset", {}, k, builtin("nae_sigma", k), numbered("x", 4),
                        semantic("common core", 4, [k] (span<const KSubset> t) {
                            return size_of(t[0].bits() & t[1].bits() & t[2].bits() & t[3].bits()) >= k - 2;
                            }), 4 * k, lp));
        }

        auto relation_letters(const vector<R> & rs) -> string
        {
            string result = "(";
            for (size_t i = 0 ; i < rs.size() ; ++i) {
                if (i)
                    result += ",";
                result += rs[i] == R::edge() ? "E" : "N";
            }
            return result + ")";
        }

        auto verify_phi_r_cases(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            need(k >= 2, "phi_r_cases needs k >= 2");
            int witness_points = lp.n ? *lp.n : 2 * k + 4;
            vector<string> order = numbered("x", 4);

            auto triple = [] (int bits) {
                vector<R> result;
                for (int b = 2 ; b >= 0 ; --b)
                    result.push_back((bits >> b) & 1 ? R::near() : R::edge());
                return result;
            };

            auto run = [&] (vector<R> rs, bool should_exist) {
                SubCheck check;
                check.name = (should_exist ? "exists " : "no ") + relation_letters(rs);
                check.orbit_reduced = false;
                auto start = std::chrono::steady_clock::now();
                try {
                    BuiltinParams bp;
                    bp.relations = rs;
                    auto sentence = compile_query(Formula::exists(order, builtin("phi_r", k, bp)), {});
                    bool found = false;
                    optional<vector<PointMask<4>>> values;
                    if (should_exist && witness_points <= max_base_size) {
                        check.n = witness_points;
                        FragmentSolver solver(sentence, k, witness_points, lp.node_budget);
                        found = solver.satisfiable({});
                        check.stats.nodes += solver.nodes();
                    }
                    if (! found) {
                        // decided over all of J(k)
                        check.n = 0;
                        UnboundedSolver solver(sentence, k, -1, lp.node_budget);
                        values = solver.solve({});
                        check.stats.nodes += solver.nodes();
                        found = values.has_value();
                        if (found && should_exist)
                            add_note(check, "witness needs more than " + std::to_string(witness_points) + " points");
                    }
                    if (found && ! should_exist) {
                        Counterexample ce{{}, false, true};
                        for (auto & name : order) {
                            auto it = std::find(sentence.names.begin(), sentence.names.end(), name);
                            vector<int> pts;
                            if (it != sentence.names.end())
                                pts = (*values)[it - sentence.names.begin()].points();
                            if (pts.empty() || pts.back() >= max_base_size) {
                                ce.tuple.clear();
                                break;
                            }
                            ce.tuple.push_back(KSubset::from_members(pts));
                        }
                        check.counterexample = ce;
                        check.verdict = Verdict::Fail;
                    }
                    else if (! found && should_exist) {
                        check.counterexample = Counterexample{{}, true, false};
                        check.verdict = Verdict::Fail;
                    }
                    else
                        check.verdict = Verdict::Pass;
                }
                catch (const BudgetExceeded & e) {
                    check.verdict = Verdict::Skipped;
                    add_note(check, string("budget exceeded: ") + e.what());
                }
                check.stats.tuples = 1;
                check.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                out.push_back(std::move(check));
            };

            auto join = [] (vector<R> a, const vector<R> & b) {
                a.insert(a.end(), b.begin(), b.end());
                return a;
            };
            auto eee = triple(0), nnn = triple(7);
            run(join(nnn, eee), false);
            for (int bits = 0 ; bits < 8 ; ++bits)
                if (bits != 7)
                    run(join(triple(bits), eee), true);
            for (int bits = 1 ; bits < 8 ; ++bits)
                run(join(nnn, triple(bits)), true);
        }

        auto verify_nae_interpretation(int k, const LemmaParams & lp, vector<SubCheck> & out) -> void
        {
            need(k >= 2, "nae_interpretation needs k >= 2");
            auto value = [k] (const KSubset & a, const KSubset & b) { return intersection_size(a, b) == k - 1; };
            auto domain = pair_sizes_filter(6, overlap_pair(k));
            auto order = vector<string>{"x1_1", "x1_2", "x2_1", "x2_2", "x3_1", "x3_2"};
            auto values = [value] (span<const KSubset> t) {
                return std::array<bool, 3>{value(t[0], t[1]), value(t[2], t[3]), value(t[4], t[5])};
            };

            out.push_back(definability("O is E or N", {}, k, builtin("o_def", k), {"x", "y"}, R::overlap(), 2 * k, lp));
            out.push_back(definability("not all 0", {}, k, builtin("nae_not_all_0", k), order,
                        semantic("not all 0", 6, [values] (span<const KSubset> t) {
                            auto v = values(t);
                            return v[0] || v[1] || v[2];
                            }), 6 * k, lp, domain));
            out.push_back(definability("not all 1", {}, k, builtin("nae_not_all_1", k), order,
                        semantic("not all 1", 6, [values] (span<const KSubset> t) {
                            auto v = values(t);
                            return ! (v[0] && v[1] && v[2]);
                            }), 6 * k, lp, domain));
            out.push_back(definability("not all equal", {}, k, builtin("nae_clause", k), order,
                        semantic("nae", 6, [values] (span<const KSubset> t) {
                            auto v = values(t);
                            return ! (v[0] == v[1] && v[1] == v[2]);
                            }), 6 * k, lp, domain));
        }

        auto combine(const vector<SubCheck> & checks) -> Verdict
        {
            bool skipped = false;
            for (auto & c : checks) {
                if (c.verdict == Verdict::Fail)
                    return Verdict::Fail;
                if (c.verdict == Verdict::Skipped)
                    skipped = true;
            }
            return skipped || checks.empty() ? Verdict::Skipped : Verdict::Pass;
        }
    }

    auto verdict_name(Verdict v) -> string
    {
        switch (v) {
            case Verdict::Pass: return "pass";
            case Verdict::Fail: return "fail";
            case Verdict::Skipped: return "skipped";
        }
        return "skipped";
    }

    auto VerificationReport::first_failure() const -> const SubCheck *
    {
        for (auto & c : checks)
            if (c.verdict == Verdict::Fail)
                return &c;
        return nullptr;
    }

    auto lemma_ids() -> vector<string>
    {
        return {"down", "flip", "si_chain", "sunflower", "rn", "c_def", "biint_neq", "biint_c1",
            "nae_phi", "nae_psi", "nae_sigma", "phi_r_cases", "nae_interpretation"};
    }

    auto derived_fragment_size(const Formula & f, int k, int semantic_points) -> int
    {
        return std::max({witness_threshold(f, k), semantic_points, 2 * k + 2});
    }

    auto check_sunflower(int k, int m, int length, optional<int> n, uint64_t node_budget) -> SubCheck
    {
        need(0 <= m && m <= k, "sunflower needs 0 <= m <= k");
        need(length >= 1, "sunflower needs a positive tuple length");
        SubCheck check;
        check.name = "tuples of length " + std::to_string(length);
        check.params = {{"m", m}, {"length", length}};
        // the union of such a tuple has at most k + (length - 1)(k - m) points
        int points = n ? *n : std::max(k + (length - 1) * (k - m), 2 * k + 2);
        check.n = points;
        auto start = std::chrono::steady_clock::now();
        try {
            need(points <= max_base_size, "sunflower fragment exceeds the mask width");
            auto pairwise = [m] (span<const KSubset> t) {
                auto & last = t.back();
                for (size_t p = 0 ; p + 1 < t.size() ; ++p)
                    if (intersection_size(t[p], last) != m)
                        return false;
                return true;
            };
            for_each_orbit_representative(points, k, length, pairwise, [&] (span<const KSubset> t) {
                    ++check.stats.tuples;
                    uint64_t common = ~uint64_t{0};
                    for (auto & s : t)
                        common &= s.bits();
                    if (size_of(common) != m) {
                        check.counterexample = Counterexample{{t.begin(), t.end()}, true, false};
                        return false;
                    }
                    return true;
                    }, node_budget);
            check.verdict = check.counterexample ? Verdict::Fail : Verdict::Pass;
        }
        catch (const BudgetExceeded & e) {
            check.verdict = Verdict::Skipped;
            add_note(check, string("budget exceeded: ") + e.what());
        }
        check.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return check;
    }

    auto verify(const string & id, int k, const LemmaParams & params) -> VerificationReport
    {
        auto start = std::chrono::steady_clock::now();
        need(k >= 1 && k <= max_base_size, "k out of range");
        VerificationReport report;
        report.lemma = id;
        report.k = k;
        auto & out = report.checks;

        if (id == "down")
            verify_down(k, params, out);
        else if (id == "flip")
            verify_flip(k, params, out);
        else if (id == "si_chain")
            verify_si_chain(k, params, out);
        else if (id == "sunflower") {
            for (int m : range(params.m, 0, k)) {
                int bound = static_cast<int>((k - 1) * binomial(k, m) + 2);
                out.push_back(check_sunflower(k, m, params.length ? *params.length : bound, params.n));
            }
        }
        else if (id == "rn")
            verify_rn(k, params, out);
        else if (id == "c_def")
            verify_c_def(k, params, out);
        else if (id == "biint_neq")
            verify_biint_neq(k, params, out);
        else if (id == "biint_c1")
            verify_biint_c1(k, params, out);
        else if (id == "nae_phi")
            verify_nae_phi(k, params, out);
        else if (id == "nae_psi")
            verify_nae_psi(k, params, out);
        else if (id == "nae_sigma")
            verify_nae_sigma(k, params, out);
        else if (id == "phi_r_cases")
            verify_phi_r_cases(k, params, out);
        else if (id == "nae_interpretation")
            verify_nae_interpretation(k, params, out);
        else
            throw InvalidInput("unknown lemma '" + id + "'");

        report.verdict = combine(out);
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }
}
