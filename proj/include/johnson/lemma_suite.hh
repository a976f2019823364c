/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_LEMMA_SUITE_HH
#define JOHNSON_LEMMA_SUITE_HH 1

#include <johnson/eval.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace johnson
{
    enum class Verdict
    {
        Pass,
        Fail,
        Skipped
    };

    auto verdict_name(Verdict v) -> std::string;

    /// Unset parameters mean "every value in the lemma's range".
    struct LemmaParams
    {
        std::optional<int> i, j, m;

        /// nae_psi: chain index (default ceil(k/2) - 1).
        std::optional<int> psi_index;

        /// sunflower: tuple length (default the sunflower bound).
        std::optional<int> length;

        /// si_chain: a single target instead of all of S_i, S_{<=i}, S_{>=i}.
        std::optional<RelationSymbol> target;

        /// Fragment size; otherwise derived per check.
        std::optional<int> n;

        bool orbit_reduction = true;
        int jobs = 1;
        std::uint64_t node_budget = default_node_budget;
    };

    /// One comparison inside a verification, e.g. one (i, j) of down.
    struct SubCheck
    {
        std::string name;
        std::map<std::string, int> params;

        /// Fragment size used; 0 when decided over all of J(k).
        int n = 0;
        bool orbit_reduced = true;

        Verdict verdict = Verdict::Skipped;
        std::optional<Counterexample> counterexample;
        std::string note;
        DefCheckStats stats;
    };

    struct VerificationReport
    {
        std::string lemma;
        int k = 0;
        Verdict verdict = Verdict::Skipped;
        std::vector<SubCheck> checks;
        double seconds = 0.0;

        auto first_failure() const -> const SubCheck *;
    };

    auto lemma_ids() -> std::vector<std::string>;

    /// Runs the finite checks for one catalog entry. Budget exhaustion marks
    /// the affected check (and so the report) Skipped, never Pass. Throws
    /// InvalidInput for unknown ids and parameters out of range.
    auto verify(const std::string & id, int k, const LemmaParams & params = {}) -> VerificationReport;

    /// Fragment size for a pp formula whose semantic side needs
    /// semantic_points base points: the witness threshold, the semantic
    /// points, and 2k + 2, whichever is largest.
    auto derived_fragment_size(const Formula & f, int k, int semantic_points) -> int;

    /// Sunflower check: every tuple of the given length over J_n(k) whose
    /// members pairwise meet in m points has a common intersection of size
    /// exactly m. The counterexample is the least tuple in lexicographic
    /// order of vertex indices among orbit representatives.
    auto check_sunflower(int k, int m, int length, std::optional<int> n = std::nullopt,
            std::uint64_t node_budget = 50'000'000) -> SubCheck;
}

#endif
