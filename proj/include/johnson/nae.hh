/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_NAE_HH
#define JOHNSON_NAE_HH 1

#include <johnson/eval.hh>

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace johnson
{
    /// Not-all-equal 3-SAT: variables are 0 .. vars-1.
    struct NAEInstance
    {
        int vars = 0;
        std::vector<std::array<int, 3>> clauses;

        auto operator== (const NAEInstance &) const -> bool = default;
    };

    /// Throws InvalidInput for clause indices out of range.
    auto validate_nae(const NAEInstance & inst) -> void;

    /// "p nae V C" header, then one clause per line with 1-based variables.
    /// Lines starting with 'c' are comments. Throws ParseError.
    auto parse_nae(const std::string & text) -> NAEInstance;
    auto print_nae(const NAEInstance & inst) -> std::string;

    /// Exhaustive search over all 2^vars assignments; the first satisfying
    /// one in binary counting order.
    auto nae_solve(const NAEInstance & inst) -> std::optional<std::vector<bool>>;

    auto nae_satisfied(const NAEInstance & inst, const std::vector<bool> & values) -> bool;

    /// Names of the two CSP variables encoding NAE variable v.
    auto encoding_vars(int v) -> std::array<std::string, 2>;

    /// Every NAE variable becomes a pair of variables related by O, and
    /// every clause the conjunction of the not-all-0 and not-all-1 gadgets
    /// with its bound variables renamed apart.
    auto reduce_nae(const NAEInstance & inst, int k) -> CSPInstance;

    /// E between the encoding pair reads as 1, N as 0; anything else is not
    /// a value.
    auto decode_nae(const PointAssignment & a, int vars) -> std::optional<std::vector<bool>>;

    struct EquisatReport
    {
        bool source_sat = false;
        bool target_sat = false;
        /// Target solution decoded through the interpretation, if any.
        std::optional<std::vector<bool>> decoded;
        /// The decoded assignment satisfies the source instance.
        bool decoded_ok = false;
        std::uint64_t target_vars = 0;
        double seconds = 0.0;

        auto agree() const -> bool { return source_sat == target_sat && (! target_sat || decoded_ok); }
    };

    /// Decides the reduced instance over all of J(k) (points are introduced
    /// on demand, so no fragment size is involved) and the source instance
    /// by enumeration. Throws BudgetExceeded.
    auto equisat_check(const NAEInstance & inst, int k, std::uint64_t node_budget = default_node_budget) -> EquisatReport;

    /// All instances over exactly `vars` variables with at most max_clauses
    /// clauses, each clause multiset listed once (clauses sorted).
    auto all_nae_instances(int vars, int max_clauses) -> std::vector<NAEInstance>;

    /// 1..max_vars variables and 0..max_clauses clauses, uniformly.
    auto random_nae_instance(std::mt19937_64 & rng, int max_vars, int max_clauses) -> NAEInstance;

    struct HardnessCertificate
    {
        /// Intersection sizes, as a bit mask over 0..k.
        std::uint64_t sizes = 0;
        Formula definition;
    };

    enum class HardnessVerdict
    {
        NPHardCertified,
        Inconclusive
    };

    /// Verifies each certificate's definition of S_I on the fragment (an
    /// invalid certificate throws InvalidInput) and certifies hardness iff
    /// the index sets have empty intersection. Absence of certificates is
    /// never evidence of tractability.
    auto hardness_verdict(const std::vector<HardnessCertificate> & certified, const JohnsonFragment & frag,
            const CheckOptions & options = {}) -> HardnessVerdict;
}

#endif
