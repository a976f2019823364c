/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_EVAL_HH
#define JOHNSON_EVAL_HH 1

#include <johnson/formula.hh>
#include <johnson/fragment.hh>
#include <johnson/query.hh>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace johnson
{
    /// Variable name to vertex index of the fragment.
    using Assignment = std::map<std::string, std::size_t>;

    struct Relation
    {
        int arity = 0;
        std::set<std::vector<std::size_t>> tuples;

        auto contains(const std::vector<std::size_t> & t) const -> bool { return tuples.contains(t); }
        auto operator== (const Relation &) const -> bool = default;
    };

    /// Reusable evaluation of one formula on one fragment, for many values of
    /// its free variables. Primitive positive parts are handed to the query
    /// solver (whose memo persists across calls); the remaining connectives
    /// and quantifiers are evaluated directly.
    class FormulaEvaluator
    {
        private:
            struct Imp;
            std::unique_ptr<Imp> _imp;

        public:
            /// free_order defaults to free_vars(f); it may list extra
            /// variables but must cover every free variable.
            FormulaEvaluator(const JohnsonFragment & frag, const Formula & f, std::optional<std::vector<std::string>> free_order = std::nullopt,
                    std::uint64_t node_budget = default_node_budget);
            ~FormulaEvaluator();
            FormulaEvaluator(FormulaEvaluator &&);

            auto free_order() const -> const std::vector<std::string> &;
            auto operator() (std::span<const KSubset> values) -> bool;
            auto nodes() const -> std::uint64_t;
    };

    /// Throws InvalidInput if a free variable is unassigned.
    auto evaluate(const JohnsonFragment & frag, const Formula & f, const Assignment & a,
            std::uint64_t node_budget = default_node_budget) -> bool;

    /// Throws InvalidInput for sentences.
    auto defined_relation(const JohnsonFragment & frag, const Formula & f,
            std::uint64_t node_budget = default_node_budget) -> Relation;

    /// A target given by a membership test. The test must be invariant under
    /// permutations of the base set, since check_definition may only look at
    /// orbit representatives.
    struct SemanticTarget
    {
        std::string name;
        int arity = 0;
        std::function<bool (std::span<const KSubset>)> member;
    };

    using DefinitionTarget = std::variant<RelationSymbol, Relation, SemanticTarget>;

    struct CheckOptions
    {
        /// Only look at one tuple per orbit. Ignored for explicit Relation
        /// targets, which need not be orbit invariant.
        bool orbit_reduction = true;
        int jobs = 1;
        std::uint64_t node_budget = default_node_budget;

        /// Only tuples accepted here are compared. Called on every prefix of
        /// a tuple as it is built, so it must reject all extensions of a
        /// rejected prefix.
        TupleFilter domain;
    };

    struct Counterexample
    {
        std::vector<KSubset> tuple;
        bool expected = false;
        bool formula_value = false;
    };

    struct DefCheckStats
    {
        std::uint64_t nodes = 0;
        std::uint64_t tuples = 0;
        double seconds = 0.0;
    };

    struct DefCheckReport
    {
        bool pass = false;
        std::optional<Counterexample> counterexample;
        DefCheckStats stats;
    };

    /// Compares the relation defined by f (free variables in order of first
    /// occurrence) with the target, tuple by tuple in lexicographic order;
    /// the first disagreement is the counterexample.
    auto check_definition(const JohnsonFragment & frag, const Formula & f, const DefinitionTarget & target,
            const CheckOptions & options = {}) -> DefCheckReport;

    /// As above with an explicit order of the formula's free variables.
    auto check_definition(const JohnsonFragment & frag, const Formula & f, const std::vector<std::string> & free_order,
            const DefinitionTarget & target, const CheckOptions & options = {}) -> DefCheckReport;

    /// As check_definition, but over all of J(k): the formula must be pp,
    /// and is decided by search that introduces base points on demand, one
    /// tuple per orbit (represented over k times the arity points).
    auto check_definition_unbounded(int k, const Formula & f, const std::vector<std::string> & free_order,
            const DefinitionTarget & target, const CheckOptions & options = {}) -> DefCheckReport;

    struct Constraint
    {
        RelationSymbol rel;
        std::vector<std::string> scope;

        auto operator== (const Constraint &) const -> bool = default;
    };

    struct CSPInstance
    {
        std::vector<std::string> vars;
        std::vector<Constraint> constraints;

        auto operator== (const CSPInstance &) const -> bool = default;
    };

    /// Throws InvalidInput for unknown variables, arity mismatches, or
    /// duplicate variable names.
    auto validate_instance(const CSPInstance & inst) -> void;

    /// Turns a pp formula into an instance whose variables are all variables
    /// of the formula (bound ones renamed apart if necessary).
    auto instance_from_formula(const Formula & f) -> CSPInstance;

    /// Complete search over the fragment. Throws BudgetExceeded (never a
    /// verdict) and InvalidInput if a symbol is not in the fragment's
    /// signature.
    auto solve_csp(const CSPInstance & inst, const JohnsonFragment & frag,
            std::uint64_t node_budget = default_node_budget) -> std::optional<Assignment>;

    /// Variable name to the members of its k-subset of the naturals.
    using PointAssignment = std::map<std::string, std::vector<int>>;

    /// Complete search over all k-subsets of the naturals: solutions only
    /// ever need k times the number of variables base points, and fresh
    /// points are introduced on demand.
    /// branch_first names variables the search assigns before all others.
    auto solve_csp_unbounded(const CSPInstance & inst, int k,
            std::uint64_t node_budget = default_node_budget,
            const std::vector<std::string> & branch_first = {}) -> std::optional<PointAssignment>;

    /// k times the number of variables of f (free ones plus one per
    /// quantified variable). Throws InvalidInput if f is not pp.
    auto witness_threshold(const Formula & f, int k) -> int;
}

#endif
