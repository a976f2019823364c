/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_FORMULA_HH
#define JOHNSON_FORMULA_HH 1

#include <johnson/relation_symbol.hh>

#include <string>
#include <vector>

namespace johnson
{
    enum class NodeKind
    {
        Atom,
        Equal,
        And,
        Or,
        Not,
        Exists,
        Forall
    };

    /// First-order formulas over the relation symbols. Atom and Equal use
    /// vars as arguments; Exists and Forall use vars as the quantified list.
    struct Formula
    {
        NodeKind kind = NodeKind::And;
        RelationSymbol symbol;
        std::vector<std::string> vars;
        std::vector<Formula> children;

        static auto atom(const RelationSymbol & sym, std::vector<std::string> args) -> Formula;
        static auto equal(const std::string & a, const std::string & b) -> Formula;
        static auto conj(std::vector<Formula> children) -> Formula;
        static auto disj(std::vector<Formula> children) -> Formula;
        static auto negation(Formula child) -> Formula;
        static auto exists(std::vector<std::string> bound, Formula child) -> Formula;
        static auto forall(std::vector<std::string> bound, Formula child) -> Formula;

        auto operator== (const Formula &) const -> bool = default;
    };

    /// Parses the S-expression syntax. If signature is nonempty, every atom's
    /// symbol must occur in it. Throws ParseError for syntax errors and
    /// InvalidInput for unknown symbols, arity mismatches, and variables
    /// quantified twice along one branch.
    auto parse_formula(const std::string & text, const std::vector<RelationSymbol> & signature = {}) -> Formula;

    auto print_formula(const Formula & f) -> std::string;

    /// Free variables in order of first occurrence.
    auto free_vars(const Formula & f) -> std::vector<std::string>;

    /// All distinct variable names, free or bound.
    auto all_vars(const Formula & f) -> std::vector<std::string>;

    auto is_pp(const Formula & f) -> bool;

    /// Number of quantified variables (counted with multiplicity over
    /// quantifier lists).
    auto quantifier_count(const Formula & f) -> int;

    /// Every relation symbol used in an atom, without duplicates, in order
    /// of first use.
    auto symbols_used(const Formula & f) -> std::vector<RelationSymbol>;

    /// Throws InvalidInput unless atom arities match and no variable is
    /// quantified twice along one branch.
    auto check_well_formed(const Formula & f) -> void;
}

#endif
