/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_TESTS_CORPUS_HH
#define JOHNSON_TESTS_CORPUS_HH 1

#include <johnson/formula.hh>

#include <random>
#include <string>
#include <vector>

namespace corpus
{
    using johnson::Formula;
    using johnson::RelationSymbol;

    struct FormulaGenerator
    {
        std::mt19937_64 rng;
        int bound_counter = 0;
        bool pp_only = false;

        explicit FormulaGenerator(std::uint64_t seed, bool pp = false) : rng(seed), pp_only(pp) {}

        auto pick(int bound) -> int { return std::uniform_int_distribution<int>(0, bound - 1)(rng); }

        auto symbol() -> RelationSymbol
        {
            switch (pick(9)) {
                case 0: return RelationSymbol::exact(pick(3));
                case 1: return RelationSymbol::at_most(pick(3));
                case 2: return RelationSymbol::at_least(pick(3));
                case 3: return RelationSymbol::edge();
                case 4: return RelationSymbol::near();
                case 5: return RelationSymbol::overlap();
                case 6: return RelationSymbol::neq();
                case 7: return RelationSymbol::sunflower(3, pick(2));
                default: return RelationSymbol::union_of(1 + pick(7));
            }
        }

        auto variable(const std::vector<std::string> & scope) -> std::string
        {
            return scope[pick(static_cast<int>(scope.size()))];
        }

        auto generate(int depth, std::vector<std::string> scope) -> Formula
        {
            int choice = depth <= 0 ? pick(2) : pick(pp_only ? 4 : 7);
            switch (choice) {
                case 0: {
                    auto s = symbol();
                    std::vector<std::string> args;
                    for (int a = 0 ; a < s.arity() ; ++a)
                        args.push_back(variable(scope));
                    return Formula::atom(s, args);
                }
                case 1:
                    return Formula::equal(variable(scope), variable(scope));
                case 2: {
                    std::vector<Formula> children;
                    for (int c = 1 + pick(3) ; c > 0 ; --c)
                        children.push_back(generate(depth - 1, scope));
                    return Formula::conj(children);
                }
                case 3: {
                    std::vector<std::string> bound;
                    for (int b = 1 + pick(2) ; b > 0 ; --b)
                        bound.push_back("q" + std::to_string(bound_counter++));
                    auto inner = scope;
                    inner.insert(inner.end(), bound.begin(), bound.end());
                    return Formula::exists(bound, generate(depth - 1, inner));
                }
                case 4: {
                    std::vector<Formula> children;
                    for (int c = 1 + pick(3) ; c > 0 ; --c)
                        children.push_back(generate(depth - 1, scope));
                    return Formula::disj(children);
                }
                case 5:
                    return Formula::negation(generate(depth - 1, scope));
                default: {
                    std::vector<std::string> bound{"q" + std::to_string(bound_counter++)};
                    auto inner = scope;
                    inner.push_back(bound[0]);
                    return Formula::forall(bound, generate(depth - 1, inner));
                }
            }
        }
    };

    /// A fixed corpus of well-formed formulas over free variables x, y, z.
    inline auto formulas(std::uint64_t seed, int count, bool pp_only = false) -> std::vector<Formula>
    {
        FormulaGenerator gen(seed, pp_only);
        std::vector<Formula> result;
        for (int i = 0 ; i < count ; ++i)
            result.push_back(gen.generate(1 + gen.pick(4), {"x", "y", "z"}));
        return result;
    }
}

#endif
