/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_BUILTINS_HH
#define JOHNSON_BUILTINS_HH 1

#include <johnson/formula.hh>

#include <optional>
#include <string>
#include <vector>

namespace johnson
{
    struct BuiltinParams
    {
        int i = -1;
        int j = -1;
        int m = -1;
        int n = -1;

        /// si_chain: which of S_i, S_{<=i}, S_{>=i} to define.
        std::optional<RelationSymbol> target;

        /// phi_r: the six binary relations R_1, ..., R_6, each E or N.
        std::vector<RelationSymbol> relations;

        /// rn: true for the definition of S_i from S^m_i, false for the
        /// definition of S^m_i from S_i.
        bool to_binary = false;

        /// rn: size the auxiliary tuple with binomial(k, m) rather than
        /// binomial(k, i). Only useful to demonstrate that the smaller bound
        /// is wrong.
        bool literal_bound = false;

        /// c_def, biint_neq: replace S^m_i atoms by their definitions over S_i.
        bool expand = false;
    };

    /// Names accepted by builtin().
    auto builtin_names() -> std::vector<std::string>;

    /// Constructs a catalog formula. Bound variables are named _b0, _b1, ...
    /// Throws InvalidInput for unknown names or parameters out of range.
    ///
    ///   down(i, j)        x y        S_{>=i} and S_{>=j} composed: S_{>=(i+j-k)}
    ///   flip(i)           x y        S_0 then S_{>=i}: S_{<=(k-i)}
    ///   si_chain(target)  x y        S_i, S_{<=i} or S_{>=i} over E, S_0 and =
    ///   rn(i, m)          u1 ...     S_i from S^m_i, or S^m_i from S_i
    ///   c_def(i)          u1 .. u4   C_i from S^4_i (or from S_i if expanded)
    ///   c_diag(i)         u1 u2      C_i(u1, u2, u1, u2)
    ///   biint_neq         U V A B    pairs in S_1 with distinct meeting points
    ///   biint_c1          u1 .. u4   C_1 from S_1
    ///   neq_def           x y        inequality from S_0 and S_1
    ///   o_def             x y        O from neq and E
    ///   nae_phi           x1 x2 x3
    ///   nae_psi(n)        x1 x2 y1 y2  (n defaults to ceil(k/2) - 1)
    ///   nae_sigma         x1 .. x4
    ///   phi_r(relations)  x1 .. x4
    ///   nae_not_all_0, nae_not_all_1, nae_clause
    ///                     x1_1 x1_2 x2_1 x2_2 x3_1 x3_2
    auto builtin(const std::string & name, int k, const BuiltinParams & params = {}) -> Formula;

    /// Length of the tuple (free and auxiliary variables) used when defining
    /// S^m_i from S_i.
    auto sunflower_tuple_length(int k, int i, int m, bool literal_bound = false) -> int;
}

#endif
