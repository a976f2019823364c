/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/builtins.hh>
#include <johnson/errors.hh>
#include <johnson/ksubset.hh>

#include <algorithm>
#include <functional>
#include <map>

using std::string;
using std::vector;

namespace johnson
{
    namespace
    {
        using R = RelationSymbol;

        auto out_of_range(const string & name, const string & why) -> InvalidInput
        {
            return InvalidInput("builtin " + name + ": " + why);
        }

        class Builder
        {
            private:
                int _next = 0;

            public:
                int k;

                explicit Builder(int k_) : k(k_) {}

                auto fresh() -> string
                {
                    return "_b" + std::to_string(_next++);
                }

                auto fresh(int count) -> vector<string>
                {
                    vector<string> result;
                    for (int c = 0 ; c < count ; ++c)
                        result.push_back(fresh());
                    return result;
                }

                static auto atom(const R & sym, vector<string> args) -> Formula
                {
                    return Formula::atom(sym, std::move(args));
                }

                static auto exists(vector<string> vars, vector<Formula> body) -> Formula
                {
                    auto inner = body.size() == 1 ? std::move(body[0]) : Formula::conj(std::move(body));
                    if (vars.empty())
                        return inner;
                    return Formula::exists(std::move(vars), std::move(inner));
                }

                // S^m_i(args) written over S_i, with the auxiliary tuple sized by
                // the sunflower bound
                auto sunflower_from_binary(int i, const vector<string> & args, bool literal, bool use_edge = false) -> Formula
                {
                    int m = static_cast<int>(args.size());
                    int length = sunflower_tuple_length(k, i, m, literal);
                    auto extra = fresh(length - m);
                    vector<string> all = args;
                    all.insert(all.end(), extra.begin(), extra.end());
                    vector<Formula> body;
                    for (int p = 0 ; p < length ; ++p)
                        for (int q = p + 1 ; q < length ; ++q)
                            body.push_back(atom(use_edge ? R::edge() : R::exact(i), {all[p], all[q]}));
                    return exists(extra, std::move(body));
                }

                auto sunflower(int i, const vector<string> & args, bool expand) -> Formula
                {
                    if (expand)
                        return sunflower_from_binary(i, args, false);
                    return atom(R::sunflower(static_cast<int>(args.size()), i), args);
                }

                // S_{>=t} over E, S_0 and =
                auto at_least(int t, const string & x, const string & y) -> Formula
                {
                    if (t >= k)
                        return Formula::equal(x, y);
                    if (t == k - 1) {
                        // two sets sharing their common (k-1)-core with both x and y
                        auto z = fresh(2);
                        auto left = sunflower_from_binary(k - 1, {z[0], z[1], x}, false, true);
                        auto right = sunflower_from_binary(k - 1, {z[0], z[1], y}, false, true);
                        return exists(z, {std::move(left), std::move(right)});
                    }
                    if (t == k - 2) {
                        auto z = fresh();
                        return exists({z}, {atom(R::edge(), {x, z}), atom(R::edge(), {z, y})});
                    }
                    // one more E step lowers the bound by one
                    auto z = fresh();
                    auto inner = at_least(t + 1, x, z);
                    return exists({z}, {std::move(inner), atom(R::edge(), {z, y})});
                }

                // S_{<=t} over E, S_0 and =
                auto at_most(int t, const string & x, const string & y) -> Formula
                {
                    if (t >= k)
                        return at_least(0, x, y);
                    auto z = fresh();
                    if (t == 1 && k >= 2)
                        return exists({z}, {atom(R::exact(0), {x, z}), atom(R::edge(), {z, y})});
                    auto inner = at_least(k - t, z, y);
                    return exists({z}, {atom(R::exact(0), {x, z}), std::move(inner)});
                }

                auto phi(const string & x1, const string & x2, const string & x3) -> Formula
                {
                    auto y = fresh(2);
                    return exists(y, {
                            atom(R::edge(), {x1, y[0]}),
                            atom(R::edge(), {x1, y[1]}),
                            atom(R::edge(), {x3, y[0]}),
                            atom(R::edge(), {x3, y[1]}),
                            atom(R::neq(), {x2, y[0]}),
                            atom(R::neq(), {x2, y[1]}),
                            atom(R::sunflower(3, k - 1), {x2, y[0], y[1]}),
                            atom(R::edge(), {y[0], y[1]}),
                            atom(R::near(), {x1, x3})
                            });
                }

                auto psi(int n, const string & x1, const string & x2, const string & y1, const string & y2) -> Formula
                {
                    if (n == 0)
                        return Formula::conj({phi(x1, x2, y1), phi(x2, y1, y2)});
                    auto z = fresh(2 * n);
                    vector<Formula> body;
                    body.push_back(phi(x1, x2, z[0]));
                    body.push_back(phi(x2, z[0], z[1]));
                    for (int i = 1 ; i <= 2 * n - 2 ; ++i)
                        body.push_back(phi(z[i - 1], z[i], z[i + 1]));
                    body.push_back(phi(z[2 * n - 2], z[2 * n - 1], y1));
                    body.push_back(phi(z[2 * n - 1], y1, y2));
                    return exists(z, std::move(body));
                }

                auto sigma(const vector<string> & x) -> Formula
                {
                    auto y = fresh(2);
                    vector<Formula> body;
                    for (auto & xj : x)
                        body.push_back(atom(R::sunflower(3, k - 2), {y[0], y[1], xj}));
                    return exists(y, std::move(body));
                }

                auto default_psi_index() const -> int
                {
                    return (k + 1) / 2 - 1;
                }

                auto not_all_0(const vector<string> & x) -> Formula
                {
                    auto y = fresh(3);
                    auto z = fresh();
                    vector<Formula> body;
                    for (int i = 0 ; i < 3 ; ++i)
                        body.push_back(psi(default_psi_index(), x[2 * i], x[2 * i + 1], y[i], y[(i + 1) % 3]));
                    body.push_back(sigma({y[0], y[1], y[2], z}));
                    for (int i = 0 ; i < 3 ; ++i)
                        body.push_back(atom(R::edge(), {y[i], z}));
                    return exists({y[0], y[1], y[2], z}, std::move(body));
                }

                auto not_all_1(const vector<string> & x) -> Formula
                {
                    auto y = fresh(3);
                    auto z = fresh();
                    vector<Formula> body;
                    for (int i = 0 ; i < 3 ; ++i)
                        body.push_back(psi(default_psi_index(), x[2 * i], x[2 * i + 1], y[i], z));
                    body.push_back(sigma({y[0], y[1], y[2], z}));
                    for (int i = 0 ; i < 3 ; ++i)
                        body.push_back(atom(R::near(), {y[i], y[(i + 1) % 3]}));
                    return exists({y[0], y[1], y[2], z}, std::move(body));
                }
        };

        auto numbered(const string & prefix, int count) -> vector<string>
        {
            vector<string> result;
            for (int i = 1 ; i <= count ; ++i)
                result.push_back(prefix + std::to_string(i));
            return result;
        }

        auto gadget_vars() -> vector<string>
        {
            return {"x1_1", "x1_2", "x2_1", "x2_2", "x3_1", "x3_2"};
        }

        auto need(bool condition, const string & name, const string & why) -> void
        {
            if (! condition)
                throw out_of_range(name, why);
        }
    }

    auto sunflower_tuple_length(int k, int i, int m, bool literal_bound) -> int
    {
        auto c = binomial(k, literal_bound ? m : i);
        long long bound = static_cast<long long>(k - 1) * static_cast<long long>(c) + 2;
        return static_cast<int>(std::max<long long>(bound, m));
    }

    auto builtin_names() -> vector<string>
    {
        return {"down", "flip", "si_chain", "rn", "c_def", "c_diag", "biint_neq", "biint_c1", "neq_def", "o_def",
            "nae_phi", "nae_psi", "nae_sigma", "phi_r", "nae_not_all_0", "nae_not_all_1", "nae_clause"};
    }

    auto builtin(const string & name, int k, const BuiltinParams & p) -> Formula
    {
        need(k >= 1, name, "k must be at least 1");
        Builder b(k);

        if (name == "down") {
            need(p.i >= 0 && p.i <= k && p.j >= 0 && p.j <= k, name, "i and j must lie in 0..k");
            need(p.i + p.j >= k, name, "needs i + j >= k");
            auto z = b.fresh();
            return Builder::exists({z}, {Builder::atom(R::at_least(p.i), {"x", z}), Builder::atom(R::at_least(p.j), {z, "y"})});
        }

        if (name == "flip") {
            need(p.i >= 0 && p.i <= k - 1, name, "i must lie in 0..k-1");
            auto z = b.fresh();
            return Builder::exists({z}, {Builder::atom(R::exact(0), {"x", z}), Builder::atom(R::at_least(p.i), {z, "y"})});
        }

        if (name == "si_chain") {
            need(p.target.has_value(), name, "needs a target relation");
            auto t = *p.target;
            need(t.index >= 0 && t.index <= k, name, "index must lie in 0..k");
            switch (t.kind) {
                case RelationKind::AtLeast: return b.at_least(t.index, "x", "y");
                case RelationKind::AtMost: return b.at_most(t.index, "x", "y");
                case RelationKind::Exact:
                    if (t.index == k)
                        return Formula::equal("x", "y");
                    return Formula::conj({b.at_most(t.index, "x", "y"), b.at_least(t.index, "x", "y")});
                default:
                    throw out_of_range(name, "target must be S_i, S_{<=i} or S_{>=i}");
            }
        }

        if (name == "rn") {
            need(p.m >= 2, name, "m must be at least 2");
            need(p.i >= 0 && p.i <= k, name, "i must lie in 0..k");
            if (p.to_binary) {
                auto extra = b.fresh(p.m - 2);
                vector<string> args{"u1", "u2"};
                args.insert(args.end(), extra.begin(), extra.end());
                return Builder::exists(extra, {Builder::atom(R::sunflower(p.m, p.i), args)});
            }
            return b.sunflower_from_binary(p.i, numbered("u", p.m), p.literal_bound);
        }

        if (name == "c_def" || name == "biint_c1") {
            int i = name == "biint_c1" ? 1 : p.i;
            bool expand = name == "biint_c1" || p.expand;
            need(i >= 1 && i <= k, name, "i must lie in 1..k");
            auto pq = b.fresh(2);
            auto left = b.sunflower(i, {"u1", "u2", pq[0], pq[1]}, expand);
            auto right = b.sunflower(i, {pq[0], pq[1], "u3", "u4"}, expand);
            return Builder::exists(pq, {std::move(left), std::move(right)});
        }

        if (name == "c_diag") {
            need(p.i >= 1 && p.i <= k, name, "i must lie in 1..k");
            return Builder::atom(R::core(p.i), {"u1", "u2", "u1", "u2"});
        }

        if (name == "biint_neq") {
            auto wc = b.fresh(2);
            auto inner = Builder::exists(wc, {
                    b.sunflower(1, {"U", "V", wc[0]}, p.expand),
                    b.sunflower(1, {"A", "B", wc[1]}, p.expand),
                    Builder::atom(R::exact(0), {wc[0], wc[1]})});
            return Formula::conj({Builder::atom(R::exact(1), {"U", "V"}), Builder::atom(R::exact(1), {"A", "B"}), std::move(inner)});
        }

        if (name == "neq_def") {
            need(k >= 2, name, "needs k >= 2");
            auto z = b.fresh();
            return Builder::exists({z}, {Builder::atom(R::exact(0), {"x", z}), Builder::atom(R::exact(1), {z, "y"})});
        }

        if (name == "o_def") {
            need(k >= 2, name, "needs k >= 2");
            auto z = b.fresh();
            return Formula::conj({Builder::atom(R::neq(), {"x", "y"}),
                    Builder::exists({z}, {Builder::atom(R::edge(), {"x", z}), Builder::atom(R::edge(), {"y", z})})});
        }

        need(k >= 2, name, "needs k >= 2");

        if (name == "nae_phi")
            return b.phi("x1", "x2", "x3");

        if (name == "nae_psi") {
            int n = p.n >= 0 ? p.n : b.default_psi_index();
            return b.psi(n, "x1", "x2", "y1", "y2");
        }

        if (name == "nae_sigma")
            return b.sigma(numbered("x", 4));

        if (name == "phi_r") {
            need(p.relations.size() == 6, name, "needs six relations");
            for (auto & r : p.relations)
                need(same_semantics(r, R::edge(), k) || same_semantics(r, R::near(), k), name, "relations must be E or N");
            auto & r = p.relations;
            return Formula::conj({
                    b.sigma(numbered("x", 4)),
                    Builder::atom(r[0], {"x1", "x2"}),
                    Builder::atom(r[1], {"x2", "x3"}),
                    Builder::atom(r[2], {"x3", "x1"}),
                    Builder::atom(r[3], {"x1", "x4"}),
                    Builder::atom(r[4], {"x2", "x4"}),
                    Builder::atom(r[5], {"x3", "x4"})});
        }

        if (name == "nae_not_all_0")
            return b.not_all_0(gadget_vars());
        if (name == "nae_not_all_1")
            return b.not_all_1(gadget_vars());
        if (name == "nae_clause") {
            auto first = b.not_all_0(gadget_vars());
            auto second = b.not_all_1(gadget_vars());
            return Formula::conj({std::move(first), std::move(second)});
        }

        throw InvalidInput("unknown builtin '" + name + "'");
    }
}
