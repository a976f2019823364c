/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <johnson/io.hh>
#include <johnson/errors.hh>

#include <fstream>
#include <map>
#include <sstream>

using std::string;
using std::vector;

namespace johnson
{
    auto read_file(const string & path) -> string
    {
        std::ifstream in(path);
        if (! in)
            throw InvalidInput("cannot open '" + path + "'");
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    }

    auto parse_json(const string & text) -> Json
    {
        try {
            return Json::parse(text);
        }
        catch (const nlohmann::json::exception & e) {
            throw InvalidInput(string("malformed JSON: ") + e.what());
        }
    }

    namespace
    {
        template <typename T_>
        auto field(const Json & j, const string & key) -> T_
        {
            if (! j.is_object() || ! j.contains(key))
                throw InvalidInput("missing field '" + key + "'");
            try {
                return j.at(key).get<T_>();
            }
            catch (const nlohmann::json::exception &) {
                throw InvalidInput("field '" + key + "' has the wrong type");
            }
        }

        auto tuple_json(const vector<KSubset> & t) -> Json
        {
            Json result = Json::array();
            for (auto & v : t)
                result.push_back(json_of(v));
            return result;
        }
    }

    auto json_of(KSubset v) -> Json
    {
        return Json(v.members());
    }

    auto json_of(const JohnsonFragment & frag) -> Json
    {
        Json j;
        j["n"] = frag.n;
        j["k"] = frag.k;
        Json signature = Json::array();
        for (auto & s : frag.signature)
            signature.push_back(s.to_string());
        j["relations"] = signature;
        j["vertex_count"] = frag.vertex_count();
        Json vertices = Json::array();
        for (auto & v : frag.vertices)
            vertices.push_back(json_of(v));
        j["vertices"] = vertices;
        return j;
    }

    auto fragment_from_json(const Json & j) -> JohnsonFragment
    {
        int n = field<int>(j, "n"), k = field<int>(j, "k");
        if (! j.contains("relations"))
            return make_fragment(n, k);
        vector<RelationSymbol> signature;
        for (auto & s : field<vector<string>>(j, "relations"))
            signature.push_back(RelationSymbol::parse(s));
        return make_fragment(n, k, signature);
    }

    auto json_of(const CSPInstance & inst) -> Json
    {
        Json j;
        j["vars"] = inst.vars;
        Json constraints = Json::array();
        for (auto & c : inst.constraints)
            constraints.push_back(Json{{"rel", c.rel.to_string()}, {"scope", c.scope}});
        j["constraints"] = constraints;
        return j;
    }

    auto csp_from_json(const Json & j) -> CSPInstance
    {
        CSPInstance inst;
        inst.vars = field<vector<string>>(j, "vars");
        if (! j.contains("constraints") || ! j["constraints"].is_array())
            throw InvalidInput("missing field 'constraints'");
        for (auto & c : j["constraints"])
            inst.constraints.push_back(Constraint{RelationSymbol::parse(field<string>(c, "rel")), field<vector<string>>(c, "scope")});
        validate_instance(inst);
        return inst;
    }

    auto json_of(const NAEInstance & inst) -> Json
    {
        Json clauses = Json::array();
        for (auto & c : inst.clauses)
            clauses.push_back(Json{c[0] + 1, c[1] + 1, c[2] + 1});
        return Json{{"vars", inst.vars}, {"clauses", clauses}};
    }

    auto json_of(const DefCheckReport & report, bool stats) -> Json
    {
        Json j;
        j["verdict"] = report.pass ? "pass" : "fail";
        if (report.counterexample)
            j["counterexample"] = Json{
                {"tuple", tuple_json(report.counterexample->tuple)},
                {"expected", report.counterexample->expected},
                {"formula_value", report.counterexample->formula_value}};
        else
            j["counterexample"] = nullptr;
        if (stats)
            j["stats"] = Json{{"tuples", report.stats.tuples}, {"nodes", report.stats.nodes}, {"seconds", report.stats.seconds}};
        return j;
    }

    auto json_of(const VerificationReport & report, bool stats) -> Json
    {
        Json j;
        j["lemma"] = report.lemma;
        j["k"] = report.k;
        j["verdict"] = verdict_name(report.verdict);
        Json checks = Json::array();
        for (auto & c : report.checks) {
            Json cj;
            cj["name"] = c.name;
            Json params = Json::object();
            for (auto & [key, value] : c.params)
                params[key] = value;
            cj["params"] = params;
            if (c.n)
                cj["n"] = c.n;
            else
                cj["n"] = "unbounded";
            cj["orbit_reduced"] = c.orbit_reduced;
            cj["verdict"] = verdict_name(c.verdict);
            if (c.counterexample)
                cj["counterexample"] = Json{
                    {"tuple", tuple_json(c.counterexample->tuple)},
                    {"expected", c.counterexample->expected},
                    {"formula_value", c.counterexample->formula_value}};
            if (! c.note.empty())
                cj["note"] = c.note;
            if (stats)
                cj["stats"] = Json{{"tuples", c.stats.tuples}, {"nodes", c.stats.nodes}, {"seconds", c.stats.seconds}};
            checks.push_back(cj);
        }
        j["checks"] = checks;
        if (stats)
            j["stats"] = Json{{"seconds", report.seconds}};
        return j;
    }

    auto json_of(const PointAssignment & a) -> Json
    {
        Json j = Json::object();
        for (auto & [name, points] : a)
            j[name] = points;
        return j;
    }

    auto json_of(const EquisatReport & report, bool stats) -> Json
    {
        Json j;
        j["source_sat"] = report.source_sat;
        j["target_sat"] = report.target_sat;
        j["agree"] = report.agree();
        if (report.decoded) {
            Json values = Json::array();
            for (bool b : *report.decoded)
                values.push_back(b ? 1 : 0);
            j["decoded"] = values;
            j["decoded_satisfies"] = report.decoded_ok;
        }
        j["target_vars"] = report.target_vars;
        if (stats)
            j["stats"] = Json{{"seconds", report.seconds}};
        return j;
    }

    auto json_of(const OrderedKTuple & t) -> Json
    {
        Json j = Json::array();
        for (auto & c : t.coords())
            j.push_back(rational_to_string(c));
        return j;
    }

    auto tuple_from_json(const Json & j) -> OrderedKTuple
    {
        if (! j.is_array())
            throw InvalidInput("a tuple is an array of coordinates");
        vector<Rational> coords;
        for (auto & c : j) {
            if (c.is_string())
                coords.push_back(parse_rational(c.get<string>()));
            else if (c.is_number_integer())
                coords.emplace_back(c.get<std::int64_t>());
            else
                throw InvalidInput("coordinates are integers or strings \"p/q\"");
        }
        return OrderedKTuple(coords);
    }

    auto json_of(const OrderedStructure & s) -> Json
    {
        Json less = Json::array(), equal = Json::array();
        for (int a = 0 ; a < s.size() ; ++a)
            for (int r = 1 ; r <= s.k() ; ++r)
                for (int b = 0 ; b < s.size() ; ++b)
                    for (int t = 1 ; t <= s.k() ; ++t) {
                        if (s.less(a, r, b, t))
                            less.push_back(Json{a, r, b, t});
                        if (s.equal(a, r, b, t))
                            equal.push_back(Json{a, r, b, t});
                    }
        return Json{{"k", s.k()}, {"elements", s.size()}, {"less", less}, {"equal", equal}};
    }

    auto structure_from_json(const Json & j) -> OrderedStructure
    {
        int k = field<int>(j, "k"), n = field<int>(j, "elements");
        OrderedStructure s(k, n);
        for (auto key : {"less", "equal"})
            for (auto & flag : field<vector<vector<int>>>(j, key)) {
                if (flag.size() != 4)
                    throw InvalidInput(string("entries of '") + key + "' are [a, r, b, s]");
                if (flag[0] < 0 || flag[0] >= n || flag[2] < 0 || flag[2] >= n
                        || flag[1] < 1 || flag[1] > k || flag[3] < 1 || flag[3] > k)
                    throw InvalidInput(string("entry of '") + key + "' out of range");
                if (string(key) == "less")
                    s.set_less(flag[0], flag[1], flag[2], flag[3], true);
                else
                    s.set_equal(flag[0], flag[1], flag[2], flag[3], true);
            }
        for (int a = 0 ; a < n ; ++a)
            for (int r = 1 ; r <= k ; ++r)
                for (int b = 0 ; b < n ; ++b)
                    for (int t = 1 ; t <= k ; ++t)
                        if (! s.less(a, r, b, t) && ! s.equal(a, r, b, t) && ! s.less(b, t, a, r))
                            throw InvalidInput("element " + std::to_string(a) + " index " + std::to_string(r)
                                    + " and element " + std::to_string(b) + " index " + std::to_string(t) + " are not compared");
        return s;
    }

    auto json_of(const AxiomViolation & v) -> Json
    {
        return Json{{"axiom", v.axiom}, {"elements", v.elements}, {"indices", v.indices}};
    }

    auto json_of(const SweepReport & report, bool stats) -> Json
    {
        Json j;
        j["k"] = report.k;
        j["max_size"] = report.max_size;
        j["axioms"] = report.axioms == AxiomSet::Complete ? "complete" : "stated";
        j["verdict"] = report.pass() ? "pass" : "fail";
        j["accepted"] = report.accepted;
        j["pruned"] = report.pruned;
        j["mismatches"] = report.mismatches;
        if (report.first_mismatch) {
            auto & m = *report.first_mismatch;
            j["first_mismatch"] = Json{{"structure", json_of(m.structure)}, {"axioms_ok", m.axioms_ok},
                {"embedded", m.embedded}, {"brute_force", m.brute_force}, {"reinduced", m.reinduced}, {"note", m.note}};
        }
        if (stats)
            j["stats"] = Json{{"seconds", report.seconds}};
        return j;
    }

    auto json_of(const BehaviorMap & b) -> Json
    {
        Json table = Json::object();
        for (IndexSet I = 0 ; I < b.table.size() ; ++I)
            table[std::to_string(I)] = std::to_string(b.table[I]);
        return Json{{"k", b.k}, {"table", table}};
    }

    auto behavior_from_json(const Json & j) -> BehaviorMap
    {
        int k = field<int>(j, "k");
        if (k < 1 || k > 16)
            throw InvalidInput("k out of range for a behavior map");
        auto table = field<std::map<string, string>>(j, "table");
        BehaviorMap b{k, vector<IndexSet>(full_index_set(k) + 1)};
        vector<bool> seen(b.table.size(), false);
        for (auto & [from, to] : table) {
            unsigned long I = 0, J = 0;
            try {
                I = std::stoul(from);
                J = std::stoul(to);
            }
            catch (const std::exception &) {
                throw InvalidInput("behavior table keys and values are decimal bit masks");
            }
            if (I > full_index_set(k) || J > full_index_set(k))
                throw InvalidInput("behavior table mask out of range");
            b.table[I] = J;
            seen[I] = true;
        }
        for (size_t I = 0 ; I < seen.size() ; ++I)
            if (! seen[I])
                throw InvalidInput("behavior table misses " + std::to_string(I));
        return b;
    }

    auto json_of(const FragmentMap & fm) -> Json
    {
        Json entries = Json::array();
        for (auto & [from, to] : fm.entries())
            entries.push_back(Json::array({json_of(from), json_of(to)}));
        return Json{{"k", fm.k()}, {"entries", entries}};
    }

    auto fragment_map_from_json(const Json & j) -> FragmentMap
    {
        int k = field<int>(j, "k");
        if (! j.contains("entries") || ! j["entries"].is_array())
            throw InvalidInput("missing field 'entries'");
        vector<std::pair<OrderedKTuple, OrderedKTuple>> entries;
        for (auto & e : j["entries"]) {
            if (! e.is_array() || e.size() != 2)
                throw InvalidInput("each entry is [tuple, image]");
            entries.emplace_back(tuple_from_json(e[0]), tuple_from_json(e[1]));
        }
        return FragmentMap(k, std::move(entries));
    }

    auto json_of(const LemmaCheck & c) -> Json
    {
        Json j;
        j["name"] = c.name;
        j["applicable"] = c.applicable;
        j["verdict"] = ! c.applicable ? "skipped" : c.pass ? "pass" : "fail";
        j["checked"] = c.checked;
        if (c.counterexample)
            j["counterexample"] = Json::array({json_of(c.counterexample->first), json_of(c.counterexample->second)});
        if (! c.note.empty())
            j["note"] = c.note;
        return j;
    }

    auto json_of(const PairLemmaReport & r) -> Json
    {
        Json j;
        j["verdict"] = r.pass() ? "pass" : "fail";
        j["canonical"] = r.canonical;
        if (r.behavior)
            j["behavior"] = json_of(*r.behavior);
        else
            j["behavior"] = nullptr;
        Json checks = Json::array();
        for (auto & c : r.checks)
            checks.push_back(json_of(c));
        j["checks"] = checks;
        return j;
    }

    auto json_of(const DichotomyReport & r) -> Json
    {
        Json j;
        j["k"] = r.k;
        j["verdict"] = r.pass() ? "pass" : "fail";
        j["tables"] = r.tables;
        j["retained"] = r.retained;
        j["permutational"] = r.permutational;
        j["small_image"] = r.small_image;
        j["chains"] = r.chains;
        j["chain_failures"] = r.chain_failures;
        j["permutational_flagged"] = r.permutational_flagged;
        j["violations"] = r.violations;
        if (r.first_violation)
            j["first_violation"] = json_of(*r.first_violation);
        return j;
    }

    auto json_of(const ProjectionReport & r) -> Json
    {
        Json ops = Json::array();
        for (auto f : r.preserving)
            ops.push_back(Json{apply_op(f, 0, 0), apply_op(f, 0, 1), apply_op(f, 1, 0), apply_op(f, 1, 1)});
        return Json{{"mode", "projection"}, {"verdict", r.only_projections() ? "pass" : "fail"},
            {"candidates", r.candidates}, {"preserving", ops}};
    }

    auto json_of(const PolySearchReport & r, bool stats) -> Json
    {
        Json j;
        j["mode"] = "full";
        j["observation"] = r.binary_witness ? "an essentially binary polymorphism exists" : "no essentially binary polymorphism found";
        j["vertices"] = r.vertices;
        j["found"] = r.found;
        j["essentially_unary"] = r.essentially_unary;
        if (r.binary_witness)
            j["witness"] = *r.binary_witness;
        else
            j["witness"] = nullptr;
        if (stats)
            j["stats"] = Json{{"nodes", r.nodes}};
        return j;
    }
}
