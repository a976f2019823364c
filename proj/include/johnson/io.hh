/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef JOHNSON_IO_HH
#define JOHNSON_IO_HH 1

#include <johnson/canonical.hh>
#include <johnson/eval.hh>
#include <johnson/fragment.hh>
#include <johnson/lemma_suite.hh>
#include <johnson/nae.hh>
#include <johnson/ordered.hh>
#include <johnson/poly.hh>

#include <json.hpp>

#include <string>

namespace johnson
{
    /// Keys keep insertion order, so output bytes depend only on content.
    using Json = nlohmann::ordered_json;

    /// Reads a whole file. Throws InvalidInput if it cannot be opened.
    auto read_file(const std::string & path) -> std::string;

    /// Throws InvalidInput on malformed JSON.
    auto parse_json(const std::string & text) -> Json;

    auto json_of(KSubset v) -> Json;
    auto json_of(const JohnsonFragment & frag) -> Json;

    /// {"n", "k", optional "relations": [symbols]}; builds the fragment.
    auto fragment_from_json(const Json & j) -> JohnsonFragment;

    auto json_of(const CSPInstance & inst) -> Json;
    auto csp_from_json(const Json & j) -> CSPInstance;

    auto json_of(const NAEInstance & inst) -> Json;

    /// Timing and search counters go under "stats", and only when stats is set.
    auto json_of(const DefCheckReport & report, bool stats) -> Json;
    auto json_of(const VerificationReport & report, bool stats) -> Json;
    auto json_of(const EquisatReport & report, bool stats) -> Json;

    auto json_of(const PointAssignment & a) -> Json;

    auto json_of(const OrderedKTuple & t) -> Json;
    auto tuple_from_json(const Json & j) -> OrderedKTuple;

    /// {"k", "elements", "less": [[a, r, b, s], ..], "equal": [..]}, elements
    /// from 0 and indices from 1. On load, a comparison listed in neither
    /// direction makes the load fail.
    auto json_of(const OrderedStructure & s) -> Json;
    auto structure_from_json(const Json & j) -> OrderedStructure;

    auto json_of(const AxiomViolation & v) -> Json;
    auto json_of(const SweepReport & report, bool stats) -> Json;

    /// {"k", "table": {"I-bitmask": "J-bitmask", ..}} with decimal masks.
    auto json_of(const BehaviorMap & b) -> Json;
    auto behavior_from_json(const Json & j) -> BehaviorMap;

    /// {"k", "entries": [[[coords], [coords]], ..]}, coordinates as strings
    /// "p" or "p/q".
    auto json_of(const FragmentMap & fm) -> Json;
    auto fragment_map_from_json(const Json & j) -> FragmentMap;

    auto json_of(const LemmaCheck & c) -> Json;
    auto json_of(const PairLemmaReport & r) -> Json;
    auto json_of(const DichotomyReport & r) -> Json;
    auto json_of(const ProjectionReport & r) -> Json;
    auto json_of(const PolySearchReport & r, bool stats) -> Json;
}

#endif
