#pragma once

// JSON wire formats.
//
// Schedule:
//   {"length": <int>, "variant": "plain"|"measured_target",
//    "steps": [{"moves": [{"op": "pebble"|"unpebble", "i": <int>}...],
//               "ghosts": [<int>...]}...]}
//
// Weight profile:
//   {"default_site_weight": <rat>,
//    "transient": [{"mod": <int>, "residue": <int>, "weight": <rat>}...]}
// where rationals are "p/q" strings (bare integers are accepted).
//
// Site indices are 1-based; the dummy site 0 is never serialized.

#include <charconv>
#include <set>
#include <string>

#include <json.hpp>

#include "pebbling/core.hpp"

namespace pebbling {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Rat parse_rat(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat{j.get<long long>()};
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        long long p = 0, q = 1;
        auto num = [&](const std::string& part, long long& out) {
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
            if (ec != std::errc{} || ptr != part.data() + part.size())
                throw ParseError(where + ": bad rational '" + s + "'");
        };
        if (slash == std::string::npos) {
            num(s, p);
        } else {
            num(s.substr(0, slash), p);
            num(s.substr(slash + 1), q);
        }
        if (q <= 0) throw ParseError(where + ": rational denominator must be positive");
        return Rat{p, q};
    }
    throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

inline std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace detail

inline std::string serialize(const Schedule& s) {
    nlohmann::json j;
    j["length"] = s.length;
    j["variant"] = s.variant == Variant::plain ? "plain" : "measured_target";
    j["steps"] = nlohmann::json::array();
    for (const TimeStep& step : s.steps) {
        nlohmann::json js;
        js["moves"] = nlohmann::json::array();
        for (const Move& m : step.moves) {
            js["moves"].push_back(
                {{"op", m.kind == MoveKind::pebble ? "pebble" : "unpebble"}, {"i", m.index}});
        }
        js["ghosts"] = step.ghosts;
        j["steps"].push_back(std::move(js));
    }
    return j.dump();
}

inline Schedule parse_schedule(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("schedule: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("schedule: top level must be an object");
    if (!j.contains("length") || !j["length"].is_number_integer())
        throw ParseError("schedule: missing integer field 'length'");
    Schedule s;
    s.length = j["length"].get<int>();
    if (s.length < 1) throw ParseError("schedule: length must be >= 1");

    const std::string variant = j.value("variant", std::string("plain"));
    if (variant == "plain") {
        s.variant = Variant::plain;
    } else if (variant == "measured_target") {
        s.variant = Variant::measured_target;
    } else {
        throw ParseError("schedule: unknown variant '" + variant + "'");
    }

    if (!j.contains("steps") || !j["steps"].is_array())
        throw ParseError("schedule: missing array field 'steps'");
    int step_no = 0;
    for (const auto& js : j["steps"]) {
        TimeStep step;
        const std::string at = "schedule: step " + std::to_string(step_no);
        if (!js.is_object() || !js.contains("moves") || !js["moves"].is_array())
            throw ParseError(at + ": missing array field 'moves'");
        std::set<int> seen;
        for (const auto& jm : js["moves"]) {
            if (!jm.is_object() || !jm.contains("op") || !jm.contains("i"))
                throw ParseError(at + ": move needs 'op' and 'i'");
            const std::string op = jm["op"].get<std::string>();
            Move m;
            if (op == "pebble") {
                m.kind = MoveKind::pebble;
            } else if (op == "unpebble") {
                m.kind = MoveKind::unpebble;
            } else {
                throw ParseError(at + ": unknown op '" + op + "'");
            }
            if (!jm["i"].is_number_integer()) throw ParseError(at + ": move index must be an integer");
            m.index = jm["i"].get<int>();
            if (m.index < 1 || m.index > s.length)
                throw ParseError(at + ": move index " + std::to_string(m.index) + " out of [1, length]");
            if (!seen.insert(m.index).second)
                throw ParseError(at + ": duplicate move index " + std::to_string(m.index));
            step.moves.push_back(m);
        }
        if (step.moves.empty()) throw ParseError(at + ": ghost-only steps are not allowed");
        if (js.contains("ghosts")) {
            if (!js["ghosts"].is_array()) throw ParseError(at + ": 'ghosts' must be an array");
            std::set<int> gseen;
            for (const auto& jg : js["ghosts"]) {
                if (!jg.is_number_integer()) throw ParseError(at + ": ghost index must be an integer");
                const int g = jg.get<int>();
                if (g < 1 || g > s.length)
                    throw ParseError(at + ": ghost index " + std::to_string(g) + " out of [1, length]");
                if (!gseen.insert(g).second)
                    throw ParseError(at + ": duplicate ghost index " + std::to_string(g));
                step.ghosts.push_back(g);
            }
        }
        s.steps.push_back(std::move(step));
        ++step_no;
    }
    return s;
}

inline std::string serialize(const WeightProfile& w) {
    nlohmann::json j;
    j["default_site_weight"] = detail::rat_to_string(w.default_site_weight);
    j["transient"] = nlohmann::json::array();
    for (const auto& r : w.transient_rules) {
        j["transient"].push_back({{"mod", r.mod},
                                  {"residue", r.residue},
                                  {"weight", detail::rat_to_string(r.weight)}});
    }
    return j.dump();
}

inline WeightProfile parse_weights(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("weights: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("weights: top level must be an object");
    WeightProfile w;
    if (j.contains("default_site_weight"))
        w.default_site_weight = detail::parse_rat(j["default_site_weight"], "weights");
    if (w.default_site_weight < Rat{0}) throw ParseError("weights: site weight must be >= 0");
    if (j.contains("transient")) {
        if (!j["transient"].is_array()) throw ParseError("weights: 'transient' must be an array");
        for (const auto& jr : j["transient"]) {
            WeightProfile::TransientRule r;
            if (!jr.contains("mod") || !jr.contains("residue") || !jr.contains("weight"))
                throw ParseError("weights: transient rule needs 'mod', 'residue', 'weight'");
            r.mod = jr["mod"].get<int>();
            r.residue = jr["residue"].get<int>();
            r.weight = detail::parse_rat(jr["weight"], "weights");
            if (r.mod <= 0) throw ParseError("weights: transient rule 'mod' must be positive");
            if (r.residue < 0 || r.residue >= r.mod)
                throw ParseError("weights: transient rule residue out of [0, mod)");
            if (r.weight < Rat{0}) throw ParseError("weights: transient weight must be >= 0");
            w.transient_rules.push_back(r);
        }
    }
    return w;
}

}  // namespace pebbling
