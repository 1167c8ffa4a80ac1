#pragma once

/**
 * @file report.hpp
 * @brief JSON Lines records for check reports and identity trials.
 */

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "congruence.hpp"
#include "identity.hpp"

namespace qcongruence {

using Json = nlohmann::ordered_json;

struct RecordContext {
    std::string command;
    std::uint64_t seed = 0;
    bool timing = false;
};

inline Json case_json(const TheoremCase& c) {
    return Json{{"d", c.d}, {"r", c.r}, {"n", c.n}, {"variant", to_string(c.variant)},
                {"trunc", to_string(c.truncation)}};
}

inline Json valuation_json(const Valuation& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

/// One record per check. `fields` supplies the case object for checks that
/// are not tied to a theorem case.
inline Json report_json(const CheckReport& rep, const RecordContext& ctx, const Json& fields = Json::object()) {
    Json j;
    j["command"] = ctx.command;
    j["case"] = rep.theorem_case ? case_json(*rep.theorem_case) : fields;
    j["description"] = rep.description;
    Json mod = Json::object();
    for (auto [m, k] : rep.modulus.parts) mod[std::to_string(m)] = k;
    j["modulus"] = mod;
    Json ach = Json::object();
    for (const auto& [m, v] : rep.valuation.achieved) ach[std::to_string(m)] = valuation_json(v);
    j["achieved"] = ach;
    j["status"] = to_string(rep.status);
    j["term_count"] = rep.term_count;
    if (ctx.timing) j["elapsed_ms"] = rep.elapsed_ms;
    j["seed"] = ctx.seed;
    if (!rep.error.empty()) j["error"] = rep.error;
    return j;
}

inline Json trial_json(const IdentityTrial& t, const IdentityConfig& cfg) {
    Json j;
    j["command"] = std::string("identity ") + to_string(cfg.kind);
    j["trial"] = t.index;
    Json params = Json::object();
    for (const auto& [k, v] : t.params) params[k] = v.size() == 1 ? Json(v.front()) : Json(v);
    j["params"] = params;
    j["status"] = t.holds ? "PASS" : "FAIL";
    j["term_count"] = t.terms;
    j["resamples"] = t.resamples;
    j["seed"] = cfg.seed;
    return j;
}

}  // namespace qcongruence
