#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "vbench2/errors.hpp"

namespace vbench2 {

/// Scoring constants. Values with a source in the method description keep
/// those defaults; tau_move/tau_still are harness choices (fractions of the
/// frame diagonal) exposed here so they can be overridden from the run
/// config.
struct Constants {
    // geometric scorers
    double s_fix = 40.0;             // default keypoint-matching interval
    double flow_discard = 5.0;       // below this flow score the video is discarded
    double flow_interval_cap = 30.0; // flow cap when computing the interval
    double flow_score_cap = 10.0;    // flow cap when computing the final score
    double match_cap = 750.0;        // largest valid matchable point count
    int grid_size = 10;              // tracking grid points per axis
    int orbit_window = 20;           // orbit judgment every N frames
    double tau_move = 0.02;          // significant displacement, fraction of frame diagonal
    double tau_still = 0.01;         // negligible displacement, fraction of frame diagonal

    // appearance scorers
    double detect_human = 0.1;       // human detection confidence threshold
    double body = 0.45;              // body anomaly threshold (strictly above = abnormal)
    double face = 0.30;              // face anomaly threshold
    double hand = 0.32;              // hand anomaly threshold
    double detect_instance = 0.28;   // instance-preservation detection threshold
    double lambda = 1000.0;          // style weight in the diversity score
    double diversity_cap = 17.712;   // raw diversity score mapped to 1.0
    int diversity_frames = 8;        // frame slots sampled per video
    int diversity_samples = 20;      // videos per diversity prompt

    bool operator==(const Constants&) const = default;
};

inline nlohmann::json to_json(const Constants& c) {
    return {
        {"s_fix", c.s_fix},
        {"flow_discard", c.flow_discard},
        {"flow_interval_cap", c.flow_interval_cap},
        {"flow_score_cap", c.flow_score_cap},
        {"match_cap", c.match_cap},
        {"grid_size", c.grid_size},
        {"orbit_window", c.orbit_window},
        {"tau_move", c.tau_move},
        {"tau_still", c.tau_still},
        {"detect_human", c.detect_human},
        {"body", c.body},
        {"face", c.face},
        {"hand", c.hand},
        {"detect_instance", c.detect_instance},
        {"lambda", c.lambda},
        {"diversity_cap", c.diversity_cap},
        {"diversity_frames", c.diversity_frames},
        {"diversity_samples", c.diversity_samples},
    };
}

/// Applies overrides onto defaults. Unknown keys are rejected so a typo in a
/// run config cannot silently fall back to a default.
inline Constants constants_with_overrides(const nlohmann::json& overrides,
                                          Constants base = Constants{}) {
    if (overrides.is_null()) return base;
    if (!overrides.is_object()) throw SchemaError("constants overrides must be an object");
    for (const auto& [key, value] : overrides.items()) {
        if (key == "s_fix") base.s_fix = value.get<double>();
        else if (key == "flow_discard") base.flow_discard = value.get<double>();
        else if (key == "flow_interval_cap") base.flow_interval_cap = value.get<double>();
        else if (key == "flow_score_cap") base.flow_score_cap = value.get<double>();
        else if (key == "match_cap") base.match_cap = value.get<double>();
        else if (key == "grid_size") base.grid_size = value.get<int>();
        else if (key == "orbit_window") base.orbit_window = value.get<int>();
        else if (key == "tau_move") base.tau_move = value.get<double>();
        else if (key == "tau_still") base.tau_still = value.get<double>();
        else if (key == "detect_human") base.detect_human = value.get<double>();
        else if (key == "body") base.body = value.get<double>();
        else if (key == "face") base.face = value.get<double>();
        else if (key == "hand") base.hand = value.get<double>();
        else if (key == "detect_instance") base.detect_instance = value.get<double>();
        else if (key == "lambda") base.lambda = value.get<double>();
        else if (key == "diversity_cap") base.diversity_cap = value.get<double>();
        else if (key == "diversity_frames") base.diversity_frames = value.get<int>();
        else if (key == "diversity_samples") base.diversity_samples = value.get<int>();
        else throw SchemaError("unknown constants key: '" + key + "'");
    }
    if (base.grid_size < 2) throw SchemaError("grid_size must be >= 2");
    if (base.orbit_window < 1) throw SchemaError("orbit_window must be >= 1");
    return base;
}

/// FNV-1a over the canonical JSON dump; stored in report metadata so a run
/// can be replayed under the same constants.
inline std::string constants_hash(const Constants& c) {
    const std::string dump = to_json(c).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace vbench2
