#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vbench2/dimensions.hpp"
#include "vbench2/errors.hpp"
#include "vbench2/prompts.hpp"

namespace vbench2 {

// ---------------------------------------------------------------------------
// Prompt payloads
// ---------------------------------------------------------------------------

enum class QaMode { all, mean };

constexpr std::string_view to_string(QaMode m) {
    return m == QaMode::all ? "all" : "mean";
}

inline QaMode qa_mode_from_string(std::string_view s) {
    if (s == "all") return QaMode::all;
    if (s == "mean") return QaMode::mean;
    throw SchemaError("unknown qa mode: '" + std::string(s) + "'");
}

struct MultiQaPayload {
    std::vector<std::string> questions;
    QaMode mode = QaMode::all;
    std::optional<std::string> prefilter;
    bool operator==(const MultiQaPayload&) const = default;
};

/// Reference segments plus the prompt-asset ids of the captioner and judge
/// system prompts.
struct AlignmentPayload {
    std::vector<std::string> segments;
    std::string vlm_prompt;
    std::string llm_prompt = "alignment_judge";
    bool operator==(const AlignmentPayload&) const = default;
};

struct CameraPayload {
    MotionLabel target = MotionLabel::static_shot;
    bool operator==(const CameraPayload&) const = default;
};

struct InstancePayload {
    int expected_count = 1;
    std::vector<std::string> vocabulary;
    bool operator==(const InstancePayload&) const = default;
};

struct DiversityPayload {
    int sample_count = 20;
    bool operator==(const DiversityPayload&) const = default;
};

struct OrderedActionPayload {
    std::string action_a;
    std::string action_b;
    bool operator==(const OrderedActionPayload&) const = default;
};

/// Dimensions whose pipeline needs nothing beyond the prompt text.
struct EmptyPayload {
    bool operator==(const EmptyPayload&) const = default;
};

using Payload = std::variant<MultiQaPayload, AlignmentPayload, CameraPayload, InstancePayload,
                             DiversityPayload, OrderedActionPayload, EmptyPayload>;

enum class PayloadKind { multi_qa, alignment, camera, instance, diversity, ordered, empty };

constexpr std::string_view to_string(PayloadKind k) {
    switch (k) {
        case PayloadKind::multi_qa: return "multi_qa";
        case PayloadKind::alignment: return "alignment";
        case PayloadKind::camera: return "camera";
        case PayloadKind::instance: return "instance";
        case PayloadKind::diversity: return "diversity";
        case PayloadKind::ordered: return "ordered";
        case PayloadKind::empty: return "none";
    }
    return "?";
}

constexpr PayloadKind payload_kind_of(DimensionId d) {
    switch (d) {
        case DimensionId::composition:
        case DimensionId::dynamic_spatial:
        case DimensionId::dynamic_attribute:
        case DimensionId::mechanics:
        case DimensionId::material:
        case DimensionId::thermotics:
        case DimensionId::motion_rationality:
            return PayloadKind::multi_qa;
        case DimensionId::complex_landscape:
        case DimensionId::complex_plot:
            return PayloadKind::alignment;
        case DimensionId::camera_motion:
            return PayloadKind::camera;
        case DimensionId::instance_preservation:
            return PayloadKind::instance;
        case DimensionId::diversity:
            return PayloadKind::diversity;
        case DimensionId::motion_order:
            return PayloadKind::ordered;
        case DimensionId::anatomy:
        case DimensionId::clothes:
        case DimensionId::identity:
        case DimensionId::human_interaction:
        case DimensionId::multiview_consistency:
            return PayloadKind::empty;
    }
    return PayloadKind::empty;
}

inline PayloadKind kind_of(const Payload& p) {
    return std::visit(
        [](const auto& v) -> PayloadKind {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MultiQaPayload>) return PayloadKind::multi_qa;
            else if constexpr (std::is_same_v<T, AlignmentPayload>) return PayloadKind::alignment;
            else if constexpr (std::is_same_v<T, CameraPayload>) return PayloadKind::camera;
            else if constexpr (std::is_same_v<T, InstancePayload>) return PayloadKind::instance;
            else if constexpr (std::is_same_v<T, DiversityPayload>) return PayloadKind::diversity;
            else if constexpr (std::is_same_v<T, OrderedActionPayload>) return PayloadKind::ordered;
            else return PayloadKind::empty;
        },
        p);
}

// ---------------------------------------------------------------------------
// PromptSpec / SuiteManifest
// ---------------------------------------------------------------------------

/// One test case of the suite.
struct PromptSpec {
    std::string id;
    DimensionId dimension = DimensionId::anatomy;
    std::string text;
    Payload payload = EmptyPayload{};
    bool operator==(const PromptSpec&) const = default;
};

struct SuiteManifest {
    std::string version;
    std::vector<PromptSpec> prompts;

    std::map<DimensionId, int> dimension_counts() const {
        std::map<DimensionId, int> counts;
        for (const auto& p : prompts) counts[p.dimension]++;
        return counts;
    }

    bool operator==(const SuiteManifest&) const = default;
};

/// All prompts of `dim`, in manifest order.
inline std::vector<PromptSpec> prompts_for_dimension(const SuiteManifest& m, DimensionId dim) {
    std::vector<PromptSpec> out;
    for (const auto& p : m.prompts)
        if (p.dimension == dim) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------
// JSON codec
// ---------------------------------------------------------------------------

inline nlohmann::json payload_to_json(const Payload& p) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MultiQaPayload>) {
                nlohmann::json j{{"questions", v.questions},
                                 {"mode", std::string(to_string(v.mode))}};
                if (v.prefilter) j["prefilter"] = *v.prefilter;
                return j;
            } else if constexpr (std::is_same_v<T, AlignmentPayload>) {
                return {{"segments", v.segments},
                        {"vlm_prompt", v.vlm_prompt},
                        {"llm_prompt", v.llm_prompt}};
            } else if constexpr (std::is_same_v<T, CameraPayload>) {
                return {{"target", std::string(to_string(v.target))}};
            } else if constexpr (std::is_same_v<T, InstancePayload>) {
                return {{"expected_count", v.expected_count}, {"vocabulary", v.vocabulary}};
            } else if constexpr (std::is_same_v<T, DiversityPayload>) {
                return {{"sample_count", v.sample_count}};
            } else if constexpr (std::is_same_v<T, OrderedActionPayload>) {
                return {{"action_a", v.action_a}, {"action_b", v.action_b}};
            } else {
                return nlohmann::json::object();
            }
        },
        p);
}

inline Payload payload_from_json(DimensionId dim, const nlohmann::json& j) {
    try {
        switch (payload_kind_of(dim)) {
            case PayloadKind::multi_qa: {
                MultiQaPayload p;
                p.questions = j.at("questions").get<std::vector<std::string>>();
                p.mode = qa_mode_from_string(j.at("mode").get<std::string>());
                if (j.contains("prefilter")) p.prefilter = j.at("prefilter").get<std::string>();
                return p;
            }
            case PayloadKind::alignment: {
                AlignmentPayload p;
                p.segments = j.at("segments").get<std::vector<std::string>>();
                p.vlm_prompt = j.at("vlm_prompt").get<std::string>();
                p.llm_prompt = j.value("llm_prompt", std::string("alignment_judge"));
                return p;
            }
            case PayloadKind::camera:
                return CameraPayload{motion_label_from_string(j.at("target").get<std::string>())};
            case PayloadKind::instance: {
                InstancePayload p;
                p.expected_count = j.at("expected_count").get<int>();
                p.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
                return p;
            }
            case PayloadKind::diversity:
                return DiversityPayload{j.value("sample_count", 20)};
            case PayloadKind::ordered: {
                OrderedActionPayload p;
                p.action_a = j.at("action_a").get<std::string>();
                p.action_b = j.at("action_b").get<std::string>();
                return p;
            }
            case PayloadKind::empty:
                return EmptyPayload{};
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("payload does not match the " + std::string(to_string(scheme_of(dim))) +
                          " scheme of dimension '" + std::string(to_string(dim)) +
                          "': " + e.what());
    }
    return EmptyPayload{};
}

inline nlohmann::json to_json(const SuiteManifest& m) {
    nlohmann::json prompts = nlohmann::json::array();
    for (const auto& p : m.prompts)
        prompts.push_back({{"id", p.id},
                           {"dimension", std::string(to_string(p.dimension))},
                           {"text", p.text},
                           {"payload", payload_to_json(p.payload)}});
    return {{"version", m.version}, {"prompts", prompts}};
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline int word_count(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    int n = 0;
    while (in >> tok) ++n;
    return n;
}

namespace detail {

inline void require(std::vector<std::string>& out, const PromptSpec& p, bool ok,
                    const std::string& rule) {
    if (!ok) out.push_back(p.id + ": " + rule);
}

} // namespace detail

/// Rule violations of one prompt; empty means the prompt satisfies every
/// PromptSpec invariant for its dimension.
inline std::vector<std::string> validate_prompt(const PromptSpec& p) {
    std::vector<std::string> v;
    using detail::require;

    require(v, p, !p.id.empty(), "prompt id must be nonempty");
    require(v, p, !p.text.empty(), "prompt text must be nonempty");
    require(v, p, kind_of(p.payload) == payload_kind_of(p.dimension),
            "payload shape does not match the dimension's scheme");
    if (kind_of(p.payload) != payload_kind_of(p.dimension)) return v;

    switch (p.dimension) {
        case DimensionId::dynamic_attribute: {
            const auto& qa = std::get<MultiQaPayload>(p.payload);
            require(v, p, qa.questions.size() == 3, "dynamic_attribute requires exactly 3 questions");
            require(v, p, qa.mode == QaMode::all, "dynamic_attribute requires mode=all");
            break;
        }
        case DimensionId::dynamic_spatial: {
            const auto& qa = std::get<MultiQaPayload>(p.payload);
            require(v, p, qa.questions.size() == 2, "dynamic_spatial requires exactly 2 questions");
            require(v, p, qa.mode == QaMode::all, "dynamic_spatial requires mode=all");
            break;
        }
        case DimensionId::motion_rationality: {
            const auto& qa = std::get<MultiQaPayload>(p.payload);
            require(v, p, !qa.questions.empty(), "motion_rationality requires at least 1 question");
            require(v, p, qa.mode == QaMode::all, "motion_rationality requires mode=all");
            break;
        }
        case DimensionId::composition: {
            const auto& qa = std::get<MultiQaPayload>(p.payload);
            require(v, p, !qa.questions.empty(), "composition requires at least 1 question");
            require(v, p, qa.mode == QaMode::mean, "composition requires mode=mean");
            require(v, p, qa.prefilter.has_value(),
                    "composition requires a single-creature prefilter question");
            break;
        }
        case DimensionId::mechanics:
        case DimensionId::material:
        case DimensionId::thermotics: {
            const auto& qa = std::get<MultiQaPayload>(p.payload);
            require(v, p, !qa.questions.empty(), "state-change dimensions require visual questions");
            require(v, p, qa.prefilter.has_value(),
                    "state-change dimensions require an initial-state prefilter question");
            break;
        }
        case DimensionId::complex_plot: {
            const auto& a = std::get<AlignmentPayload>(p.payload);
            require(v, p, a.segments.size() >= 4 && a.segments.size() <= 5,
                    "complex_plot requires 4-5 reference segments");
            require(v, p, word_count(p.text) >= 150, "complex_plot prompt text must be >=150 words");
            require(v, p, is_prompt_asset(a.vlm_prompt) && is_prompt_asset(a.llm_prompt),
                    "alignment payload must reference known prompt assets");
            break;
        }
        case DimensionId::complex_landscape: {
            const auto& a = std::get<AlignmentPayload>(p.payload);
            require(v, p, a.segments.size() == 5,
                    "complex_landscape requires exactly 5 reference segments");
            require(v, p, word_count(p.text) >= 150,
                    "complex_landscape prompt text must be >=150 words");
            require(v, p, is_prompt_asset(a.vlm_prompt) && is_prompt_asset(a.llm_prompt),
                    "alignment payload must reference known prompt assets");
            break;
        }
        case DimensionId::motion_order: {
            const auto& o = std::get<OrderedActionPayload>(p.payload);
            require(v, p, !o.action_a.empty() && !o.action_b.empty(),
                    "motion_order requires two nonempty reference actions");
            break;
        }
        case DimensionId::instance_preservation: {
            const auto& i = std::get<InstancePayload>(p.payload);
            require(v, p, i.expected_count >= 1, "expected_count must be >= 1");
            require(v, p, !i.vocabulary.empty(), "detection vocabulary must be nonempty");
            break;
        }
        case DimensionId::diversity: {
            const auto& d = std::get<DiversityPayload>(p.payload);
            require(v, p, d.sample_count >= 2, "diversity requires at least 2 samples");
            break;
        }
        default:
            break;
    }
    return v;
}

/// Every violation in the manifest, as "prompt-id: rule" strings. Violations
/// are data, not errors.
inline std::vector<std::string> validate_suite(const SuiteManifest& m) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& p : m.prompts) {
        if (!seen.insert(p.id).second) out.push_back(p.id + ": duplicate prompt id");
        auto v = validate_prompt(p);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

/// Structural parse of the manifest document. Throws SchemaError on unknown
/// dimensions, payload/scheme mismatches and duplicate ids.
inline SuiteManifest suite_from_json(const nlohmann::json& j) {
    SuiteManifest m;
    try {
        m.version = j.at("version").get<std::string>();
        for (const auto& jp : j.at("prompts")) {
            PromptSpec p;
            p.id = jp.at("id").get<std::string>();
            p.dimension = dimension_from_string(jp.at("dimension").get<std::string>());
            p.text = jp.at("text").get<std::string>();
            p.payload = payload_from_json(p.dimension, jp.value("payload", nlohmann::json::object()));
            m.prompts.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("manifest does not match the suite schema: ") + e.what());
    }
    std::set<std::string> seen;
    for (const auto& p : m.prompts)
        if (!seen.insert(p.id).second)
            throw SchemaError("duplicate prompt id: '" + p.id + "'");
    return m;
}

/// Loads and fully checks a manifest; rejects on the first violated
/// invariant.
inline SuiteManifest load_suite(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open suite manifest: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed manifest " + path + ": " + e.what());
    }
    SuiteManifest m = suite_from_json(j);
    auto violations = validate_suite(m);
    if (!violations.empty()) throw SchemaError("invalid suite: " + violations.front());
    return m;
}

} // namespace vbench2
