#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vbench2/aggregation.hpp"
#include "vbench2/appearance.hpp"
#include "vbench2/backend.hpp"
#include "vbench2/constants.hpp"
#include "vbench2/dimensions.hpp"
#include "vbench2/engines.hpp"
#include "vbench2/errors.hpp"
#include "vbench2/geometry.hpp"
#include "vbench2/suite.hpp"

namespace vbench2 {

// ---------------------------------------------------------------------------
// Bindings
// ---------------------------------------------------------------------------

enum class PerVideoScore { binary, fraction, set_level };

constexpr std::string_view to_string(PerVideoScore s) {
    switch (s) {
        case PerVideoScore::binary: return "binary";
        case PerVideoScore::fraction: return "fraction";
        case PerVideoScore::set_level: return "set_level";
    }
    return "?";
}

/// One row of the routing table: dimension -> scheme, payload schema, score
/// type and the constants the scorer runs under.
struct DimensionBinding {
    DimensionId dimension = DimensionId::anatomy;
    EvalScheme scheme = EvalScheme::multi_qa;
    PayloadKind payload_schema = PayloadKind::empty;
    PerVideoScore score_type = PerVideoScore::binary;
    Constants constants;

    /// Videos one scoring unit consumes: the whole sample set for the
    /// set-level diversity binding, one video otherwise.
    int video_cardinality(const PromptSpec& prompt) const {
        if (scheme == EvalScheme::diversity_set)
            return std::get<DiversityPayload>(prompt.payload).sample_count;
        return 1;
    }
};

constexpr PerVideoScore score_type_of(DimensionId d) {
    switch (d) {
        case DimensionId::anatomy:
        case DimensionId::identity:
        case DimensionId::composition:
        case DimensionId::complex_landscape:
        case DimensionId::complex_plot:
        case DimensionId::multiview_consistency:
        case DimensionId::instance_preservation:
            return PerVideoScore::fraction;
        case DimensionId::diversity:
            return PerVideoScore::set_level;
        default:
            return PerVideoScore::binary;
    }
}

/// The canonical 18 bindings.
inline std::vector<DimensionBinding> default_registry(const Constants& consts = {}) {
    std::vector<DimensionBinding> bindings;
    bindings.reserve(kDimensionCount);
    for (DimensionId d : all_dimensions()) {
        DimensionBinding b;
        b.dimension = d;
        b.scheme = scheme_of(d);
        b.payload_schema = payload_kind_of(d);
        b.score_type = score_type_of(d);
        b.constants = consts;
        bindings.push_back(b);
    }
    return bindings;
}

inline const DimensionBinding& binding_for(const std::vector<DimensionBinding>& registry,
                                           DimensionId d) {
    for (const auto& b : registry)
        if (b.dimension == d) return b;
    throw SchemaError("no binding for dimension '" + std::string(to_string(d)) + "'");
}

/// Audit dump of the full routing table plus constants.
inline nlohmann::json registry_to_json(const std::vector<DimensionBinding>& registry) {
    nlohmann::json bindings = nlohmann::json::array();
    for (const auto& b : registry) {
        nlohmann::json schemes = nlohmann::json::array();
        for (EvalScheme s : schemes_exercised_by(b.dimension))
            schemes.push_back(std::string(to_string(s)));
        bindings.push_back({{"dimension", std::string(to_string(b.dimension))},
                            {"category", std::string(to_string(category_of(b.dimension)))},
                            {"scheme", std::string(to_string(b.scheme))},
                            {"schemes_exercised", schemes},
                            {"payload_schema", std::string(to_string(b.payload_schema))},
                            {"score_type", std::string(to_string(b.score_type))}});
    }
    return {{"bindings", bindings},
            {"constants", to_json(registry.empty() ? Constants{} : registry.front().constants)}};
}

// ---------------------------------------------------------------------------
// Evidence serialization
// ---------------------------------------------------------------------------

namespace evidence {

inline nlohmann::json verdict(const Verdict& v) {
    return {{"value", v.value ? "yes" : "no"}, {"raw", v.raw_text}};
}

inline nlohmann::json from(const QaOutcome& o) {
    nlohmann::json answers = nlohmann::json::array();
    for (const auto& v : o.answers) answers.push_back(verdict(v));
    nlohmann::json j{{"mode", std::string(to_string(o.mode))}, {"answers", answers}};
    if (o.prefilter) {
        j["prefilter"] = verdict(*o.prefilter);
        j["prefilter_failed"] = o.prefilter_failed();
    }
    return j;
}

inline nlohmann::json from(const SequentialOutcome& o) {
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : o.verdicts) verdicts.push_back(verdict(v));
    return {{"caption_items", o.caption_items},
            {"matched_prefix_len", o.matched_prefix_len},
            {"protocol_failure", o.protocol_failure},
            {"verdicts", verdicts}};
}

inline nlohmann::json from(const OrderedActionOutcome& o) {
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : o.verdicts) verdicts.push_back(verdict(v));
    return {{"caption", o.caption},
            {"caption_items", o.caption_items},
            {"protocol_failure", o.protocol_failure},
            {"verdicts", verdicts}};
}

inline nlohmann::json from(const InteractionOutcome& o) {
    nlohmann::json j{{"dense_caption", o.dense_caption},
                     {"action_caption", o.action_caption},
                     {"person_count", verdict(o.person_count_verdict)}};
    if (o.alignment_verdict) j["alignment"] = verdict(*o.alignment_verdict);
    return j;
}

inline nlohmann::json from(const AnatomyResult& r) {
    return {{"c_normal", r.counts.c_normal},
            {"c_abnormal", r.counts.c_abnormal},
            {"instances", r.counts.instances.size()}};
}

inline nlohmann::json from(const IdentityResult& r) {
    int valid = 0, multi = 0, none = 0;
    for (const auto& e : r.trace.entries) {
        if (e.status == IdentityTrace::Status::valid) ++valid;
        else if (e.status == IdentityTrace::Status::skipped_multi) ++multi;
        else ++none;
    }
    return {{"valid_frames", valid}, {"skipped_multi", multi}, {"skipped_none", none}};
}

inline nlohmann::json from(const MultiviewResult& r) {
    return {{"f_score", r.f_score},
            {"mean_matches", r.mean_matches},
            {"interval", r.interval},
            {"pair_count", r.pair_count}};
}

inline nlohmann::json from(const DiversityResult& r) {
    return {{"s_diff", r.s_diff},
            {"c_diff", r.c_diff},
            {"raw", r.raw},
            {"sample_count", r.sample_count}};
}

inline nlohmann::json from(const InstancePreservationResult& r) {
    return {{"correct_frames", r.correct_frames},
            {"total_frames", r.total_frames},
            {"per_frame_counts", r.per_frame_counts}};
}

} // namespace evidence

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Routes one prompt and its video(s) to the bound scorer and wraps the
/// result plus its evidence trail into a ScoreRecord. `model` and `sample`
/// are stamped through for the record identity.
inline ScoreRecord score_video(const DimensionBinding& binding, const PromptSpec& prompt,
                               const std::vector<VideoHandle>& videos, BackendSuite& backend,
                               const std::string& model = {}, int sample = 0) {
    if (prompt.dimension != binding.dimension)
        throw PreconditionError("prompt dimension '" + std::string(to_string(prompt.dimension)) +
                                "' does not match binding '" +
                                std::string(to_string(binding.dimension)) + "'");
    const int want = binding.video_cardinality(prompt);
    if (static_cast<int>(videos.size()) != want)
        throw PreconditionError("dimension '" + std::string(to_string(binding.dimension)) +
                                "' expects " + std::to_string(want) + " video(s), got " +
                                std::to_string(videos.size()));

    ScoreRecord record;
    record.prompt_id = prompt.id;
    record.dimension = prompt.dimension;
    record.model = model;
    record.sample = sample;

    const Constants& consts = binding.constants;
    try {
        switch (binding.scheme) {
            case EvalScheme::multi_qa: {
                QaOutcome qa;
                if (prompt.dimension == DimensionId::clothes) {
                    qa = clothes_score(videos[0], backend);
                } else {
                    const auto& payload = std::get<MultiQaPayload>(prompt.payload);
                    qa = run_multi_qa(videos[0], payload.questions, payload.mode,
                                      payload.prefilter, backend);
                }
                record.outcome = ScoreOutcome::scored(qa.score);
                record.evidence = evidence::from(qa);
                break;
            }
            case EvalScheme::sequential_alignment: {
                const auto& payload = std::get<AlignmentPayload>(prompt.payload);
                auto seq = run_sequential_alignment(videos[0], payload.segments,
                                                    prompt_asset(payload.vlm_prompt), backend,
                                                    prompt_asset(payload.llm_prompt));
                record.outcome = ScoreOutcome::scored(seq.score);
                record.evidence = evidence::from(seq);
                break;
            }
            case EvalScheme::ordered_action: {
                const auto& payload = std::get<OrderedActionPayload>(prompt.payload);
                auto ord =
                    run_ordered_action_match(videos[0], payload.action_a, payload.action_b, backend);
                record.outcome = ScoreOutcome::scored(ord.score);
                record.evidence = evidence::from(ord);
                break;
            }
            case EvalScheme::interaction_check: {
                auto inter = run_interaction_check(videos[0], prompt.text, backend);
                record.outcome = ScoreOutcome::scored(inter.score);
                record.evidence = evidence::from(inter);
                break;
            }
            case EvalScheme::camera_track: {
                const auto& payload = std::get<CameraPayload>(prompt.payload);
                TrackGrid tracks = backend.track_points(videos[0], consts.grid_size);
                auto cam = classify_camera_motion(tracks, payload.target, consts);
                record.outcome = ScoreOutcome::scored(cam.score);
                record.evidence = {{"target", std::string(to_string(payload.target))}};
                if (!cam.note.empty()) record.evidence["note"] = cam.note;
                break;
            }
            case EvalScheme::multiview_geometry: {
                auto mv = multiview_consistency(videos[0], backend, consts);
                if (mv.discarded)
                    record.outcome = ScoreOutcome::discarded("flow score " +
                                                             std::to_string(mv.f_score) +
                                                             " below discard threshold");
                else
                    record.outcome = ScoreOutcome::scored(mv.score);
                record.evidence = evidence::from(mv);
                break;
            }
            case EvalScheme::identity_track: {
                auto id = identity_score(videos[0], backend);
                record.outcome = id.scorable ? ScoreOutcome::scored(id.score)
                                             : ScoreOutcome::unscorable(id.reason);
                record.evidence = evidence::from(id);
                break;
            }
            case EvalScheme::anatomy_detect: {
                auto an = anatomy_score(videos[0], backend, consts);
                record.outcome = an.scorable ? ScoreOutcome::scored(an.score)
                                             : ScoreOutcome::unscorable(an.reason);
                record.evidence = evidence::from(an);
                break;
            }
            case EvalScheme::diversity_set: {
                auto div = diversity_score(videos, backend, consts);
                record.outcome = ScoreOutcome::scored(div.normalized);
                record.evidence = evidence::from(div);
                break;
            }
            case EvalScheme::instance_count: {
                const auto& payload = std::get<InstancePayload>(prompt.payload);
                auto inst = instance_preservation_score(videos[0], payload.expected_count,
                                                        payload.vocabulary, backend, consts);
                record.outcome = ScoreOutcome::scored(inst.score);
                record.evidence = evidence::from(inst);
                break;
            }
            case EvalScheme::text_alignment:
                throw PreconditionError(
                    "text_alignment is an engine primitive; no dimension dispatches it directly");
        }
    } catch (const BackendError& e) {
        throw BackendError("[" + std::string(to_string(binding.dimension)) + "/" + prompt.id +
                           "] " + e.what());
    }
    return record;
}

} // namespace vbench2
