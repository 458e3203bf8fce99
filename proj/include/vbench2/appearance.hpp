#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vbench2/backend.hpp"
#include "vbench2/constants.hpp"
#include "vbench2/engines.hpp"
#include "vbench2/errors.hpp"
#include "vbench2/prompts.hpp"
#include "vbench2/video.hpp"

namespace vbench2 {

// ---------------------------------------------------------------------------
// Human anatomy
// ---------------------------------------------------------------------------

/// Per-instance anomaly flags and the normal/abnormal tally. An instance is
/// abnormal as soon as any of its three kind-scores exceeds its threshold
/// (strictly above).
struct AnatomyCounts {
    struct Instance {
        int frame = 0;
        Rect box;
        bool body_abnormal = false;
        bool face_abnormal = false;
        bool hand_abnormal = false;
        bool abnormal() const { return body_abnormal || face_abnormal || hand_abnormal; }
    };
    std::vector<Instance> instances;
    int c_normal = 0;
    int c_abnormal = 0;
};

struct AnatomyResult {
    bool scorable = false;
    std::string reason; // set when not scorable
    double score = 0.0; // c_normal / (c_normal + c_abnormal)
    AnatomyCounts counts;
};

/// Detects humans per frame, anomaly-scores each instance's body patch plus
/// any face/hand patches nested in it, and scores by the count formula over
/// all instances in all frames. Videos with no detected humans are an
/// unscorable outcome, not a zero.
inline AnatomyResult anatomy_score(const VideoHandle& video, BackendSuite& backend,
                                   const Constants& consts = {}) {
    if (video.frame_count < 1) throw PreconditionError("anatomy_score needs a decodable video");

    AnatomyResult result;
    const std::vector<std::string> human_vocab = {"human"};
    const std::vector<std::string> part_vocab = {"face", "hand"};

    for (int f = 0; f < video.frame_count; ++f) {
        FrameRef frame{&video, f};
        auto humans = backend.detect_objects(frame, human_vocab, consts.detect_human);
        std::erase_if(humans,
                      [&](const Detection& d) { return d.confidence < consts.detect_human; });
        if (humans.empty()) continue;

        auto parts = backend.detect_objects(frame, part_vocab, consts.detect_human);
        std::erase_if(parts,
                      [&](const Detection& d) { return d.confidence < consts.detect_human; });

        for (const auto& human : humans) {
            AnatomyCounts::Instance inst;
            inst.frame = f;
            inst.box = human.box;
            inst.body_abnormal =
                backend.anomaly_score({frame, human.box}, PatchKind::body) > consts.body;
            for (const auto& part : parts) {
                if (!contains_center(human.box, part.box)) continue;
                if (part.label == "face") {
                    if (backend.anomaly_score({frame, part.box}, PatchKind::face) > consts.face)
                        inst.face_abnormal = true;
                } else if (part.label == "hand") {
                    if (backend.anomaly_score({frame, part.box}, PatchKind::hand) > consts.hand)
                        inst.hand_abnormal = true;
                }
            }
            if (inst.abnormal())
                ++result.counts.c_abnormal;
            else
                ++result.counts.c_normal;
            result.counts.instances.push_back(inst);
        }
    }

    const int total = result.counts.c_normal + result.counts.c_abnormal;
    if (total == 0) {
        result.reason = "no humans detected in any frame";
        return result;
    }
    result.scorable = true;
    result.score = static_cast<double>(result.counts.c_normal) / total;
    return result;
}

// ---------------------------------------------------------------------------
// Human identity
// ---------------------------------------------------------------------------

/// Per-frame identity evidence. Frames whose face count differs from one are
/// skipped, not scored.
struct IdentityTrace {
    enum class Status { valid, skipped_multi, skipped_none };
    struct Entry {
        int frame = 0;
        Status status = Status::valid;
        double similarity = 0.0; // cosine, in [-1,1]; only for valid entries
    };
    std::vector<Entry> entries;
    std::vector<double> anchor; // frame-0 embedding
};

struct IdentityResult {
    bool scorable = false;
    std::string reason;
    double score = 0.0; // mean similarity over valid frames, clamped to [0,1]
    IdentityTrace trace;
};

/// Frame 0 is the anchor; every later single-face frame contributes the
/// cosine similarity of its embedding to the anchor.
inline IdentityResult identity_score(const VideoHandle& video, BackendSuite& backend) {
    if (video.frame_count < 1) throw PreconditionError("identity_score needs a decodable video");

    IdentityResult result;
    auto anchor_faces = backend.embed_faces(FrameRef{&video, 0});
    if (anchor_faces.size() != 1) {
        result.reason = "anchor frame must contain exactly one face, found " +
                        std::to_string(anchor_faces.size());
        return result;
    }
    result.trace.anchor = anchor_faces[0].embedding;

    double sum = 0.0;
    int valid = 0;
    for (int f = 1; f < video.frame_count; ++f) {
        auto faces = backend.embed_faces(FrameRef{&video, f});
        IdentityTrace::Entry entry;
        entry.frame = f;
        if (faces.empty()) {
            entry.status = IdentityTrace::Status::skipped_none;
        } else if (faces.size() > 1) {
            entry.status = IdentityTrace::Status::skipped_multi;
        } else {
            entry.status = IdentityTrace::Status::valid;
            double dot = 0.0;
            const auto& e = faces[0].embedding;
            if (e.size() != result.trace.anchor.size())
                throw ContractViolation("embedding length differs from the anchor");
            for (std::size_t i = 0; i < e.size(); ++i) dot += e[i] * result.trace.anchor[i];
            entry.similarity = dot;
            sum += dot;
            ++valid;
        }
        result.trace.entries.push_back(entry);
    }

    if (valid == 0) {
        result.reason = "no valid single-face frames after the anchor";
        return result;
    }
    result.scorable = true;
    result.score = std::clamp(sum / valid, 0.0, 1.0);
    return result;
}

// ---------------------------------------------------------------------------
// Human clothes
// ---------------------------------------------------------------------------

/// The three fixed consistency questions in all-of mode.
inline QaOutcome clothes_score(const VideoHandle& video, BackendSuite& backend) {
    const auto& qs = clothes_questions();
    return run_multi_qa(video, {qs.begin(), qs.end()}, QaMode::all, std::nullopt, backend);
}

// ---------------------------------------------------------------------------
// Diversity
// ---------------------------------------------------------------------------

/// Gram matrix of a (C,H,W) feature tensor, flattened row-major to C*C
/// entries: G[c1][c2] = <F[c1], F[c2]> / (C*H*W).
inline std::vector<double> gram_matrix(const Tensor& t) {
    const int hw = t.h * t.w;
    const double scale = 1.0 / (static_cast<double>(t.c) * t.h * t.w);
    std::vector<double> g(static_cast<std::size_t>(t.c) * t.c, 0.0);
    for (int a = 0; a < t.c; ++a) {
        const double* fa = t.data.data() + static_cast<std::size_t>(a) * hw;
        for (int b = a; b < t.c; ++b) {
            const double* fb = t.data.data() + static_cast<std::size_t>(b) * hw;
            double dot = 0.0;
            for (int i = 0; i < hw; ++i) dot += fa[i] * fb[i];
            g[static_cast<std::size_t>(a) * t.c + b] = dot * scale;
            g[static_cast<std::size_t>(b) * t.c + a] = dot * scale;
        }
    }
    return g;
}

struct DiversityResult {
    double s_diff = 0.0;     // mean pairwise squared Gram distance over 5 style layers
    double c_diff = 0.0;     // mean pairwise L1 content distance
    double raw = 0.0;        // lambda * s_diff + c_diff
    double normalized = 0.0; // min(raw / cap, 1)
    int sample_count = 0;
};

namespace detail {

inline FeatureFrame mean_features(const std::vector<FeatureFrame>& frames) {
    FeatureFrame mean = frames.front();
    auto accumulate = [&](Tensor& acc, const Tensor& t) {
        if (!acc.same_shape(t)) throw ContractViolation("feature shapes differ across frames");
        for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += t.data[i];
    };
    for (std::size_t k = 1; k < frames.size(); ++k) {
        for (int l = 0; l < 5; ++l) accumulate(mean.style[l], frames[k].style[l]);
        accumulate(mean.content, frames[k].content);
    }
    const double inv = 1.0 / static_cast<double>(frames.size());
    for (int l = 0; l < 5; ++l)
        for (double& x : mean.style[l].data) x *= inv;
    for (double& x : mean.content.data) x *= inv;
    return mean;
}

inline double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double mean_abs_distance(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw ContractViolation("content feature shapes differ across samples");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) s += std::abs(a.data[i] - b.data[i]);
    return s / static_cast<double>(a.data.size());
}

} // namespace detail

/// Pairwise style/content diversity over the per-video mean FeatureFrames of
/// the sample set. Eight frame slots are sampled uniformly per video (all
/// frames when the video is shorter).
inline DiversityResult diversity_score(const std::vector<VideoHandle>& videos,
                                       BackendSuite& backend, const Constants& consts = {}) {
    if (videos.size() < 2) throw PreconditionError("diversity_score needs at least 2 videos");

    std::vector<FeatureFrame> per_video;
    per_video.reserve(videos.size());
    for (const auto& video : videos) {
        const int frames = video.frame_count;
        const int slots = std::min(consts.diversity_frames, frames);
        if (slots < 1) throw PreconditionError("diversity sample has no frames");
        std::vector<FeatureFrame> sampled;
        for (int k = 0; k < slots; ++k) {
            const int idx = static_cast<int>(static_cast<long long>(k) * frames / slots);
            sampled.push_back(backend.extract_features(FrameRef{&video, idx}));
        }
        per_video.push_back(detail::mean_features(sampled));
    }

    for (std::size_t i = 1; i < per_video.size(); ++i) {
        for (int l = 0; l < 5; ++l)
            if (!per_video[i].style[l].same_shape(per_video[0].style[l]))
                throw ContractViolation("style feature shapes differ across samples");
        if (!per_video[i].content.same_shape(per_video[0].content))
            throw ContractViolation("content feature shapes differ across samples");
    }

    std::vector<std::array<std::vector<double>, 5>> grams(per_video.size());
    for (std::size_t i = 0; i < per_video.size(); ++i)
        for (int l = 0; l < 5; ++l) grams[i][l] = gram_matrix(per_video[i].style[l]);

    DiversityResult result;
    result.sample_count = static_cast<int>(videos.size());
    const std::size_t n = per_video.size();
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (int l = 0; l < 5; ++l)
                result.s_diff += detail::squared_distance(grams[i][l], grams[j][l]);
            result.c_diff += detail::mean_abs_distance(per_video[i].content, per_video[j].content);
        }
    }
    result.s_diff /= pairs;
    result.c_diff /= pairs;
    result.raw = consts.lambda * result.s_diff + result.c_diff;
    result.normalized = std::min(result.raw / consts.diversity_cap, 1.0);
    return result;
}

// ---------------------------------------------------------------------------
// Instance preservation
// ---------------------------------------------------------------------------

struct InstancePreservationResult {
    double score = 0.0; // correct frames / total frames
    int correct_frames = 0;
    int total_frames = 0;
    std::vector<int> per_frame_counts;
};

/// Frame-by-frame open-vocabulary counting; a frame is correct iff the
/// detected count equals the expected count. Detections below the threshold
/// are ignored (the threshold keeps, i.e. >= keeps).
inline InstancePreservationResult instance_preservation_score(
    const VideoHandle& video, int expected_count, const std::vector<std::string>& vocabulary,
    BackendSuite& backend, const Constants& consts = {}) {
    if (expected_count < 1) throw PreconditionError("expected_count must be >= 1");
    if (vocabulary.empty()) throw PreconditionError("detection vocabulary must be nonempty");
    if (video.frame_count < 1)
        throw PreconditionError("instance_preservation_score needs a decodable video");

    InstancePreservationResult result;
    result.total_frames = video.frame_count;
    for (int f = 0; f < video.frame_count; ++f) {
        auto dets = backend.detect_objects(FrameRef{&video, f}, vocabulary, consts.detect_instance);
        const int count = static_cast<int>(std::count_if(
            dets.begin(), dets.end(),
            [&](const Detection& d) { return d.confidence >= consts.detect_instance; }));
        result.per_frame_counts.push_back(count);
        if (count == expected_count) ++result.correct_frames;
    }
    result.score = static_cast<double>(result.correct_frames) / result.total_frames;
    return result;
}

} // namespace vbench2
