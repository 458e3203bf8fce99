#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "vbench2/errors.hpp"
#include "vbench2/video.hpp"

namespace vbench2 {

// ---------------------------------------------------------------------------
// Capability output types
// ---------------------------------------------------------------------------

/// Binary judge answer. `value` is derived from `raw_text` by parse_verdict;
/// yes maps to score 1, no to score 0.
struct Verdict {
    bool value = false;
    std::string raw_text;
};

/// Case-insensitive scan for a leading yes/no token after stripping
/// punctuation and whitespace. "Yes." -> yes, "no, it stays blue" -> no,
/// "maybe" -> UnparseableVerdict. Token must end at a word boundary so
/// "noon" does not parse as no.
inline Verdict parse_verdict(const std::string& raw) {
    std::size_t i = 0;
    while (i < raw.size() && !std::isalnum(static_cast<unsigned char>(raw[i]))) ++i;
    auto token_here = [&](const char* tok) {
        std::size_t n = std::char_traits<char>::length(tok);
        if (raw.size() - i < n) return false;
        for (std::size_t k = 0; k < n; ++k)
            if (std::tolower(static_cast<unsigned char>(raw[i + k])) != tok[k]) return false;
        return i + n >= raw.size() ||
               !std::isalnum(static_cast<unsigned char>(raw[i + n]));
    };
    if (token_here("yes")) return Verdict{true, raw};
    if (token_here("no")) return Verdict{false, raw};
    throw UnparseableVerdict("no yes/no token in judge output: '" + raw + "'");
}

/// One detected entity in a frame.
struct Detection {
    std::string label;
    double confidence = 0.0; // in [0,1]
    Rect box;
};

/// One detected face with its embedding (unit L2 norm).
struct FaceObservation {
    Rect box;
    std::vector<double> embedding;
};

/// Grid point tracks over the whole video. positions[p][t] is the pixel
/// position of point p at frame t; points are row-major over a grid_size x
/// grid_size lattice of cell centers in frame 0.
struct TrackGrid {
    int grid_size = 10;
    int width = 0;
    int height = 0;
    struct Point {
        double x = 0.0, y = 0.0;
        bool operator==(const Point&) const = default;
    };
    std::vector<std::vector<Point>> positions;

    int point_count() const { return static_cast<int>(positions.size()); }
    int frame_count() const { return positions.empty() ? 0 : static_cast<int>(positions[0].size()); }
    int point_index(int row, int col) const { return row * grid_size + col; }
};

/// Local features of one frame (descriptor payload is adapter-specific; the
/// scorers only consume the count).
struct KeypointSet {
    std::string frame_id;
    int count = 0;
};

/// Geometrically consistent matches between two frames after outlier
/// rejection.
struct MatchStats {
    int valid_matches = 0;
    int frame_a = 0;
    int frame_b = 0;
};

/// Dense tensor in (C, H, W) layout.
struct Tensor {
    int c = 0, h = 0, w = 0;
    std::vector<double> data; // size c*h*w

    double at(int ci, int hi, int wi) const { return data[(ci * h + hi) * w + wi]; }
    bool same_shape(const Tensor& o) const { return c == o.c && h == o.h && w == o.w; }
    std::size_t size() const { return data.size(); }
};

/// Style/content features of one frame: five style tensors (one per style
/// layer) plus one content tensor.
struct FeatureFrame {
    std::array<Tensor, 5> style;
    Tensor content;
};

// ---------------------------------------------------------------------------
// Backend interface
// ---------------------------------------------------------------------------

enum class PatchKind { body, face, hand };

constexpr std::string_view to_string(PatchKind k) {
    switch (k) {
        case PatchKind::body: return "body";
        case PatchKind::face: return "face";
        case PatchKind::hand: return "hand";
    }
    return "?";
}

/// The full perception/judgment capability set the scorers consume. Real
/// adapters wrap remote judges and local models; the scripted mock replays
/// canned outputs. Flow and keypoint capabilities are defined at a frame
/// scale normalized to 480p; adapters downsample before computing.
///
/// Implementations must be safe to call from multiple scorer threads.
class BackendSuite {
public:
    virtual ~BackendSuite() = default;

    virtual std::string caption_video(const VideoHandle& video,
                                      const std::string& system_prompt) = 0;
    virtual Verdict answer_binary(const VideoHandle& video,
                                  const std::string& question) = 0;
    virtual Verdict judge_alignment(const std::string& caption,
                                    const std::string& reference,
                                    const std::string& system_prompt) = 0;
    virtual std::vector<Detection> detect_objects(const FrameRef& frame,
                                                  const std::vector<std::string>& vocabulary,
                                                  double threshold) = 0;
    virtual std::vector<FaceObservation> embed_faces(const FrameRef& frame) = 0;
    virtual TrackGrid track_points(const VideoHandle& video, int grid_size) = 0;
    virtual double flow_magnitude(const FrameRef& frame_a, const FrameRef& frame_b) = 0;
    virtual KeypointSet extract_keypoints(const FrameRef& frame) = 0;
    virtual MatchStats match_keypoints(const KeypointSet& a, const KeypointSet& b) = 0;
    virtual FeatureFrame extract_features(const FrameRef& frame) = 0;
    virtual double anomaly_score(const FrameRegion& patch, PatchKind kind) = 0;

    /// Max concurrent capability calls the adapter tolerates; the harness
    /// clamps its parallelism to this.
    virtual int max_in_flight() const { return 1 << 20; }
};

// ---------------------------------------------------------------------------
// Output invariant enforcement
// ---------------------------------------------------------------------------

/// Wraps any backend and validates every capability output against its type
/// invariants before handing it to a scorer, so a misbehaving adapter (or a
/// drifted mock script) fails loudly at the boundary.
class CheckedBackend final : public BackendSuite {
public:
    explicit CheckedBackend(std::shared_ptr<BackendSuite> inner) : inner_(std::move(inner)) {}

    std::string caption_video(const VideoHandle& v, const std::string& sp) override {
        return inner_->caption_video(v, sp);
    }

    Verdict answer_binary(const VideoHandle& v, const std::string& q) override {
        return check_verdict(inner_->answer_binary(v, q));
    }

    Verdict judge_alignment(const std::string& c, const std::string& r,
                            const std::string& sp) override {
        return check_verdict(inner_->judge_alignment(c, r, sp));
    }

    std::vector<Detection> detect_objects(const FrameRef& f,
                                          const std::vector<std::string>& vocab,
                                          double threshold) override {
        auto dets = inner_->detect_objects(f, vocab, threshold);
        for (const auto& d : dets) {
            if (d.confidence < 0.0 || d.confidence > 1.0)
                throw ContractViolation("detection confidence out of [0,1]: " +
                                        std::to_string(d.confidence));
            if (f.video && f.video->width > 0 && f.video->height > 0) {
                if (d.box.x < 0 || d.box.y < 0 || d.box.w < 0 || d.box.h < 0 ||
                    d.box.x + d.box.w > f.video->width ||
                    d.box.y + d.box.h > f.video->height)
                    throw ContractViolation("detection box outside frame bounds: " +
                                            to_string(d.box));
            }
        }
        return dets;
    }

    std::vector<FaceObservation> embed_faces(const FrameRef& f) override {
        auto faces = inner_->embed_faces(f);
        for (const auto& face : faces) {
            double norm2 = 0.0;
            for (double x : face.embedding) norm2 += x * x;
            if (std::abs(std::sqrt(norm2) - 1.0) > 1e-6)
                throw ContractViolation("face embedding is not unit-norm");
        }
        return faces;
    }

    TrackGrid track_points(const VideoHandle& v, int grid_size) override {
        TrackGrid g = inner_->track_points(v, grid_size);
        if (g.point_count() != g.grid_size * g.grid_size)
            throw ContractViolation("track grid cardinality != grid_size^2");
        const int frames = g.frame_count();
        if (v.frame_count > 0 && frames != v.frame_count)
            throw ContractViolation("track series length != video frame count");
        if (v.width > 0 && v.height > 0 && (g.width != v.width || g.height != v.height))
            throw ContractViolation("track grid frame dimensions differ from the video");
        for (const auto& series : g.positions)
            if (static_cast<int>(series.size()) != frames)
                throw ContractViolation("track series lengths differ");
        if (frames > 0 && g.width > 0 && g.height > 0) {
            const double cw = static_cast<double>(g.width) / g.grid_size;
            const double ch = static_cast<double>(g.height) / g.grid_size;
            for (int row = 0; row < g.grid_size; ++row)
                for (int col = 0; col < g.grid_size; ++col) {
                    const auto& p0 = g.positions[g.point_index(row, col)][0];
                    if (std::abs(p0.x - (col + 0.5) * cw) > 1e-3 ||
                        std::abs(p0.y - (row + 0.5) * ch) > 1e-3)
                        throw ContractViolation("frame-0 positions are not the uniform grid");
                }
        }
        return g;
    }

    double flow_magnitude(const FrameRef& a, const FrameRef& b) override {
        double f = inner_->flow_magnitude(a, b);
        if (!(f >= 0.0)) throw ContractViolation("flow magnitude must be >= 0");
        return f;
    }

    KeypointSet extract_keypoints(const FrameRef& f) override {
        KeypointSet k = inner_->extract_keypoints(f);
        if (k.count < 0) throw ContractViolation("negative keypoint count");
        return k;
    }

    MatchStats match_keypoints(const KeypointSet& a, const KeypointSet& b) override {
        MatchStats m = inner_->match_keypoints(a, b);
        if (m.valid_matches < 0 || m.valid_matches > std::min(a.count, b.count))
            throw ContractViolation("valid_matches exceeds keypoint count");
        return m;
    }

    FeatureFrame extract_features(const FrameRef& f) override {
        FeatureFrame ff = inner_->extract_features(f);
        auto check = [](const Tensor& t, const char* what) {
            if (t.c <= 0 || t.h <= 0 || t.w <= 0 ||
                t.data.size() != static_cast<std::size_t>(t.c) * t.h * t.w)
                throw ContractViolation(std::string("bad tensor shape for ") + what);
            for (double x : t.data)
                if (!std::isfinite(x)) throw ContractViolation("non-finite feature value");
        };
        for (const auto& t : ff.style) check(t, "style layer");
        check(ff.content, "content layer");
        return ff;
    }

    double anomaly_score(const FrameRegion& p, PatchKind kind) override {
        double s = inner_->anomaly_score(p, kind);
        if (s < 0.0 || s > 1.0)
            throw ContractViolation("anomaly probability out of [0,1]");
        return s;
    }

    int max_in_flight() const override { return inner_->max_in_flight(); }

private:
    static Verdict check_verdict(Verdict v) {
        Verdict reparsed = parse_verdict(v.raw_text);
        if (reparsed.value != v.value)
            throw ContractViolation("verdict value disagrees with its raw text");
        return v;
    }

    std::shared_ptr<BackendSuite> inner_;
};

// ---------------------------------------------------------------------------
// Call recording (audit transcripts + test-observable call log)
// ---------------------------------------------------------------------------

struct CallRecord {
    std::string capability;
    std::string fingerprint;
    std::string output; // raw textual form of the output, for audit
};

/// Decorator that appends one CallRecord per capability call. Used both for
/// the persisted judge transcripts and for tests asserting call counts
/// (e.g. the prefilter short-circuit).
class RecordingBackend final : public BackendSuite {
public:
    explicit RecordingBackend(std::shared_ptr<BackendSuite> inner) : inner_(std::move(inner)) {}

    const std::vector<CallRecord>& log() const { return log_; }
    void clear_log() { std::lock_guard lk(mu_); log_.clear(); }

    std::size_t count(const std::string& capability) const {
        std::lock_guard lk(mu_);
        std::size_t n = 0;
        for (const auto& r : log_)
            if (r.capability == capability) ++n;
        return n;
    }

    std::string caption_video(const VideoHandle& v, const std::string& sp) override {
        auto out = inner_->caption_video(v, sp);
        add("caption_video", v.id + "|" + sp, out);
        return out;
    }
    Verdict answer_binary(const VideoHandle& v, const std::string& q) override {
        auto out = inner_->answer_binary(v, q);
        add("answer_binary", v.id + "|" + q, out.raw_text);
        return out;
    }
    Verdict judge_alignment(const std::string& c, const std::string& r,
                            const std::string& sp) override {
        auto out = inner_->judge_alignment(c, r, sp);
        add("judge_alignment", c + "|" + r + "|" + sp, out.raw_text);
        return out;
    }
    std::vector<Detection> detect_objects(const FrameRef& f,
                                          const std::vector<std::string>& vocab,
                                          double t) override {
        auto out = inner_->detect_objects(f, vocab, t);
        add("detect_objects", f.fingerprint(), std::to_string(out.size()) + " detections");
        return out;
    }
    std::vector<FaceObservation> embed_faces(const FrameRef& f) override {
        auto out = inner_->embed_faces(f);
        add("embed_faces", f.fingerprint(), std::to_string(out.size()) + " faces");
        return out;
    }
    TrackGrid track_points(const VideoHandle& v, int g) override {
        auto out = inner_->track_points(v, g);
        add("track_points", v.id, std::to_string(out.frame_count()) + " frames");
        return out;
    }
    double flow_magnitude(const FrameRef& a, const FrameRef& b) override {
        double out = inner_->flow_magnitude(a, b);
        add("flow_magnitude", a.fingerprint() + "|" + b.fingerprint(), std::to_string(out));
        return out;
    }
    KeypointSet extract_keypoints(const FrameRef& f) override {
        auto out = inner_->extract_keypoints(f);
        add("extract_keypoints", f.fingerprint(), std::to_string(out.count));
        return out;
    }
    MatchStats match_keypoints(const KeypointSet& a, const KeypointSet& b) override {
        auto out = inner_->match_keypoints(a, b);
        add("match_keypoints", a.frame_id + "|" + b.frame_id, std::to_string(out.valid_matches));
        return out;
    }
    FeatureFrame extract_features(const FrameRef& f) override {
        auto out = inner_->extract_features(f);
        add("extract_features", f.fingerprint(), "features");
        return out;
    }
    double anomaly_score(const FrameRegion& p, PatchKind k) override {
        double out = inner_->anomaly_score(p, k);
        add("anomaly_score",
            p.frame.fingerprint() + "|" + to_string(p.box) + "|" + std::string(to_string(k)),
            std::to_string(out));
        return out;
    }
    int max_in_flight() const override { return inner_->max_in_flight(); }

private:
    void add(std::string cap, std::string fp, std::string out) {
        std::lock_guard lk(mu_);
        log_.push_back({std::move(cap), std::move(fp), std::move(out)});
    }

    std::shared_ptr<BackendSuite> inner_;
    mutable std::mutex mu_;
    std::vector<CallRecord> log_;
};

// ---------------------------------------------------------------------------
// Retry helpers
// ---------------------------------------------------------------------------

/// Unparseable judge output counts as "no" after one retry, keeping the
/// pipelines total over arbitrary judge text.
template <typename Call>
Verdict verdict_with_retry(Call&& call) {
    try {
        return call();
    } catch (const UnparseableVerdict&) {
        try {
            return call();
        } catch (const UnparseableVerdict& e) {
            return Verdict{false, std::string("[unparseable-after-retry] ") + e.what()};
        }
    }
}

} // namespace vbench2
