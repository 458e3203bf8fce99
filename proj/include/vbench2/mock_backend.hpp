#pragma once

#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbench2/backend.hpp"
#include "vbench2/errors.hpp"

namespace vbench2 {

// ---------------------------------------------------------------------------
// Fingerprints
//
// Mock lookups key on the capability name plus the semantic inputs of the
// call (ids, prompts, questions, frame indices) rather than pixel bytes, so
// fixtures can be scripted without pixel-exact reproduction. The same
// functions are used by the scripted backend and by script builders.
// ---------------------------------------------------------------------------

namespace fp {

inline std::string threshold(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", t);
    return buf;
}

inline std::string caption_video(const VideoHandle& v, const std::string& system_prompt) {
    return v.id + "|" + system_prompt;
}
inline std::string answer_binary(const VideoHandle& v, const std::string& question) {
    return v.id + "|" + question;
}
inline std::string judge_alignment(const std::string& caption, const std::string& reference,
                                   const std::string& system_prompt) {
    return caption + "|" + reference + "|" + system_prompt;
}
inline std::string detect_objects(const FrameRef& f, const std::vector<std::string>& vocab,
                                  double thr) {
    std::string v;
    for (const auto& s : vocab) {
        if (!v.empty()) v += ",";
        v += s;
    }
    return f.fingerprint() + "|" + v + "|" + threshold(thr);
}
inline std::string embed_faces(const FrameRef& f) { return f.fingerprint(); }
inline std::string track_points(const VideoHandle& v, int grid) {
    return v.id + "|" + std::to_string(grid);
}
inline std::string flow_magnitude(const FrameRef& a, const FrameRef& b) {
    return a.fingerprint() + "|" + b.fingerprint();
}
inline std::string extract_keypoints(const FrameRef& f) { return f.fingerprint(); }
inline std::string match_keypoints(const KeypointSet& a, const KeypointSet& b) {
    return a.frame_id + "|" + b.frame_id;
}
inline std::string extract_features(const FrameRef& f) { return f.fingerprint(); }
inline std::string anomaly_score(const FrameRegion& p, PatchKind k) {
    return p.frame.fingerprint() + "|" + to_string(p.box) + "|" + std::string(to_string(k));
}

} // namespace fp

// ---------------------------------------------------------------------------
// Canned-output JSON codecs
// ---------------------------------------------------------------------------

inline nlohmann::json tensor_to_json(const Tensor& t) {
    return {{"c", t.c}, {"h", t.h}, {"w", t.w}, {"data", t.data}};
}

inline Tensor tensor_from_json(const nlohmann::json& j) {
    Tensor t;
    t.c = j.at("c").get<int>();
    t.h = j.at("h").get<int>();
    t.w = j.at("w").get<int>();
    t.data = j.at("data").get<std::vector<double>>();
    return t;
}

inline nlohmann::json feature_frame_to_json(const FeatureFrame& f) {
    nlohmann::json style = nlohmann::json::array();
    for (const auto& t : f.style) style.push_back(tensor_to_json(t));
    return {{"style", style}, {"content", tensor_to_json(f.content)}};
}

inline FeatureFrame feature_frame_from_json(const nlohmann::json& j) {
    FeatureFrame f;
    const auto& style = j.at("style");
    if (style.size() != 5) throw SchemaError("feature frame needs exactly 5 style tensors");
    for (int i = 0; i < 5; ++i) f.style[i] = tensor_from_json(style[i]);
    f.content = tensor_from_json(j.at("content"));
    return f;
}

/// Cell-center lattice positions for frame 0.
inline std::vector<TrackGrid::Point> uniform_grid_start(int grid_size, int width, int height) {
    std::vector<TrackGrid::Point> pts;
    pts.reserve(static_cast<std::size_t>(grid_size) * grid_size);
    const double cw = static_cast<double>(width) / grid_size;
    const double ch = static_cast<double>(height) / grid_size;
    for (int row = 0; row < grid_size; ++row)
        for (int col = 0; col < grid_size; ++col)
            pts.push_back({(col + 0.5) * cw, (row + 0.5) * ch});
    return pts;
}

/// Builds a grid whose points travel linearly from the lattice to
/// lattice + displacement over `frames` frames.
inline TrackGrid linear_track_grid(int grid_size, int width, int height, int frames,
                                   const std::vector<TrackGrid::Point>& displacement) {
    if (frames < 2) throw PreconditionError("track grid needs >= 2 frames");
    if (static_cast<int>(displacement.size()) != grid_size * grid_size)
        throw PreconditionError("displacement count != grid_size^2");
    TrackGrid g;
    g.grid_size = grid_size;
    g.width = width;
    g.height = height;
    auto start = uniform_grid_start(grid_size, width, height);
    g.positions.resize(start.size());
    for (std::size_t p = 0; p < start.size(); ++p) {
        g.positions[p].resize(frames);
        for (int t = 0; t < frames; ++t) {
            const double a = static_cast<double>(t) / (frames - 1);
            g.positions[p][t] = {start[p].x + a * displacement[p].x,
                                 start[p].y + a * displacement[p].y};
        }
    }
    return g;
}

inline nlohmann::json track_grid_to_json(const TrackGrid& g) {
    nlohmann::json pos = nlohmann::json::array();
    for (const auto& series : g.positions) {
        nlohmann::json s = nlohmann::json::array();
        for (const auto& p : series) s.push_back({p.x, p.y});
        pos.push_back(std::move(s));
    }
    return {{"grid_size", g.grid_size}, {"width", g.width}, {"height", g.height},
            {"positions", pos}};
}

inline TrackGrid track_grid_from_json(const nlohmann::json& j) {
    TrackGrid g;
    g.grid_size = j.at("grid_size").get<int>();
    g.width = j.at("width").get<int>();
    g.height = j.at("height").get<int>();
    if (j.contains("positions")) {
        for (const auto& series : j.at("positions")) {
            std::vector<TrackGrid::Point> s;
            for (const auto& p : series) s.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            g.positions.push_back(std::move(s));
        }
    } else {
        // compact linear form: {"frames", "displacements": [[dx,dy], ...]}
        std::vector<TrackGrid::Point> disp;
        for (const auto& d : j.at("displacements"))
            disp.push_back({d.at(0).get<double>(), d.at(1).get<double>()});
        g = linear_track_grid(g.grid_size, g.width, g.height, j.at("frames").get<int>(), disp);
    }
    return g;
}

// ---------------------------------------------------------------------------
// MockScript
// ---------------------------------------------------------------------------

/// Ordered lookup from (capability, fingerprint) to a canned output. Lookups
/// walk the entries in order and take the first live match; an entry with
/// key "*" matches any fingerprint of its capability; "times" limits how
/// often an entry can fire (-1 = unlimited), which lets a script answer the
/// same question differently on a retry.
struct MockScript {
    struct Entry {
        std::string capability;
        std::string key;
        nlohmann::json output;
        int times = -1;
    };

    bool strict = true;
    std::vector<Entry> entries;

    MockScript& add(std::string capability, std::string key, nlohmann::json output,
                    int times = -1) {
        entries.push_back({std::move(capability), std::move(key), std::move(output), times});
        return *this;
    }

    // typed conveniences, keyed exactly as the scripted backend will look up
    MockScript& caption(const std::string& video_id, const std::string& system_prompt,
                        const std::string& text) {
        return add("caption_video", video_id + "|" + system_prompt, text);
    }
    MockScript& answer(const std::string& video_id, const std::string& question,
                       const std::string& raw, int times = -1) {
        return add("answer_binary", video_id + "|" + question, raw, times);
    }
    MockScript& judge(const std::string& caption, const std::string& reference,
                      const std::string& system_prompt, const std::string& raw,
                      int times = -1) {
        return add("judge_alignment", caption + "|" + reference + "|" + system_prompt, raw,
                   times);
    }
};

inline nlohmann::json to_json(const MockScript& s) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : s.entries) {
        nlohmann::json je{{"capability", e.capability}, {"key", e.key}, {"output", e.output}};
        if (e.times >= 0) je["times"] = e.times;
        entries.push_back(std::move(je));
    }
    return {{"strict", s.strict}, {"entries", entries}};
}

inline MockScript mock_script_from_json(const nlohmann::json& j) {
    MockScript s;
    s.strict = j.value("strict", true);
    for (const auto& je : j.at("entries")) {
        MockScript::Entry e;
        e.capability = je.at("capability").get<std::string>();
        e.key = je.at("key").get<std::string>();
        e.output = je.at("output");
        e.times = je.value("times", -1);
        s.entries.push_back(std::move(e));
    }
    return s;
}

inline MockScript load_mock_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open mock script: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad mock script " + path + ": " + e.what());
    }
    return mock_script_from_json(j);
}

// ---------------------------------------------------------------------------
// ScriptedBackend
// ---------------------------------------------------------------------------

/// Deterministic replay backend. Every capability resolves through the
/// script; in strict mode an unmatched lookup raises UnscriptedCallError so
/// drifted fixtures fail instead of fabricating data. Lookup state is
/// internally synchronized.
class ScriptedBackend final : public BackendSuite {
public:
    explicit ScriptedBackend(MockScript script) : script_(std::move(script)) {
        uses_.assign(script_.entries.size(), 0);
    }

    /// Forget consumption counters (fresh replay).
    void reset() {
        std::lock_guard lk(mu_);
        std::fill(uses_.begin(), uses_.end(), 0);
    }

    std::string caption_video(const VideoHandle& v, const std::string& sp) override {
        auto out = find("caption_video", fp::caption_video(v, sp));
        return out ? out->get<std::string>() : std::string{};
    }

    Verdict answer_binary(const VideoHandle& v, const std::string& q) override {
        auto out = find("answer_binary", fp::answer_binary(v, q));
        return parse_verdict(out ? out->get<std::string>() : "yes");
    }

    Verdict judge_alignment(const std::string& c, const std::string& r,
                            const std::string& sp) override {
        auto out = find("judge_alignment", fp::judge_alignment(c, r, sp));
        return parse_verdict(out ? out->get<std::string>() : "yes");
    }

    std::vector<Detection> detect_objects(const FrameRef& f,
                                          const std::vector<std::string>& vocab,
                                          double thr) override {
        auto out = find("detect_objects", fp::detect_objects(f, vocab, thr));
        std::vector<Detection> dets;
        if (!out) return dets;
        for (const auto& jd : *out) {
            Detection d;
            d.label = jd.at("label").get<std::string>();
            d.confidence = jd.at("confidence").get<double>();
            const auto& b = jd.at("box");
            d.box = {b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
                     b.at(3).get<int>()};
            dets.push_back(std::move(d));
        }
        return dets;
    }

    std::vector<FaceObservation> embed_faces(const FrameRef& f) override {
        auto out = find("embed_faces", fp::embed_faces(f));
        std::vector<FaceObservation> faces;
        if (!out) return faces;
        for (const auto& jf : *out) {
            FaceObservation face;
            const auto& b = jf.at("box");
            face.box = {b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(),
                        b.at(3).get<int>()};
            face.embedding = jf.at("embedding").get<std::vector<double>>();
            faces.push_back(std::move(face));
        }
        return faces;
    }

    TrackGrid track_points(const VideoHandle& v, int grid) override {
        auto out = find("track_points", fp::track_points(v, grid));
        if (!out) {
            // benign non-strict fallback: a static grid over two frames
            std::vector<TrackGrid::Point> disp(static_cast<std::size_t>(grid) * grid, {0, 0});
            return linear_track_grid(grid, v.width, v.height, std::max(2, v.frame_count), disp);
        }
        return track_grid_from_json(*out);
    }

    double flow_magnitude(const FrameRef& a, const FrameRef& b) override {
        auto out = find("flow_magnitude", fp::flow_magnitude(a, b));
        return out ? out->get<double>() : 0.0;
    }

    KeypointSet extract_keypoints(const FrameRef& f) override {
        auto out = find("extract_keypoints", fp::extract_keypoints(f));
        return KeypointSet{f.fingerprint(), out ? out->at("count").get<int>() : 0};
    }

    MatchStats match_keypoints(const KeypointSet& a, const KeypointSet& b) override {
        auto out = find("match_keypoints", fp::match_keypoints(a, b));
        MatchStats m;
        m.valid_matches = out ? out->at("valid_matches").get<int>() : 0;
        return m;
    }

    FeatureFrame extract_features(const FrameRef& f) override {
        auto out = find("extract_features", fp::extract_features(f));
        if (!out) {
            FeatureFrame ff;
            for (auto& t : ff.style) t = Tensor{1, 1, 1, {0.0}};
            ff.content = Tensor{1, 1, 1, {0.0}};
            return ff;
        }
        return feature_frame_from_json(*out);
    }

    double anomaly_score(const FrameRegion& p, PatchKind k) override {
        auto out = find("anomaly_score", fp::anomaly_score(p, k));
        return out ? out->get<double>() : 0.0;
    }

private:
    /// First live entry matching (capability, key-or-wildcard), in script
    /// order; nullopt on miss outside strict mode.
    std::optional<nlohmann::json> find(const std::string& capability, const std::string& key) {
        std::lock_guard lk(mu_);
        for (std::size_t i = 0; i < script_.entries.size(); ++i) {
            const auto& e = script_.entries[i];
            if (e.capability != capability) continue;
            if (e.key != key && e.key != "*") continue;
            if (e.times >= 0 && uses_[i] >= e.times) continue;
            ++uses_[i];
            return e.output;
        }
        if (script_.strict)
            throw UnscriptedCallError("unscripted call: " + capability + " [" + key + "]");
        return std::nullopt;
    }

    MockScript script_;
    std::vector<int> uses_;
    std::mutex mu_;
};

/// BackendSuite whose every capability replays the script.
inline std::shared_ptr<BackendSuite> mock_backend(MockScript script) {
    return std::make_shared<ScriptedBackend>(std::move(script));
}

} // namespace vbench2
