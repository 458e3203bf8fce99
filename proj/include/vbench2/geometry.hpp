#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vbench2/backend.hpp"
#include "vbench2/constants.hpp"
#include "vbench2/dimensions.hpp"
#include "vbench2/errors.hpp"
#include "vbench2/video.hpp"

namespace vbench2 {

// ---------------------------------------------------------------------------
// Camera motion
//
// The eight non-orbit labels are decided from the start/end displacement of
// the four outermost edge-center points of the tracking grid (top, bottom,
// left, right). Image coordinates grow rightward in x and downward in y, so
// a camera panning left moves scene content toward +x and a camera tilting
// up moves content toward +y. Thresholds are fractions of the frame
// diagonal: tau_move marks significant displacement, tau_still negligible
// displacement.
// ---------------------------------------------------------------------------

struct Vec2 {
    double x = 0.0, y = 0.0;
};

namespace detail {

struct EdgeCenter {
    Vec2 start; // frame 0
    Vec2 end;   // last frame
    Vec2 delta() const { return {end.x - start.x, end.y - start.y}; }
};

inline Vec2 midpoint(const TrackGrid::Point& a, const TrackGrid::Point& b) {
    return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
}

/// Top, bottom, left, right edge centers; each is the midpoint of the two
/// middle grid points of that edge row/column.
inline std::array<EdgeCenter, 4> edge_centers(const TrackGrid& g) {
    const int last = g.frame_count() - 1;
    const int g2 = g.grid_size / 2;
    auto center_of = [&](int rowA, int colA, int rowB, int colB) {
        const auto& a = g.positions[g.point_index(rowA, colA)];
        const auto& b = g.positions[g.point_index(rowB, colB)];
        return EdgeCenter{midpoint(a[0], b[0]), midpoint(a[last], b[last])};
    };
    return {
        center_of(0, g2 - 1, 0, g2),                             // top
        center_of(g.grid_size - 1, g2 - 1, g.grid_size - 1, g2), // bottom
        center_of(g2 - 1, 0, g2, 0),                             // left
        center_of(g2 - 1, g.grid_size - 1, g2, g.grid_size - 1), // right
    };
}

inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

/// Signed change of distance from the image center (positive = outward).
inline double radial_delta(const EdgeCenter& e, double cx, double cy) {
    const double d0 = std::hypot(e.start.x - cx, e.start.y - cy);
    const double d1 = std::hypot(e.end.x - cx, e.end.y - cy);
    return d1 - d0;
}

} // namespace detail

inline double frame_diagonal(const TrackGrid& g) {
    return std::hypot(static_cast<double>(g.width), static_cast<double>(g.height));
}

/// Orbit heuristic: a judgment window every `orbit_window` frames. A window
/// is positive when in every grid column the first and last point move in
/// opposite x-directions with significant x-motion and negligible y-motion.
/// One positive window anywhere in the video is enough.
struct OrbitResult {
    bool detected = false;
    std::string note;
};

inline OrbitResult detect_orbit(const TrackGrid& tracks, const Constants& consts = {}) {
    const int frames = tracks.frame_count();
    const int window = consts.orbit_window;
    if (frames < window + 1)
        return {false, "too few frames for the every-" + std::to_string(window) + "-frames rule"};

    const double diag = frame_diagonal(tracks);
    const double tau_move = consts.tau_move * diag;
    const double tau_still = consts.tau_still * diag;

    for (int w = 0; w + window <= frames - 1; w += window) {
        bool all_columns = true;
        for (int col = 0; col < tracks.grid_size && all_columns; ++col) {
            const auto& first = tracks.positions[tracks.point_index(0, col)];
            const auto& last = tracks.positions[tracks.point_index(tracks.grid_size - 1, col)];
            const double fx = first[w + window].x - first[w].x;
            const double fy = first[w + window].y - first[w].y;
            const double lx = last[w + window].x - last[w].x;
            const double ly = last[w + window].y - last[w].y;
            const bool opposite = fx * lx < 0.0;
            const bool significant = std::abs(fx) > tau_move && std::abs(lx) > tau_move;
            const bool still_y = std::abs(fy) < tau_still && std::abs(ly) < tau_still;
            all_columns = opposite && significant && still_y;
        }
        if (all_columns) return {true, "window at frame " + std::to_string(w)};
    }
    return {false, "no orbit-positive window"};
}

/// Displacement signature of one non-orbit label over the four edge centers.
inline bool signature_matches(const TrackGrid& tracks, MotionLabel label,
                              const Constants& consts = {}) {
    if (label == MotionLabel::orbit) return detect_orbit(tracks, consts).detected;

    const auto edges = detail::edge_centers(tracks);
    const double diag = frame_diagonal(tracks);
    const double tau_move = consts.tau_move * diag;
    const double tau_still = consts.tau_still * diag;
    const double cx = tracks.width / 2.0;
    const double cy = tracks.height / 2.0;

    auto all_of_edges = [&](auto&& pred) {
        return std::all_of(edges.begin(), edges.end(), pred);
    };

    switch (label) {
        case MotionLabel::pan_left: // content moves right
            return all_of_edges([&](const detail::EdgeCenter& e) {
                const Vec2 d = e.delta();
                return d.x > tau_move && std::abs(d.y) < tau_still;
            });
        case MotionLabel::pan_right:
            return all_of_edges([&](const detail::EdgeCenter& e) {
                const Vec2 d = e.delta();
                return d.x < -tau_move && std::abs(d.y) < tau_still;
            });
        case MotionLabel::tilt_up: // content moves down
            return all_of_edges([&](const detail::EdgeCenter& e) {
                const Vec2 d = e.delta();
                return d.y > tau_move && std::abs(d.x) < tau_still;
            });
        case MotionLabel::tilt_down:
            return all_of_edges([&](const detail::EdgeCenter& e) {
                const Vec2 d = e.delta();
                return d.y < -tau_move && std::abs(d.x) < tau_still;
            });
        case MotionLabel::zoom_in: // content expands outward from the center
            return all_of_edges([&](const detail::EdgeCenter& e) {
                return detail::radial_delta(e, cx, cy) > tau_move;
            });
        case MotionLabel::zoom_out:
            return all_of_edges([&](const detail::EdgeCenter& e) {
                return detail::radial_delta(e, cx, cy) < -tau_move;
            });
        case MotionLabel::static_shot:
            return all_of_edges([&](const detail::EdgeCenter& e) {
                return detail::norm(e.delta()) < tau_move;
            });
        case MotionLabel::oblique_airborne_dolly: {
            // simultaneous pan component (mean displacement) and zoom-out
            // component (residuals pointing inward)
            Vec2 mean{0.0, 0.0};
            for (const auto& e : edges) {
                mean.x += e.delta().x / 4.0;
                mean.y += e.delta().y / 4.0;
            }
            if (std::abs(mean.x) <= tau_move) return false;
            return all_of_edges([&](const detail::EdgeCenter& e) {
                const Vec2 d = e.delta();
                const Vec2 residual{d.x - mean.x, d.y - mean.y};
                const double ix = cx - e.start.x;
                const double iy = cy - e.start.y;
                const double inorm = std::hypot(ix, iy);
                if (inorm == 0.0) return false;
                const double inward = (residual.x * ix + residual.y * iy) / inorm;
                return inward > tau_move;
            });
        }
        case MotionLabel::orbit:
            break;
    }
    return false;
}

struct CameraMotionOutcome {
    int score = 0; // 1 iff the observed signature matches the target
    std::string note;
};

/// Binary camera-motion classification against the prompt's target label.
/// Degenerate tracks (lost points / NaN) score 0 with the reason recorded.
inline CameraMotionOutcome classify_camera_motion(const TrackGrid& tracks, MotionLabel target,
                                                  const Constants& consts = {}) {
    if (tracks.frame_count() < 2)
        throw PreconditionError("classify_camera_motion needs tracks over >= 2 frames");
    if (tracks.point_count() != tracks.grid_size * tracks.grid_size)
        throw PreconditionError("track grid cardinality != grid_size^2");

    for (const auto& series : tracks.positions)
        for (const auto& p : series)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                return {0, "degenerate tracks: lost or NaN points"};

    if (target == MotionLabel::orbit) {
        OrbitResult orbit = detect_orbit(tracks, consts);
        return {orbit.detected ? 1 : 0, orbit.note};
    }
    return {signature_matches(tracks, target, consts) ? 1 : 0, ""};
}

// ---------------------------------------------------------------------------
// Multi-view consistency
// ---------------------------------------------------------------------------

/// Global optical-flow statistics at the normalized 480p scale.
struct FlowStats {
    double f_score = 0.0; // mean magnitude over sampled pairs
    std::vector<double> per_pair;
    double fps = 0.0;
    bool discarded = false; // f_score below the discard threshold
};

/// Keypoint-matching frame gap adapted to frame rate and camera speed:
/// floor(S_fix / ((fps/8) * (f_score/10))), clamped to at least 1.
inline int matching_interval(double fps, double f_score, const Constants& consts = {}) {
    if (fps <= 0.0) throw PreconditionError("matching_interval needs fps > 0");
    if (f_score < consts.flow_discard || f_score > consts.flow_interval_cap)
        throw ContractViolation("f_score " + std::to_string(f_score) + " outside [" +
                                std::to_string(consts.flow_discard) + "," +
                                std::to_string(consts.flow_interval_cap) +
                                "] after discard/cap");
    const double raw = consts.s_fix / ((fps / 8.0) * (f_score / 10.0));
    return std::max(1, static_cast<int>(std::floor(raw)));
}

/// Flow pair sampling: adjacent frames at <= 8 fps, a stride of round(fps/8)
/// otherwise, so the flow scale is comparable across frame rates.
inline FlowStats compute_flow_stats(const VideoHandle& video, BackendSuite& backend,
                                    const Constants& consts = {}) {
    FlowStats stats;
    stats.fps = video.fps;
    const int frames = video.frame_count;
    const int stride =
        video.fps <= 8.0 ? 1 : std::max(1, static_cast<int>(std::lround(video.fps / 8.0)));

    for (int a = 0; a + stride <= frames - 1; a += stride) {
        FrameRef fa{&video, a};
        FrameRef fb{&video, a + stride};
        stats.per_pair.push_back(backend.flow_magnitude(fa, fb));
    }
    if (stats.per_pair.empty()) { // shorter than one stride; use the span we have
        FrameRef fa{&video, 0};
        FrameRef fb{&video, frames - 1};
        stats.per_pair.push_back(backend.flow_magnitude(fa, fb));
    }

    double sum = 0.0;
    for (double f : stats.per_pair) sum += f;
    stats.f_score = sum / static_cast<double>(stats.per_pair.size());
    stats.discarded = stats.f_score < consts.flow_discard;
    return stats;
}

struct MultiviewResult {
    bool discarded = false;
    double score = 0.0;
    double f_score = 0.0;
    double mean_matches = 0.0;
    int interval = 0;
    int pair_count = 0;
};

/// Multi-view consistency: keypoint-matching stability rescaled by camera
/// speed. Videos with f_score below the discard threshold carry no signal
/// (nearly static scenes match almost everything) and are discarded rather
/// than scored.
inline MultiviewResult multiview_consistency(const VideoHandle& video, BackendSuite& backend,
                                             const Constants& consts = {}) {
    if (video.frame_count < 2)
        throw PreconditionError("multiview_consistency needs >= 2 frames");

    MultiviewResult result;
    const FlowStats flow = compute_flow_stats(video, backend, consts);
    result.f_score = flow.f_score;
    if (flow.discarded) {
        result.discarded = true;
        return result;
    }

    result.interval =
        matching_interval(video.fps, std::min(flow.f_score, consts.flow_interval_cap), consts);

    std::vector<MatchStats> matches;
    for (int a = 0; a + result.interval <= video.frame_count - 1; a += result.interval) {
        FrameRef fa{&video, a};
        FrameRef fb{&video, a + result.interval};
        KeypointSet ka = backend.extract_keypoints(fa);
        KeypointSet kb = backend.extract_keypoints(fb);
        MatchStats m = backend.match_keypoints(ka, kb);
        m.frame_a = a;
        m.frame_b = a + result.interval;
        matches.push_back(m);
    }
    if (matches.empty()) { // video shorter than one interval
        FrameRef fa{&video, 0};
        FrameRef fb{&video, video.frame_count - 1};
        KeypointSet ka = backend.extract_keypoints(fa);
        KeypointSet kb = backend.extract_keypoints(fb);
        MatchStats m = backend.match_keypoints(ka, kb);
        m.frame_b = video.frame_count - 1;
        matches.push_back(m);
    }

    double sum = 0.0;
    for (const auto& m : matches) sum += m.valid_matches;
    result.mean_matches = sum / static_cast<double>(matches.size());
    result.pair_count = static_cast<int>(matches.size());

    const double match_part = std::min(result.mean_matches, consts.match_cap) / consts.match_cap;
    const double flow_part = std::min(flow.f_score, consts.flow_score_cap) / consts.flow_score_cap;
    result.score = match_part * flow_part;
    return result;
}

} // namespace vbench2
