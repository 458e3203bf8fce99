#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbench2/errors.hpp"

namespace vbench2 {

/// Reference to one generated video sample. The canonical on-disk form is a
/// frame directory (frames as image files, plus an optional meta.json with
/// {"fps", "width", "height", "frames"}). Scorers only consume the metadata
/// and pass frame references through to the backend; pixel access is an
/// adapter concern.
struct VideoHandle {
    std::string id;        // stable identity used in backend fingerprints
    std::string path;      // frame directory (may be empty for synthetic handles)
    int frame_count = 0;
    double fps = 24.0;
    int width = 0;
    int height = 0;

    bool operator==(const VideoHandle&) const = default;
};

/// One frame of a video, addressed by index.
struct FrameRef {
    const VideoHandle* video = nullptr;
    int index = 0;

    std::string fingerprint() const {
        return (video ? video->id : std::string("?")) + "#" + std::to_string(index);
    }
};

/// Pixel rectangle (x, y, w, h).
struct Rect {
    int x = 0, y = 0, w = 0, h = 0;
    bool operator==(const Rect&) const = default;
};

inline std::string to_string(const Rect& r) {
    return std::to_string(r.x) + "," + std::to_string(r.y) + "," +
           std::to_string(r.w) + "," + std::to_string(r.h);
}

inline bool contains_center(const Rect& outer, const Rect& inner) {
    const double cx = inner.x + inner.w / 2.0;
    const double cy = inner.y + inner.h / 2.0;
    return cx >= outer.x && cx <= outer.x + outer.w &&
           cy >= outer.y && cy <= outer.y + outer.h;
}

/// A cropped patch of a frame (anomaly-scoring input).
struct FrameRegion {
    FrameRef frame;
    Rect box;
};

namespace detail {
inline bool is_frame_file(const std::filesystem::path& p) {
    static const char* exts[] = {".png", ".jpg", ".jpeg", ".bmp", ".ppm"};
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
    return std::any_of(std::begin(exts), std::end(exts), [&](const char* x) { return e == x; });
}
} // namespace detail

/// Opens a sample directory. Frame count comes from the frame files when
/// present, otherwise from meta.json's "frames" field.
inline VideoHandle open_video_dir(const std::string& dir, const std::string& id) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw ParseError("video directory not found: " + dir);

    VideoHandle v;
    v.id = id;
    v.path = dir;

    int files = 0;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && detail::is_frame_file(entry.path())) ++files;

    const fs::path meta_path = fs::path(dir) / "meta.json";
    if (fs::exists(meta_path)) {
        std::ifstream in(meta_path);
        nlohmann::json meta;
        try {
            in >> meta;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("bad meta.json in " + dir + ": " + e.what());
        }
        v.fps = meta.value("fps", v.fps);
        v.width = meta.value("width", 0);
        v.height = meta.value("height", 0);
        v.frame_count = meta.value("frames", files);
    } else {
        v.frame_count = files;
    }
    if (v.frame_count <= 0)
        throw ParseError("video at " + dir + " has no frames (no image files, no meta.json)");
    return v;
}

} // namespace vbench2
