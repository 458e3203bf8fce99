#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>

#include "vbench2/errors.hpp"

namespace vbench2 {

/// The 18 capability dimensions, grouped under 5 categories.
enum class DimensionId {
    // Human Fidelity
    anatomy,
    clothes,
    identity,
    // Creativity
    diversity,
    composition,
    // Controllability
    dynamic_spatial,
    dynamic_attribute,
    motion_order,
    human_interaction,
    complex_landscape,
    complex_plot,
    camera_motion,
    // Physics
    mechanics,
    material,
    thermotics,
    multiview_consistency,
    // Commonsense
    motion_rationality,
    instance_preservation,
};

enum class Category {
    human_fidelity,
    creativity,
    controllability,
    physics,
    commonsense,
};

/// How a dimension is scored. text_alignment is the base caption-then-judge
/// scheme; sequential/ordered/interaction are structured variants built on
/// top of it.
enum class EvalScheme {
    text_alignment,
    multi_qa,
    sequential_alignment,
    ordered_action,
    interaction_check,
    camera_track,
    multiview_geometry,
    identity_track,
    anatomy_detect,
    diversity_set,
    instance_count,
};

inline constexpr int kDimensionCount = 18;
inline constexpr int kCategoryCount = 5;
inline constexpr int kSchemeCount = 11;

constexpr std::array<DimensionId, kDimensionCount> all_dimensions() {
    return {
        DimensionId::anatomy,
        DimensionId::clothes,
        DimensionId::identity,
        DimensionId::diversity,
        DimensionId::composition,
        DimensionId::dynamic_spatial,
        DimensionId::dynamic_attribute,
        DimensionId::motion_order,
        DimensionId::human_interaction,
        DimensionId::complex_landscape,
        DimensionId::complex_plot,
        DimensionId::camera_motion,
        DimensionId::mechanics,
        DimensionId::material,
        DimensionId::thermotics,
        DimensionId::multiview_consistency,
        DimensionId::motion_rationality,
        DimensionId::instance_preservation,
    };
}

constexpr std::string_view to_string(DimensionId d) {
    switch (d) {
        case DimensionId::anatomy: return "anatomy";
        case DimensionId::clothes: return "clothes";
        case DimensionId::identity: return "identity";
        case DimensionId::diversity: return "diversity";
        case DimensionId::composition: return "composition";
        case DimensionId::dynamic_spatial: return "dynamic_spatial";
        case DimensionId::dynamic_attribute: return "dynamic_attribute";
        case DimensionId::motion_order: return "motion_order";
        case DimensionId::human_interaction: return "human_interaction";
        case DimensionId::complex_landscape: return "complex_landscape";
        case DimensionId::complex_plot: return "complex_plot";
        case DimensionId::camera_motion: return "camera_motion";
        case DimensionId::mechanics: return "mechanics";
        case DimensionId::material: return "material";
        case DimensionId::thermotics: return "thermotics";
        case DimensionId::multiview_consistency: return "multiview_consistency";
        case DimensionId::motion_rationality: return "motion_rationality";
        case DimensionId::instance_preservation: return "instance_preservation";
    }
    return "?";
}

/// Table-style display name.
constexpr std::string_view display_name(DimensionId d) {
    switch (d) {
        case DimensionId::anatomy: return "Human Anatomy";
        case DimensionId::clothes: return "Human Clothes";
        case DimensionId::identity: return "Human Identity";
        case DimensionId::diversity: return "Diversity";
        case DimensionId::composition: return "Composition";
        case DimensionId::dynamic_spatial: return "Dynamic Spatial Relationship";
        case DimensionId::dynamic_attribute: return "Dynamic Attribute";
        case DimensionId::motion_order: return "Motion Order Understanding";
        case DimensionId::human_interaction: return "Human Interaction";
        case DimensionId::complex_landscape: return "Complex Landscape";
        case DimensionId::complex_plot: return "Complex Plot";
        case DimensionId::camera_motion: return "Camera Motion";
        case DimensionId::mechanics: return "Mechanics";
        case DimensionId::material: return "Material";
        case DimensionId::thermotics: return "Thermotics";
        case DimensionId::multiview_consistency: return "Multi-view Consistency";
        case DimensionId::motion_rationality: return "Motion Rationality";
        case DimensionId::instance_preservation: return "Instance Preservation";
    }
    return "?";
}

inline DimensionId dimension_from_string(std::string_view s) {
    for (DimensionId d : all_dimensions())
        if (to_string(d) == s) return d;
    throw SchemaError("unknown dimension: '" + std::string(s) + "'");
}

constexpr Category category_of(DimensionId d) {
    switch (d) {
        case DimensionId::anatomy:
        case DimensionId::clothes:
        case DimensionId::identity:
            return Category::human_fidelity;
        case DimensionId::diversity:
        case DimensionId::composition:
            return Category::creativity;
        case DimensionId::dynamic_spatial:
        case DimensionId::dynamic_attribute:
        case DimensionId::motion_order:
        case DimensionId::human_interaction:
        case DimensionId::complex_landscape:
        case DimensionId::complex_plot:
        case DimensionId::camera_motion:
            return Category::controllability;
        case DimensionId::mechanics:
        case DimensionId::material:
        case DimensionId::thermotics:
        case DimensionId::multiview_consistency:
            return Category::physics;
        case DimensionId::motion_rationality:
        case DimensionId::instance_preservation:
            return Category::commonsense;
    }
    return Category::commonsense;
}

constexpr std::string_view to_string(Category c) {
    switch (c) {
        case Category::human_fidelity: return "human_fidelity";
        case Category::creativity: return "creativity";
        case Category::controllability: return "controllability";
        case Category::physics: return "physics";
        case Category::commonsense: return "commonsense";
    }
    return "?";
}

/// The scheme each dimension is scored with.
constexpr EvalScheme scheme_of(DimensionId d) {
    switch (d) {
        case DimensionId::anatomy: return EvalScheme::anatomy_detect;
        case DimensionId::clothes: return EvalScheme::multi_qa;
        case DimensionId::identity: return EvalScheme::identity_track;
        case DimensionId::diversity: return EvalScheme::diversity_set;
        case DimensionId::composition: return EvalScheme::multi_qa;
        case DimensionId::dynamic_spatial: return EvalScheme::multi_qa;
        case DimensionId::dynamic_attribute: return EvalScheme::multi_qa;
        case DimensionId::motion_order: return EvalScheme::ordered_action;
        case DimensionId::human_interaction: return EvalScheme::interaction_check;
        case DimensionId::complex_landscape: return EvalScheme::sequential_alignment;
        case DimensionId::complex_plot: return EvalScheme::sequential_alignment;
        case DimensionId::camera_motion: return EvalScheme::camera_track;
        case DimensionId::mechanics: return EvalScheme::multi_qa;
        case DimensionId::material: return EvalScheme::multi_qa;
        case DimensionId::thermotics: return EvalScheme::multi_qa;
        case DimensionId::multiview_consistency: return EvalScheme::multiview_geometry;
        case DimensionId::motion_rationality: return EvalScheme::multi_qa;
        case DimensionId::instance_preservation: return EvalScheme::instance_count;
    }
    return EvalScheme::multi_qa;
}

constexpr std::string_view to_string(EvalScheme s) {
    switch (s) {
        case EvalScheme::text_alignment: return "text_alignment";
        case EvalScheme::multi_qa: return "multi_qa";
        case EvalScheme::sequential_alignment: return "sequential_alignment";
        case EvalScheme::ordered_action: return "ordered_action";
        case EvalScheme::interaction_check: return "interaction_check";
        case EvalScheme::camera_track: return "camera_track";
        case EvalScheme::multiview_geometry: return "multiview_geometry";
        case EvalScheme::identity_track: return "identity_track";
        case EvalScheme::anatomy_detect: return "anatomy_detect";
        case EvalScheme::diversity_set: return "diversity_set";
        case EvalScheme::instance_count: return "instance_count";
    }
    return "?";
}

/// The nine camera movement targets.
enum class MotionLabel {
    pan_left,
    pan_right,
    tilt_up,
    tilt_down,
    zoom_in,
    zoom_out,
    static_shot,
    orbit,
    oblique_airborne_dolly,
};

inline constexpr int kMotionLabelCount = 9;

constexpr std::array<MotionLabel, kMotionLabelCount> all_motion_labels() {
    return {
        MotionLabel::pan_left,  MotionLabel::pan_right,   MotionLabel::tilt_up,
        MotionLabel::tilt_down, MotionLabel::zoom_in,     MotionLabel::zoom_out,
        MotionLabel::static_shot, MotionLabel::orbit,
        MotionLabel::oblique_airborne_dolly,
    };
}

constexpr std::string_view to_string(MotionLabel m) {
    switch (m) {
        case MotionLabel::pan_left: return "pan_left";
        case MotionLabel::pan_right: return "pan_right";
        case MotionLabel::tilt_up: return "tilt_up";
        case MotionLabel::tilt_down: return "tilt_down";
        case MotionLabel::zoom_in: return "zoom_in";
        case MotionLabel::zoom_out: return "zoom_out";
        case MotionLabel::static_shot: return "static";
        case MotionLabel::orbit: return "orbit";
        case MotionLabel::oblique_airborne_dolly: return "oblique_airborne_dolly";
    }
    return "?";
}

inline MotionLabel motion_label_from_string(std::string_view s) {
    for (MotionLabel m : all_motion_labels())
        if (to_string(m) == s) return m;
    throw SchemaError("unknown motion label: '" + std::string(s) + "'");
}

/// Schemes a dimension drives, directly or through the caption/judge
/// primitive composed by the sequential, ordered and interaction engines.
inline std::set<EvalScheme> schemes_exercised_by(DimensionId d) {
    EvalScheme primary = scheme_of(d);
    std::set<EvalScheme> out{primary};
    switch (primary) {
        case EvalScheme::sequential_alignment:
        case EvalScheme::ordered_action:
        case EvalScheme::interaction_check:
            out.insert(EvalScheme::text_alignment);
            break;
        default:
            break;
    }
    return out;
}

} // namespace vbench2
