#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tripose/constellation.hpp"
#include "tripose/features.hpp"
#include "tripose/pose.hpp"

namespace tripose {

struct FeatureConfig {
    std::string name;
    std::filesystem::path model_path;            // resolved against the config file
    std::filesystem::path stencil_path;          // P5 stencil; required for training
    std::optional<int> suppression_radius;       // overrides the mask-derived radius
    int max_peaks = 5;
};

struct SideRange {
    double lo = 0.0;
    double hi = 0.0;
};

// Every free parameter of the pipeline in one reproducible artifact.
// Precedence: CLI flags > config file > defaults.
struct PipelineConfig {
    std::vector<int> edge_thresholds{30, 30, 30};
    int angle_bins = 8;
    int brightness_bins = 8;
    DistanceMeasure measure = DistanceMeasure::kullback;
    double model_floor = 1e-6;

    std::vector<FeatureConfig> features;

    ConstellationModel constellation;
    bool has_constellation = false;

    CameraModel camera;
    bool has_camera = false;
    bool has_principal_point = false;  // false: default to the image center

    TriangleModel triangle;
    bool has_triangle = false;
    std::optional<SideRange> side_range_a, side_range_b, side_range_c;

    Vec2 frontal_offset{0.0, 0.0};
    double near_frontal_eps = 2.0;
    double solver_tol = 1e-9;

    // Stage-specific requirements; each throws Errc::config when unmet.
    void require_features() const;
    void require_constellation() const;
    void require_camera_triangle() const;
};

PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir);

}  // namespace tripose
