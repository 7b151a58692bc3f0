#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tripose/features.hpp"
#include "tripose/pose.hpp"

namespace tripose {

// Forward-projected triangle with exact ground truth; the pose-solver oracle.
struct SyntheticScene {
    TriangleModel tri;
    EulerAngles rotation;
    Vec3 translation;
    CameraModel camera;
    Vec2 proj_m, proj_l, proj_r;  // exact, unrounded
    Vec3 m, l, r;
    double depth_m = 0.0, depth_l = 0.0, depth_r = 0.0;
    Vec3 normal;                  // unit, z <= 0
};

// Frontal reference triangle (L, R symmetric on the x axis, M below with
// y > 0) rotated by Z(roll)-Y(yaw)-X(pitch), translated, and projected.
SyntheticScene generate_scene(const TriangleModel& tri, const EulerAngles& rotation,
                              const Vec3& translation, const CameraModel& camera);

// Intensity patch stamped wherever the stencil is set.
struct PlantedTemplate {
    Image pattern;  // 3-band
    Image stencil;  // 1-band, sample > 127 = stamped
};

struct EllipseSilhouette {
    double cx = 0.0, cy = 0.0;
    double rx = 0.0, ry = 0.0;
};

struct PlantedSceneParams {
    int width = 320;
    int height = 240;
    EllipseSilhouette silhouette;
    std::array<std::uint8_t, 3> background{200, 200, 200};
    std::array<std::uint8_t, 3> interior{150, 150, 150};
    int noise_amplitude = 0;      // uniform per-sample noise in [-amp, +amp]
    std::uint64_t seed = 0;
};

struct PlantedScene {
    Image image;           // 3-band
    SilhouetteMask mask;
};

// Deterministic fixture renderer: flat background, flat ellipse interior,
// templates stamped at the anchors, optional clamped uniform noise.
PlantedScene render_planted_template(const PlantedSceneParams& params,
                                     const std::vector<PlantedTemplate>& templates,
                                     const std::vector<PixelCoord>& positions);

}  // namespace tripose
