// Shared synthetic-fixture builders for the end-to-end tests.
#pragma once

#include <cmath>
#include <vector>

#include "tripose/synth.hpp"

namespace tripose::test {

// Disk-shaped intensity blob; disks keep edge normals spread over all angle
// bins, so bin-boundary jitter under noise stays small.
inline PlantedTemplate disk_template(int radius, std::uint8_t level) {
    const int side = 2 * radius + 3;
    PlantedTemplate tpl;
    tpl.stencil = Image::make(side, side, 1, 0);
    tpl.pattern = Image::make(side, side, 3, level);
    const int c = side / 2;
    for (int y = 0; y < side; ++y)
        for (int x = 0; x < side; ++x)
            if ((x - c) * (x - c) + (y - c) * (y - c) <= radius * radius)
                tpl.stencil.at(x, y) = 255;
    return tpl;
}

// Feature order is (left-eye, right-eye, mouth-nose). Distinct intensities
// keep the brightness bins apart; the mouth is a wider blob.
inline std::vector<PlantedTemplate> face_templates() {
    return {disk_template(3, 16), disk_template(3, 48), disk_template(4, 80)};
}

// Stencil = template footprint dilated by one pixel, so the signature sees
// both sides of the template's boundary edge.
inline Image feature_stencil(const PlantedTemplate& tpl) {
    Image stencil = Image::make(tpl.stencil.width, tpl.stencil.height, 1, 0);
    for (int y = 0; y < stencil.height; ++y)
        for (int x = 0; x < stencil.width; ++x) {
            bool set = false;
            for (int dy = -1; dy <= 1 && !set; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (tpl.stencil.in_bounds(nx, ny) && tpl.stencil.at(nx, ny) > 127) {
                        set = true;
                        break;
                    }
                }
            if (set) stencil.at(x, y) = 255;
        }
    return stencil;
}

struct FaceFixture {
    SyntheticScene scene;
    PlantedScene planted;
    std::vector<PixelCoord> positions;  // (L, R, M), integer planted anchors
};

// Renders a posed fixture whose silhouette center is displaced against the
// feature centroid along the true normal's image projection, so the shift
// vector points the pose selector at the right branch.
inline FaceFixture make_face_fixture(const TriangleModel& tri, const EulerAngles& rotation,
                                     const Vec3& translation, const CameraModel& camera,
                                     int noise_amplitude, std::uint64_t seed) {
    FaceFixture fx;
    fx.scene = generate_scene(tri, rotation, translation, camera);

    auto round_pt = [](const Vec2& p) {
        return PixelCoord{static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
    };
    fx.positions = {round_pt(fx.scene.proj_l), round_pt(fx.scene.proj_r),
                    round_pt(fx.scene.proj_m)};

    Vec2 centroid{0.0, 0.0};
    for (const PixelCoord& p : fx.positions)
        centroid = centroid + Vec2{static_cast<double>(p.x), static_cast<double>(p.y)};
    centroid = centroid * (1.0 / 3.0);

    const double nxy = std::hypot(fx.scene.normal.x, fx.scene.normal.y);
    Vec2 center = centroid;
    if (nxy > 1e-9) {
        const double shift = 40.0 * nxy;
        center = centroid - Vec2{fx.scene.normal.x / nxy, fx.scene.normal.y / nxy} * shift;
    }

    double reach = 0.0;
    for (const PixelCoord& p : fx.positions)
        reach = std::max(reach, (Vec2{static_cast<double>(p.x), static_cast<double>(p.y)} - center).norm());

    PlantedSceneParams params;
    params.width = static_cast<int>(camera.principal_point.x * 2);
    params.height = static_cast<int>(camera.principal_point.y * 2);
    params.interior = {144, 144, 144};
    params.background = {208, 208, 208};
    params.silhouette = {center.x, center.y, reach + 14.0, (reach + 14.0) * 1.2};
    params.noise_amplitude = noise_amplitude;
    params.seed = seed;

    fx.planted = render_planted_template(params, face_templates(), fx.positions);
    return fx;
}

// A flat training canvas: no pose, just the three templates inside an ellipse.
inline FaceFixture make_training_fixture(const CameraModel& camera) {
    FaceFixture fx;
    const double cx = camera.principal_point.x;
    const double cy = camera.principal_point.y;
    fx.positions = {{static_cast<int>(cx) - 35, static_cast<int>(cy) - 20},
                    {static_cast<int>(cx) + 35, static_cast<int>(cy) - 20},
                    {static_cast<int>(cx), static_cast<int>(cy) + 35}};

    PlantedSceneParams params;
    params.width = static_cast<int>(cx * 2);
    params.height = static_cast<int>(cy * 2);
    params.interior = {144, 144, 144};
    params.background = {208, 208, 208};
    params.silhouette = {cx, cy, 72.0, 88.0};
    fx.planted = render_planted_template(params, face_templates(), fx.positions);
    return fx;
}

}  // namespace tripose::test
