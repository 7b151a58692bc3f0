#include "tripose/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tripose/errors.hpp"

namespace tripose {

SyntheticScene generate_scene(const TriangleModel& tri, const EulerAngles& rotation,
                              const Vec3& translation, const CameraModel& camera) {
    tri.validate();
    if (camera.focal_length <= 0.0)
        throw Error(Errc::config, "camera focal length must be positive");

    // Frontal reference triangle: L and R on the x axis, M below (y down).
    const double xm = (tri.a * tri.a - tri.b * tri.b) / (2.0 * tri.c);
    const double ym2 = tri.a * tri.a - (xm + tri.c / 2.0) * (xm + tri.c / 2.0);
    if (ym2 <= 0.0) throw Error(Errc::invalid_argument, "triangle sides admit no planar apex");
    const Vec3 l0{-tri.c / 2.0, 0.0, 0.0};
    const Vec3 r0{tri.c / 2.0, 0.0, 0.0};
    const Vec3 m0{xm, std::sqrt(ym2), 0.0};

    const Mat3 rot = rotation_zyx(rotation);
    SyntheticScene scene;
    scene.tri = tri;
    scene.rotation = rotation;
    scene.translation = translation;
    scene.camera = camera;
    scene.m = rot.apply(m0) + translation;
    scene.l = rot.apply(l0) + translation;
    scene.r = rot.apply(r0) + translation;
    for (const Vec3* p : {&scene.m, &scene.l, &scene.r})
        if (p->z <= 0.0)
            throw Error(Errc::invalid_argument, "synthetic vertex fell behind the camera");

    scene.proj_m = camera.project(scene.m);
    scene.proj_l = camera.project(scene.l);
    scene.proj_r = camera.project(scene.r);
    const Vec2 dl = scene.proj_l - scene.proj_m;
    const Vec2 dr = scene.proj_r - scene.proj_m;
    if (std::abs(dl.x * dr.y - dl.y * dr.x) < 1e-12)
        throw Error(Errc::invalid_argument, "synthetic projections are collinear");

    scene.depth_m = scene.m.norm();
    scene.depth_l = scene.l.norm();
    scene.depth_r = scene.r.norm();
    Vec3 n = (scene.l - scene.m).cross(scene.r - scene.m).normalized();
    if (n.z > 0.0) n = n * -1.0;
    scene.normal = n;
    return scene;
}

PlantedScene render_planted_template(const PlantedSceneParams& params,
                                     const std::vector<PlantedTemplate>& templates,
                                     const std::vector<PixelCoord>& positions) {
    if (templates.size() != positions.size())
        throw Error(Errc::invalid_argument, "need one anchor per planted template");
    if (params.width <= 0 || params.height <= 0)
        throw Error(Errc::invalid_argument, "canvas dimensions must be positive");

    const EllipseSilhouette& e = params.silhouette;
    if (e.rx <= 0.0 || e.ry <= 0.0)
        throw Error(Errc::invalid_argument, "silhouette ellipse needs positive radii");

    PlantedScene out;
    out.image = Image::make(params.width, params.height, 3);
    out.mask.width = params.width;
    out.mask.height = params.height;
    out.mask.inside.assign(static_cast<std::size_t>(params.width) * params.height, 0);

    for (int y = 0; y < params.height; ++y) {
        for (int x = 0; x < params.width; ++x) {
            const double nx = (x - e.cx) / e.rx;
            const double ny = (y - e.cy) / e.ry;
            const bool inside = nx * nx + ny * ny <= 1.0;
            if (inside) out.mask.inside[static_cast<std::size_t>(y) * params.width + x] = 1;
            for (int b = 0; b < 3; ++b)
                out.image.at(x, y, b) = inside ? params.interior[b] : params.background[b];
        }
    }

    for (std::size_t i = 0; i < templates.size(); ++i) {
        const PlantedTemplate& tpl = templates[i];
        if (tpl.stencil.bands != 1 || tpl.pattern.bands != 3 ||
            tpl.stencil.width != tpl.pattern.width || tpl.stencil.height != tpl.pattern.height)
            throw Error(Errc::invalid_argument,
                        "planted template needs a 1-band stencil and matching 3-band pattern");
        const int ax = tpl.stencil.width / 2;
        const int ay = tpl.stencil.height / 2;
        for (int ty = 0; ty < tpl.stencil.height; ++ty) {
            for (int tx = 0; tx < tpl.stencil.width; ++tx) {
                if (tpl.stencil.at(tx, ty) <= 127) continue;
                const int x = positions[i].x + tx - ax;
                const int y = positions[i].y + ty - ay;
                if (!out.image.in_bounds(x, y) || !out.mask.contains(x, y))
                    throw Error(Errc::invalid_argument,
                                "planted template exits the silhouette interior");
                for (int b = 0; b < 3; ++b) out.image.at(x, y, b) = tpl.pattern.at(tx, ty, b);
            }
        }
    }

    if (params.noise_amplitude > 0) {
        // Raw engine draws with a pinned modulo mapping keep the output
        // bit-identical across standard libraries.
        std::mt19937_64 rng(params.seed);
        const std::uint64_t span = 2 * static_cast<std::uint64_t>(params.noise_amplitude) + 1;
        for (std::uint8_t& s : out.image.samples) {
            const int noise = static_cast<int>(rng() % span) - params.noise_amplitude;
            s = static_cast<std::uint8_t>(std::clamp(static_cast<int>(s) + noise, 0, 255));
        }
    }
    return out;
}

}  // namespace tripose
