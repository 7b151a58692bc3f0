#include <doctest.h>

#include <cmath>

#include "helpers/fixtures.hpp"
#include "tripose/errors.hpp"
#include "tripose/features.hpp"
#include "tripose/peaks.hpp"
#include "tripose/synth.hpp"

using namespace tripose;

TEST_CASE("frontal scene projects the reference triangle scaled by 1/depth") {
    const TriangleModel tri{std::sqrt(5.0), std::sqrt(5.0), 2.0};
    const CameraModel camera{1.0, {0.0, 0.0}};
    const SyntheticScene scene = generate_scene(tri, {0, 0, 0}, {0, 0, 10}, camera);

    // Frontal template: L = (-1, 0), R = (1, 0), M = (0, 2); divided by z=10.
    CHECK(scene.proj_l.x == doctest::Approx(-0.1));
    CHECK(scene.proj_l.y == doctest::Approx(0.0));
    CHECK(scene.proj_r.x == doctest::Approx(0.1));
    CHECK(scene.proj_m.x == doctest::Approx(0.0));
    CHECK(scene.proj_m.y == doctest::Approx(0.2));
    CHECK(scene.normal.z == doctest::Approx(-1.0));
}

TEST_CASE("re-projecting the ground-truth vertices reproduces the projections") {
    const TriangleModel tri{1.3, 1.1, 0.9};
    const CameraModel camera{320.0, {160.0, 120.0}};
    const SyntheticScene scene =
        generate_scene(tri, {25.0, -10.0, 5.0}, {0.4, -0.3, 8.0}, camera);

    for (const auto& [point, proj] :
         {std::pair{scene.m, scene.proj_m}, {scene.l, scene.proj_l}, {scene.r, scene.proj_r}}) {
        const Vec2 re = camera.project(point);
        CHECK(std::abs(re.x - proj.x) < 1e-12 * std::max(1.0, std::abs(proj.x)));
        CHECK(std::abs(re.y - proj.y) < 1e-12 * std::max(1.0, std::abs(proj.y)));
    }

    // The generated sides match the triangle model exactly.
    CHECK((scene.m - scene.l).norm() == doctest::Approx(tri.a).epsilon(1e-12));
    CHECK((scene.m - scene.r).norm() == doctest::Approx(tri.b).epsilon(1e-12));
    CHECK((scene.l - scene.r).norm() == doctest::Approx(tri.c).epsilon(1e-12));
}

TEST_CASE("an in-plane roll rotates the frontal projection in place") {
    const TriangleModel tri{1.0, 1.0, 1.2};
    const CameraModel camera{100.0, {0.0, 0.0}};
    const SyntheticScene base = generate_scene(tri, {0, 0, 0}, {0, 0, 10}, camera);
    const SyntheticScene rolled = generate_scene(tri, {0, 0, 15.0}, {0, 0, 10}, camera);

    const double c = std::cos(deg_to_rad(15.0)), s = std::sin(deg_to_rad(15.0));
    for (const auto& [b, r] : {std::pair{base.proj_l, rolled.proj_l},
                               {base.proj_r, rolled.proj_r},
                               {base.proj_m, rolled.proj_m}}) {
        CHECK(r.x == doctest::Approx(c * b.x - s * b.y).epsilon(1e-12));
        CHECK(r.y == doctest::Approx(s * b.x + c * b.y).epsilon(1e-12));
    }
}

TEST_CASE("vertices behind the camera are rejected") {
    const TriangleModel tri{1, 1, 1};
    const CameraModel camera{100.0, {0, 0}};
    CHECK_THROWS_AS(generate_scene(tri, {0, 0, 0}, {0, 0, -5}, camera), Error);
    CHECK_THROWS_AS(generate_scene(tri, {0, 0, 0}, {0, 0, 0}, camera), Error);
}

TEST_CASE("fixture rendering is deterministic and respects the stamp") {
    PlantedSceneParams params;
    params.width = 64;
    params.height = 48;
    params.silhouette = {32, 24, 20, 18};
    params.noise_amplitude = 10;
    params.seed = 42;

    const auto templates = test::face_templates();
    const std::vector<PixelCoord> positions{{26, 18}, {38, 18}, {32, 30}};

    const PlantedScene a = render_planted_template(params, templates, positions);
    const PlantedScene b = render_planted_template(params, templates, positions);
    CHECK(a.image.samples == b.image.samples);
    CHECK(a.mask.inside == b.mask.inside);

    params.seed = 43;
    const PlantedScene c = render_planted_template(params, templates, positions);
    CHECK(a.image.samples != c.image.samples);

    // Noiseless stamp is exact at the anchor.
    params.noise_amplitude = 0;
    const PlantedScene clean = render_planted_template(params, templates, positions);
    CHECK(clean.image.at(26, 18, 0) == 16);
    CHECK(clean.image.at(38, 18, 0) == 48);
    CHECK(clean.image.at(32, 30, 0) == 80);
    CHECK(clean.mask.contains(32, 24));
    CHECK_FALSE(clean.mask.contains(0, 0));
}

TEST_CASE("templates outside the silhouette are rejected") {
    PlantedSceneParams params;
    params.width = 64;
    params.height = 48;
    params.silhouette = {32, 24, 10, 10};
    CHECK_THROWS_AS(
        render_planted_template(params, test::face_templates(), {{5, 5}, {38, 18}, {32, 30}}),
        Error);
}

TEST_CASE("a model trained on a planted template localizes it elsewhere") {
    const auto templates = test::face_templates();

    // Training scene: template at one anchor.
    PlantedSceneParams params;
    params.width = 96;
    params.height = 80;
    params.silhouette = {48, 40, 34, 30};
    params.interior = {144, 144, 144};
    const std::vector<PixelCoord> train_at{{40, 34}};
    const PlantedScene train_scene =
        render_planted_template(params, {templates[0]}, train_at);

    // Detection scene: same template planted at a different spot.
    const std::vector<PixelCoord> detect_at{{56, 46}};
    const PlantedScene detect_scene =
        render_planted_template(params, {templates[0]}, detect_at);

    const FeatureMask mask = load_mask_stencil(test::feature_stencil(templates[0]), "eye");
    const std::vector<int> thresholds{30, 30, 30};

    const Image train_sharp = minmax_sharpen(train_scene.image, train_scene.mask);
    const EdgePool train_pool = detect_color_edges(train_sharp, train_scene.mask, thresholds);
    const FeatureModel model = train_model({{&train_pool, &train_scene.mask, 40, 34}}, mask, 8, 8, 1e-6);

    const Image detect_sharp = minmax_sharpen(detect_scene.image, detect_scene.mask);
    const EdgePool detect_pool = detect_color_edges(detect_sharp, detect_scene.mask, thresholds);
    const LikelihoodMap map =
        build_likelihood_map(detect_pool, detect_scene.mask, model, DistanceMeasure::kullback);

    double best = 1e300;
    int bx = -1, by = -1;
    for (int y = 0; y < map.height; ++y)
        for (int x = 0; x < map.width; ++x)
            if (map.is_valid(x, y) && map.value(x, y) < best) {
                best = map.value(x, y);
                bx = x;
                by = y;
            }
    CHECK(std::abs(bx - 56) <= 1);
    CHECK(std::abs(by - 46) <= 1);
}
