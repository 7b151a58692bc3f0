#include "tripose/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "tripose/errors.hpp"

namespace tripose {

using nlohmann::json;

namespace {

constexpr const char* kToolName = "tripose";
constexpr const char* kToolVersion = "0.1.0";

std::vector<int> band_thresholds(const std::vector<int>& configured, int bands) {
    std::vector<int> t(bands);
    for (int b = 0; b < bands; ++b)
        t[b] = configured[std::min<std::size_t>(b, configured.size() - 1)];
    return t;
}

SilhouetteMask load_region(const Image& img, const std::filesystem::path& mask_path) {
    if (mask_path.empty()) return SilhouetteMask::full(img.width, img.height);
    SilhouetteMask mask = load_mask(mask_path);
    if (mask.width != img.width || mask.height != img.height)
        throw Error(Errc::invalid_argument,
                    "mask dimensions do not match the image: " + mask_path.string());
    if (mask.interior_count() == 0)
        throw Error(Errc::invalid_argument, "mask has no interior pixels: " + mask_path.string());
    return mask;
}

json solution_to_json(const PoseSolution& s) {
    return {
        {"depths", {{"m", s.depth_m}, {"l", s.depth_l}, {"r", s.depth_r}}},
        {"points",
         {{"m", {s.m.x, s.m.y, s.m.z}},
          {"l", {s.l.x, s.l.y, s.l.z}},
          {"r", {s.r.x, s.r.y, s.r.z}}}},
        {"normal", {s.normal.x, s.normal.y, s.normal.z}},
        {"residual", s.residual},
    };
}

json report_skeleton(const std::vector<PoseSolution>& solutions, std::size_t selected,
                     const ShiftVector& shift, const EulerAngles& angles) {
    json sols = json::array();
    for (const PoseSolution& s : solutions) sols.push_back(solution_to_json(s));
    return {
        {"schema_version", 1},
        {"solutions", std::move(sols)},
        {"selected", selected},
        {"angles_deg",
         {{"yaw", angles.yaw_deg}, {"pitch", angles.pitch_deg}, {"roll", angles.roll_deg}}},
        {"shift_vector", {{"s", {shift.s.x, shift.s.y}}, {"near_frontal", shift.near_frontal}}},
    };
}

void draw_cross(Image& img, int cx, int cy, const std::array<std::uint8_t, 3>& color) {
    for (int d = -4; d <= 4; ++d) {
        for (auto [x, y] : {std::pair{cx + d, cy}, std::pair{cx, cy + d}}) {
            if (!img.in_bounds(x, y)) continue;
            for (int b = 0; b < 3; ++b) img.at(x, y, b) = color[b];
        }
    }
}

void draw_segment(Image& img, Vec2 from, Vec2 to, const std::array<std::uint8_t, 3>& color) {
    const int steps = static_cast<int>(std::ceil((to - from).norm())) + 1;
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        const int x = static_cast<int>(std::lround(from.x + (to.x - from.x) * t));
        const int y = static_cast<int>(std::lround(from.y + (to.y - from.y) * t));
        if (!img.in_bounds(x, y)) continue;
        for (int b = 0; b < 3; ++b) img.at(x, y, b) = color[b];
    }
}

void write_overlay(const Image& input, const std::filesystem::path& path,
                   const std::vector<Vec2>& positions, const PoseSolution& selected) {
    Image canvas = Image::make(input.width, input.height, 3);
    for (int y = 0; y < input.height; ++y)
        for (int x = 0; x < input.width; ++x)
            for (int b = 0; b < 3; ++b)
                canvas.at(x, y, b) = input.at(x, y, input.bands == 3 ? b : 0);

    static constexpr std::array<std::array<std::uint8_t, 3>, 3> kColors{
        {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}}};
    Vec2 centroid{0.0, 0.0};
    for (std::size_t i = 0; i < positions.size(); ++i) {
        draw_cross(canvas, static_cast<int>(std::lround(positions[i].x)),
                   static_cast<int>(std::lround(positions[i].y)), kColors[i % kColors.size()]);
        centroid = centroid + positions[i];
    }
    centroid = centroid * (1.0 / static_cast<double>(positions.size()));

    const double nxy = std::hypot(selected.normal.x, selected.normal.y);
    if (nxy > 1e-9) {
        const Vec2 dir{selected.normal.x / nxy, selected.normal.y / nxy};
        draw_segment(canvas, centroid, centroid + dir * 40.0, {255, 255, 0});
    }
    save_image(canvas, path);
}

struct EdgeStage {
    Image sharpened;
    SilhouetteMask region;
    EdgePool pool;
};

EdgeStage run_edge_stage(const PipelineConfig& config, const std::filesystem::path& image_path,
                         const std::filesystem::path& mask_path) {
    const Image img = load_image(image_path);
    EdgeStage stage{Image{}, load_region(img, mask_path), EdgePool{}};
    stage.sharpened = minmax_sharpen(img, stage.region);
    stage.pool = detect_color_edges(stage.sharpened, stage.region,
                                    band_thresholds(config.edge_thresholds, img.bands));
    return stage;
}

}  // namespace

std::vector<LabeledSample> load_samples(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open samples file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(Errc::io, "malformed samples JSON " + path.string() + ": " + e.what());
    }
    try {
        std::vector<LabeledSample> samples;
        const std::filesystem::path base = path.parent_path();
        auto resolve = [&](const std::filesystem::path& p) {
            return p.is_absolute() ? p : base / p;
        };
        for (const json& s : j) {
            LabeledSample sample;
            sample.image_path = resolve(s.at("image").get<std::string>());
            if (s.contains("mask")) sample.mask_path = resolve(s.at("mask").get<std::string>());
            for (const auto& [name, anchor] : s.at("anchors").items())
                sample.anchors[name] = {anchor.at(0).get<int>(), anchor.at(1).get<int>()};
            samples.push_back(std::move(sample));
        }
        return samples;
    } catch (const json::exception& e) {
        throw Error(Errc::io, "invalid samples JSON " + path.string() + ": " + e.what());
    }
}

std::vector<int> run_train(const PipelineConfig& config, const std::vector<LabeledSample>& samples) {
    config.require_features();
    if (samples.empty()) throw Error(Errc::invalid_argument, "training needs at least one sample");

    struct PreparedSample {
        EdgeStage stage;
        const LabeledSample* labels;
    };
    std::vector<PreparedSample> prepared;
    for (const LabeledSample& sample : samples) {
        try {
            prepared.push_back({run_edge_stage(config, sample.image_path, sample.mask_path), &sample});
        } catch (const Error& e) {
            throw Error(e.code(), "sample " + sample.image_path.string() + ": " + e.what());
        }
    }

    std::vector<int> counts;
    for (const FeatureConfig& feature : config.features) {
        if (feature.stencil_path.empty())
            throw Error(Errc::config, "feature '" + feature.name + "' has no stencil for training");
        const FeatureMask mask = load_mask_stencil(load_image(feature.stencil_path), feature.name);

        std::vector<TrainingSample> training;
        for (const PreparedSample& p : prepared) {
            const auto it = p.labels->anchors.find(feature.name);
            if (it == p.labels->anchors.end())
                throw Error(Errc::invalid_argument,
                            "sample " + p.labels->image_path.string() + " lacks an anchor for feature '" +
                                feature.name + "'");
            training.push_back({&p.stage.pool, &p.stage.region, it->second.x, it->second.y});
        }
        FeatureModel model;
        try {
            model = train_model(training, mask, config.angle_bins, config.brightness_bins,
                                config.model_floor);
        } catch (const Error& e) {
            throw Error(e.code(), "feature '" + feature.name + "': " + e.what());
        }
        save_model(model, feature.model_path);
        counts.push_back(model.training_count);
    }
    return counts;
}

DetectResult run_detect(const PipelineConfig& config, const DetectOptions& options) {
    config.require_features();
    config.require_constellation();
    config.require_camera_triangle();

    std::vector<FeatureModel> models;
    for (const FeatureConfig& feature : config.features) models.push_back(load_model(feature.model_path));

    const Image img = load_image(options.image_path);
    const SilhouetteMask region =
        load_region(img, options.mask_path.value_or(std::filesystem::path{}));
    const Image sharpened = minmax_sharpen(img, region);
    const EdgePool pool = detect_color_edges(sharpened, region,
                                             band_thresholds(config.edge_thresholds, img.bands));
    if (pool.points().empty())
        throw Error(Errc::no_edge_points, "no edge points found inside the search region");

    const DistanceMeasure measure = options.measure.value_or(config.measure);
    std::vector<std::vector<Peak>> candidates;
    for (std::size_t i = 0; i < config.features.size(); ++i) {
        const LikelihoodMap map = build_likelihood_map(pool, region, models[i], measure);
        const ScoreGrid grid = invert_map(map);
        const int radius = config.features[i].suppression_radius.value_or(
            models[i].mask.suppression_radius());
        const int max_peaks = options.max_peaks.value_or(config.features[i].max_peaks);
        std::vector<Peak> peaks = suppress_non_maxima(grid, radius, max_peaks);
        if (peaks.empty())
            throw Error(Errc::no_valid_peak,
                        "feature '" + config.features[i].name + "' produced no candidate peaks");
        candidates.push_back(std::move(peaks));
    }

    const Constellation constellation = best_constellation(candidates, config.constellation);

    DetectResult result;
    result.positions = constellation.positions;

    result.shift = shift_vector(result.positions, region, config.frontal_offset,
                                config.near_frontal_eps);

    CameraModel camera = config.camera;
    if (!config.has_principal_point)
        camera.principal_point = {img.width / 2.0, img.height / 2.0};

    // Feature order is (L, R, M); the solver takes (M, L, R).
    result.solutions = solve_triangle_pose(result.positions[2], result.positions[0],
                                           result.positions[1], camera, config.triangle,
                                           config.solver_tol);
    result.selected = select_pose(result.solutions, result.shift);
    result.angles = pose_angles(result.solutions[result.selected]);

    json report = report_skeleton(result.solutions, result.selected, result.shift, result.angles);
    json constellation_json;
    for (std::size_t i = 0; i < config.features.size(); ++i)
        constellation_json[config.features[i].name] = {constellation.positions[i].x,
                                                       constellation.positions[i].y};
    report["constellation"] = std::move(constellation_json);
    report["metadata"] = {
        {"tool", kToolName},
        {"tool_version", kToolVersion},
        {"image", options.image_path.string()},
        {"mask", options.mask_path ? options.mask_path->string() : ""},
        {"measure", measure == DistanceMeasure::l1 ? "l1" : "kullback"},
    };
    result.report = report.dump(2) + "\n";

    if (options.overlay_path)
        write_overlay(img, *options.overlay_path, result.positions,
                      result.solutions[result.selected]);
    return result;
}

PoseQueryResult run_pose(const PipelineConfig& config, const Vec2& m, const Vec2& l,
                         const Vec2& r, std::optional<Vec2> shift) {
    config.require_camera_triangle();
    if (!config.has_principal_point)
        throw Error(Errc::config,
                    "standalone pose queries need an explicit camera principal_point");

    PoseQueryResult result;
    result.solutions = solve_triangle_pose(m, l, r, config.camera, config.triangle,
                                           config.solver_tol);
    if (shift) {
        result.shift.s = *shift;
        result.shift.near_frontal = shift->norm() < config.near_frontal_eps;
    } else {
        result.shift.near_frontal = true;
    }
    result.selected = select_pose(result.solutions, result.shift);
    result.angles = pose_angles(result.solutions[result.selected]);

    json report = report_skeleton(result.solutions, result.selected, result.shift, result.angles);
    report["constellation"] = {{"m", {m.x, m.y}}, {"l", {l.x, l.y}}, {"r", {r.x, r.y}}};
    report["metadata"] = {{"tool", kToolName}, {"tool_version", kToolVersion}};
    result.report = report.dump(2) + "\n";
    return result;
}

}  // namespace tripose
