#include "tripose/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "tripose/errors.hpp"

namespace tripose {

using nlohmann::json;

void PipelineConfig::require_features() const {
    if (features.empty())
        throw Error(Errc::config, "config has no feature entries");
    for (const FeatureConfig& f : features) {
        if (f.name.empty()) throw Error(Errc::config, "feature entry without a name");
        if (f.model_path.empty())
            throw Error(Errc::config, "feature '" + f.name + "' has no model path");
        if (f.max_peaks < 1)
            throw Error(Errc::config, "feature '" + f.name + "' needs max_peaks >= 1");
        if (f.suppression_radius && *f.suppression_radius < 1)
            throw Error(Errc::config, "feature '" + f.name + "' needs suppression radius >= 1");
    }
}

void PipelineConfig::require_constellation() const {
    if (!has_constellation)
        throw Error(Errc::config, "config has no constellation model");
    constellation.validate();
    if (constellation.feature_count() != static_cast<int>(features.size()))
        throw Error(Errc::config, "constellation feature names do not match the feature list");
    for (std::size_t i = 0; i < features.size(); ++i)
        if (constellation.feature_names[i] != features[i].name)
            throw Error(Errc::config,
                        "constellation feature order must match the feature list order");
}

void PipelineConfig::require_camera_triangle() const {
    if (!has_camera) throw Error(Errc::config, "config has no camera block");
    if (camera.focal_length <= 0.0)
        throw Error(Errc::config, "camera focal length must be positive");
    if (!has_triangle) throw Error(Errc::config, "config has no triangle block");
    triangle.validate();
    auto check_range = [](const std::optional<SideRange>& range, double side, const char* name) {
        if (!range) return;
        if (range->lo > range->hi || range->lo <= 0.0)
            throw Error(Errc::config, std::string("invalid admissible range for side ") + name);
        if (side < range->lo || side > range->hi)
            throw Error(Errc::config,
                        std::string("triangle side ") + name + " falls outside its admissible range");
    };
    check_range(side_range_a, triangle.a, "a");
    check_range(side_range_b, triangle.b, "b");
    check_range(side_range_c, triangle.c, "c");
}

namespace {

DistanceMeasure parse_measure(const std::string& name) {
    if (name == "l1") return DistanceMeasure::l1;
    if (name == "kullback") return DistanceMeasure::kullback;
    throw Error(Errc::config, "unknown distance measure '" + name + "' (want l1 or kullback)");
}

Vec2 parse_vec2(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw Error(Errc::config, std::string(what) + " must be a [x, y] pair");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::optional<SideRange> parse_range(const json& tri, const char* key) {
    if (!tri.contains(key)) return std::nullopt;
    const json& r = tri.at(key);
    if (!r.is_array() || r.size() != 2)
        throw Error(Errc::config, std::string(key) + " must be a [lo, hi] pair");
    return SideRange{r.at(0).get<double>(), r.at(1).get<double>()};
}

}  // namespace

PipelineConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(Errc::config, std::string("malformed config JSON: ") + e.what());
    }

    try {
        PipelineConfig cfg;
        if (j.contains("edge_thresholds")) {
            cfg.edge_thresholds = j.at("edge_thresholds").get<std::vector<int>>();
            if (cfg.edge_thresholds.empty() || cfg.edge_thresholds.size() > 3)
                throw Error(Errc::config, "edge_thresholds needs 1 to 3 entries");
            for (int t : cfg.edge_thresholds)
                if (t < 0) throw Error(Errc::config, "edge thresholds must be non-negative");
        }
        cfg.angle_bins = j.value("angle_bins", cfg.angle_bins);
        cfg.brightness_bins = j.value("brightness_bins", cfg.brightness_bins);
        if (cfg.angle_bins < 1 || cfg.brightness_bins < 1)
            throw Error(Errc::config, "histogram bin counts must be >= 1");
        if (j.contains("measure")) cfg.measure = parse_measure(j.at("measure").get<std::string>());
        cfg.model_floor = j.value("model_floor", cfg.model_floor);
        if (cfg.model_floor <= 0.0) throw Error(Errc::config, "model_floor must be positive");

        for (const json& f : j.value("features", json::array())) {
            FeatureConfig fc;
            fc.name = f.at("name").get<std::string>();
            auto resolve = [&](const std::filesystem::path& p) {
                return p.is_absolute() ? p : base_dir / p;
            };
            fc.model_path = resolve(f.at("model").get<std::string>());
            if (f.contains("stencil")) fc.stencil_path = resolve(f.at("stencil").get<std::string>());
            if (f.contains("suppression_radius"))
                fc.suppression_radius = f.at("suppression_radius").get<int>();
            fc.max_peaks = f.value("max_peaks", fc.max_peaks);
            cfg.features.push_back(std::move(fc));
        }

        if (j.contains("constellation")) {
            const json& c = j.at("constellation");
            cfg.constellation.feature_names = c.at("feature_names").get<std::vector<std::string>>();
            cfg.constellation.mean_distances = c.at("mean_distances").get<std::vector<double>>();
            cfg.constellation.covariance = c.at("covariance").get<std::vector<double>>();
            cfg.constellation.chirality_check = c.value("chirality_check", true);
            cfg.constellation.validate();
            cfg.has_constellation = true;
        }

        if (j.contains("camera")) {
            const json& c = j.at("camera");
            cfg.camera.focal_length = c.at("focal_length").get<double>();
            if (cfg.camera.focal_length <= 0.0)
                throw Error(Errc::config, "camera focal length must be positive");
            if (c.contains("principal_point")) {
                cfg.camera.principal_point = parse_vec2(c.at("principal_point"), "principal_point");
                cfg.has_principal_point = true;
            }
            cfg.has_camera = true;
        }

        if (j.contains("triangle")) {
            const json& t = j.at("triangle");
            cfg.triangle.a = t.at("a").get<double>();
            cfg.triangle.b = t.at("b").get<double>();
            cfg.triangle.c = t.at("c").get<double>();
            cfg.triangle.validate();
            cfg.side_range_a = parse_range(t, "range_a");
            cfg.side_range_b = parse_range(t, "range_b");
            cfg.side_range_c = parse_range(t, "range_c");
            cfg.has_triangle = true;
        }

        if (j.contains("frontal_offset"))
            cfg.frontal_offset = parse_vec2(j.at("frontal_offset"), "frontal_offset");
        cfg.near_frontal_eps = j.value("near_frontal_eps", cfg.near_frontal_eps);
        if (cfg.near_frontal_eps < 0.0)
            throw Error(Errc::config, "near_frontal_eps must be non-negative");
        cfg.solver_tol = j.value("solver_tol", cfg.solver_tol);
        if (cfg.solver_tol <= 0.0) throw Error(Errc::config, "solver_tol must be positive");
        return cfg;
    } catch (const json::exception& e) {
        throw Error(Errc::config, std::string("invalid config JSON: ") + e.what());
    }
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::config, "cannot open config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text, path.parent_path());
}

}  // namespace tripose
