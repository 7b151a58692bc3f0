// tripose CLI: train feature models, run the detection pipeline, solve
// standalone triangle-pose queries, and generate synthetic fixtures.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tripose/errors.hpp"
#include "tripose/pipeline.hpp"
#include "tripose/synth.hpp"

namespace {

using tripose::Errc;
using tripose::Error;

tripose::Vec2 parse_pair(const std::string& text, const char* what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw Error(Errc::invalid_argument, std::string(what) + " must be 'x,y'");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error(Errc::invalid_argument, std::string(what) + " must be 'x,y'");
    }
}

void emit_report(const std::string& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(Errc::io, "cannot open report file for writing: " + out_path);
    out << report;
}

std::optional<tripose::DistanceMeasure> parse_measure_flag(const std::string& measure) {
    if (measure.empty()) return std::nullopt;
    if (measure == "l1") return tripose::DistanceMeasure::l1;
    if (measure == "kullback") return tripose::DistanceMeasure::kullback;
    throw Error(Errc::invalid_argument, "--measure must be l1 or kullback");
}

int cmd_train(const std::string& config_path, const std::string& samples_path) {
    const tripose::PipelineConfig config = tripose::load_config(config_path);
    const auto samples = tripose::load_samples(samples_path);
    const std::vector<int> counts = tripose::run_train(config, samples);
    for (std::size_t i = 0; i < counts.size(); ++i)
        std::cout << config.features[i].name << ": trained on " << counts[i] << " sample"
                  << (counts[i] == 1 ? "" : "s") << " -> " << config.features[i].model_path.string()
                  << "\n";
    return 0;
}

int cmd_detect(const std::string& config_path, const std::string& image_path,
               const std::string& mask_path, const std::string& overlay_path,
               const std::string& measure, int top_k, const std::string& out_path) {
    tripose::PipelineConfig config = tripose::load_config(config_path);
    tripose::DetectOptions options;
    options.image_path = image_path;
    if (!mask_path.empty()) options.mask_path = mask_path;
    if (!overlay_path.empty()) options.overlay_path = overlay_path;
    options.measure = parse_measure_flag(measure);
    if (top_k > 0) options.max_peaks = top_k;
    const tripose::DetectResult result = tripose::run_detect(config, options);
    emit_report(result.report, out_path);
    return 0;
}

int cmd_pose(const std::string& config_path, const std::string& mouth, const std::string& left,
             const std::string& right, const std::string& shift, const std::string& out_path) {
    const tripose::PipelineConfig config = tripose::load_config(config_path);
    std::optional<tripose::Vec2> shift_vec;
    if (!shift.empty()) shift_vec = parse_pair(shift, "--shift");
    const tripose::PoseQueryResult result =
        tripose::run_pose(config, parse_pair(mouth, "--mouth"), parse_pair(left, "--left"),
                          parse_pair(right, "--right"), shift_vec);
    emit_report(result.report, out_path);
    return 0;
}

int cmd_synth(const std::string& config_path, const std::string& rotation,
              const std::string& translation, int noise, std::uint64_t seed,
              const std::string& out_prefix) {
    const tripose::PipelineConfig config = tripose::load_config(config_path);
    config.require_camera_triangle();
    if (!config.has_principal_point)
        throw Error(Errc::config, "synth needs an explicit camera principal_point");

    tripose::EulerAngles angles;
    {
        const auto first = rotation.find(',');
        const auto second = rotation.find(',', first + 1);
        if (first == std::string::npos || second == std::string::npos)
            throw Error(Errc::invalid_argument, "--rotation must be 'yaw,pitch,roll' degrees");
        angles.yaw_deg = std::stod(rotation.substr(0, first));
        angles.pitch_deg = std::stod(rotation.substr(first + 1, second - first - 1));
        angles.roll_deg = std::stod(rotation.substr(second + 1));
    }
    tripose::Vec3 t;
    {
        const auto first = translation.find(',');
        const auto second = translation.find(',', first + 1);
        if (first == std::string::npos || second == std::string::npos)
            throw Error(Errc::invalid_argument, "--translation must be 'x,y,z'");
        t.x = std::stod(translation.substr(0, first));
        t.y = std::stod(translation.substr(first + 1, second - first - 1));
        t.z = std::stod(translation.substr(second + 1));
    }

    const tripose::SyntheticScene scene =
        tripose::generate_scene(config.triangle, angles, t, config.camera);

    // Simple square feature blobs, distinct intensity per feature.
    const int side = 9;
    auto make_template = [&](std::uint8_t level) {
        tripose::PlantedTemplate tpl;
        tpl.stencil = tripose::Image::make(side, side, 1, 255);
        tpl.pattern = tripose::Image::make(side, side, 3, level);
        return tpl;
    };
    const std::vector<tripose::PlantedTemplate> templates{
        make_template(16), make_template(48), make_template(80)};

    auto round_pt = [](const tripose::Vec2& p) {
        return tripose::PixelCoord{static_cast<int>(std::lround(p.x)),
                                   static_cast<int>(std::lround(p.y))};
    };
    const std::vector<tripose::PixelCoord> positions{
        round_pt(scene.proj_l), round_pt(scene.proj_r), round_pt(scene.proj_m)};

    tripose::PlantedSceneParams params;
    params.width = static_cast<int>(config.camera.principal_point.x * 2);
    params.height = static_cast<int>(config.camera.principal_point.y * 2);
    params.noise_amplitude = noise;
    params.seed = seed;
    tripose::Vec2 centroid{0.0, 0.0};
    for (const auto& p : positions)
        centroid = centroid + tripose::Vec2{static_cast<double>(p.x), static_cast<double>(p.y)};
    centroid = centroid * (1.0 / 3.0);
    const double spread = std::max({(scene.proj_l - scene.proj_r).norm(),
                                    (scene.proj_l - scene.proj_m).norm(),
                                    (scene.proj_r - scene.proj_m).norm()});
    params.silhouette = {centroid.x, centroid.y, spread * 1.6, spread * 1.9};

    const tripose::PlantedScene planted =
        tripose::render_planted_template(params, templates, positions);

    tripose::save_image(planted.image, out_prefix + ".ppm");
    tripose::save_mask(planted.mask, out_prefix + ".mask.pgm");

    nlohmann::json truth = {
        {"rotation_deg", {{"yaw", angles.yaw_deg}, {"pitch", angles.pitch_deg}, {"roll", angles.roll_deg}}},
        {"translation", {t.x, t.y, t.z}},
        {"projections",
         {{"m", {scene.proj_m.x, scene.proj_m.y}},
          {"l", {scene.proj_l.x, scene.proj_l.y}},
          {"r", {scene.proj_r.x, scene.proj_r.y}}}},
        {"planted",
         {{"l", {positions[0].x, positions[0].y}},
          {"r", {positions[1].x, positions[1].y}},
          {"m", {positions[2].x, positions[2].y}}}},
        {"depths", {{"m", scene.depth_m}, {"l", scene.depth_l}, {"r", scene.depth_r}}},
        {"normal", {scene.normal.x, scene.normal.y, scene.normal.z}},
        {"noise_amplitude", noise},
        {"seed", seed},
    };
    std::ofstream truth_out(out_prefix + ".truth.json");
    if (!truth_out)
        throw Error(Errc::io, "cannot open ground-truth file for writing: " + out_prefix + ".truth.json");
    truth_out << truth.dump(2) << '\n';

    std::cout << "wrote " << out_prefix << ".ppm, " << out_prefix << ".mask.pgm, " << out_prefix
              << ".truth.json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Head/triangle pose estimation from facial feature locations"};
    app.require_subcommand(1);

    std::string config_path, samples_path, image_path, mask_path, overlay_path;
    std::string measure, out_path, mouth, left, right, shift;
    std::string rotation = "0,0,0", translation = "0,0,10", out_prefix = "scene";
    int top_k = 0, noise = 0;
    std::uint64_t seed = 0;

    CLI::App* train = app.add_subcommand("train", "Train feature models from labeled samples");
    train->add_option("--config", config_path, "Pipeline config JSON")->required();
    train->add_option("--samples", samples_path, "Labeled samples JSON")->required();

    CLI::App* detect = app.add_subcommand("detect", "Run the full detection + pose pipeline");
    detect->add_option("--config", config_path, "Pipeline config JSON")->required();
    detect->add_option("image", image_path, "Input image (P5/P6)")->required();
    detect->add_option("--mask", mask_path, "Silhouette mask (P5); full frame when omitted");
    detect->add_option("--overlay", overlay_path, "Write a P6 overlay image here");
    detect->add_option("--measure", measure, "Histogram distance: l1 or kullback");
    detect->add_option("--top-k", top_k, "Candidate peaks per feature");
    detect->add_option("--out", out_path, "Report file (stdout when omitted)");

    CLI::App* pose = app.add_subcommand("pose", "Solve a standalone triangle-pose query");
    pose->add_option("--config", config_path, "Pipeline config JSON")->required();
    pose->add_option("--mouth", mouth, "Mouth-nose point 'x,y'")->required();
    pose->add_option("--left", left, "Left-eye point 'x,y'")->required();
    pose->add_option("--right", right, "Right-eye point 'x,y'")->required();
    pose->add_option("--shift", shift, "Shift vector 'dx,dy' (near-frontal when omitted)");
    pose->add_option("--out", out_path, "Report file (stdout when omitted)");

    CLI::App* synth = app.add_subcommand("synth", "Render a synthetic fixture with ground truth");
    synth->add_option("--config", config_path, "Pipeline config JSON (camera + triangle)")->required();
    synth->add_option("--rotation", rotation, "Ground-truth 'yaw,pitch,roll' degrees");
    synth->add_option("--translation", translation, "Ground-truth 'x,y,z'");
    synth->add_option("--noise", noise, "Uniform noise amplitude (0-255)");
    synth->add_option("--seed", seed, "RNG seed");
    synth->add_option("--out-prefix", out_prefix, "Output path prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return cmd_train(config_path, samples_path);
        if (detect->parsed())
            return cmd_detect(config_path, image_path, mask_path, overlay_path, measure, top_k,
                              out_path);
        if (pose->parsed()) return cmd_pose(config_path, mouth, left, right, shift, out_path);
        if (synth->parsed())
            return cmd_synth(config_path, rotation, translation, noise, seed, out_prefix);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
