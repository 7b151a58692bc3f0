#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tripose/config.hpp"
#include "tripose/pose.hpp"
#include "tripose/synth.hpp"

namespace tripose {

struct LabeledSample {
    std::filesystem::path image_path;
    std::filesystem::path mask_path;                 // empty: full frame
    std::map<std::string, PixelCoord> anchors;       // feature name -> anchor
};

std::vector<LabeledSample> load_samples(const std::filesystem::path& path);

// train: sharpen -> edges -> collect -> average, one model file per feature.
// Returns the per-feature training counts in feature order.
std::vector<int> run_train(const PipelineConfig& config, const std::vector<LabeledSample>& samples);

struct DetectOptions {
    std::filesystem::path image_path;
    std::optional<std::filesystem::path> mask_path;
    std::optional<std::filesystem::path> overlay_path;
    std::optional<DistanceMeasure> measure;  // overrides config
    std::optional<int> max_peaks;            // overrides config
};

struct DetectResult {
    std::vector<Vec2> positions;             // feature_names order
    std::vector<PoseSolution> solutions;
    std::size_t selected = 0;
    EulerAngles angles;
    ShiftVector shift;
    std::string report;                      // the report JSON, byte-stable
};

// Full pipeline: sharpen -> edges -> likelihood maps -> peaks ->
// constellation -> shift vector -> pose -> selection -> angles.
DetectResult run_detect(const PipelineConfig& config, const DetectOptions& options);

struct PoseQueryResult {
    std::vector<PoseSolution> solutions;
    std::size_t selected = 0;
    EulerAngles angles;
    ShiftVector shift;
    std::string report;
};

// Standalone solver access on three labeled points (image coordinates).
PoseQueryResult run_pose(const PipelineConfig& config, const Vec2& m, const Vec2& l,
                         const Vec2& r, std::optional<Vec2> shift);

}  // namespace tripose
