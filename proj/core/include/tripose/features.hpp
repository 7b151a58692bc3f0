#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tripose/edges.hpp"

namespace tripose {

struct MaskOffset {
    int dx = 0;
    int dy = 0;
    bool operator==(const MaskOffset&) const = default;
};

// Pixel footprint of a feature relative to its anchor (the stencil center).
struct FeatureMask {
    std::string name;
    std::vector<MaskOffset> offsets;   // duplicate-free, non-empty
    int anchor_x = 0;                  // stencil-grid anchor, kept for serialization
    int anchor_y = 0;
    int bbox_width = 0;
    int bbox_height = 0;

    // Suppression radius tied to the footprint: ceil(max(bbox side) / 2).
    int suppression_radius() const;
};

// Offsets = stencil samples > 127, relative to the center pixel (W/2, H/2).
FeatureMask load_mask_stencil(const Image& stencil, const std::string& name = {});

// Non-edge count plus a 2D (normal angle x brightness) histogram of edge
// points; the feature descriptor.
struct SignatureHistogram {
    int angle_bins = 0;
    int brightness_bins = 0;
    std::vector<double> edge_bins;  // row-major [angle][brightness]
    double non_edge_bin = 0.0;
    bool normalized = false;

    double edge_at(int a, int b) const { return edge_bins[static_cast<std::size_t>(a) * brightness_bins + b]; }
    double& edge_at(int a, int b) { return edge_bins[static_cast<std::size_t>(a) * brightness_bins + b]; }
    double total() const;
    bool same_shape(const SignatureHistogram& o) const {
        return angle_bins == o.angle_bins && brightness_bins == o.brightness_bins;
    }
};

struct FeatureModel {
    FeatureMask mask;
    SignatureHistogram signature;  // normalized, every bin >= floor
    int training_count = 0;
};

// Raw counts under the mask anchored at (ax, ay). Pixels with no pooled band
// count as non-edge; every pooled (pixel, band) entry lands in an edge bin.
SignatureHistogram collect_signature(const EdgePool& edges, const SilhouetteMask& region,
                                     const FeatureMask& mask, int ax, int ay,
                                     int angle_bins, int brightness_bins);

SignatureHistogram normalize_histogram(SignatureHistogram h);

// Sum of absolute bin differences; in [0, 2] for probability histograms.
double distance_l1(const SignatureHistogram& s, const SignatureHistogram& m);

// D(s:m) = sum_i s_i ln(s_i / m_i); terms with s_i = 0 contribute nothing.
// m must be strictly positive (floored model).
double distance_kullback(const SignatureHistogram& s, const SignatureHistogram& m);

struct TrainingSample {
    const EdgePool* edges = nullptr;
    const SilhouetteMask* region = nullptr;
    int anchor_x = 0;
    int anchor_y = 0;
};

// Per-bin mean of the normalized sample signatures, floored and renormalized.
FeatureModel train_model(const std::vector<TrainingSample>& samples, const FeatureMask& mask,
                         int angle_bins, int brightness_bins, double model_floor = 1e-6);

enum class DistanceMeasure { l1, kullback };

struct LikelihoodMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;  // 1 where the mask fit and the anchor was in-region

    bool is_valid(int x, int y) const { return valid[static_cast<std::size_t>(y) * width + x] != 0; }
    double value(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

// Distance-to-model at every admissible anchor position (smaller = more likely).
LikelihoodMap build_likelihood_map(const EdgePool& edges, const SilhouetteMask& region,
                                   const FeatureModel& model, DistanceMeasure measure);

void save_model(const FeatureModel& model, const std::filesystem::path& path);
FeatureModel load_model(const std::filesystem::path& path);

}  // namespace tripose
