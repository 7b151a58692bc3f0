#include "tripose/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "tripose/errors.hpp"

namespace tripose {

using nlohmann::json;

int FeatureMask::suppression_radius() const {
    return (std::max(bbox_width, bbox_height) + 1) / 2;
}

FeatureMask load_mask_stencil(const Image& stencil, const std::string& name) {
    if (stencil.bands != 1)
        throw Error(Errc::invalid_argument, "feature stencil must be a 1-band image");
    FeatureMask mask;
    mask.name = name;
    mask.anchor_x = stencil.width / 2;
    mask.anchor_y = stencil.height / 2;
    int min_dx = std::numeric_limits<int>::max(), max_dx = std::numeric_limits<int>::min();
    int min_dy = std::numeric_limits<int>::max(), max_dy = std::numeric_limits<int>::min();
    for (int y = 0; y < stencil.height; ++y) {
        for (int x = 0; x < stencil.width; ++x) {
            if (stencil.at(x, y) <= 127) continue;
            const int dx = x - mask.anchor_x;
            const int dy = y - mask.anchor_y;
            mask.offsets.push_back({dx, dy});
            min_dx = std::min(min_dx, dx);
            max_dx = std::max(max_dx, dx);
            min_dy = std::min(min_dy, dy);
            max_dy = std::max(max_dy, dy);
        }
    }
    if (mask.offsets.empty())
        throw Error(Errc::invalid_argument, "feature stencil is empty (no sample > 127)");
    if (min_dx > 0 || max_dx < 0 || min_dy > 0 || max_dy < 0)
        throw Error(Errc::invalid_argument,
                    "stencil anchor (center pixel) lies outside the footprint bounding box");
    mask.bbox_width = max_dx - min_dx + 1;
    mask.bbox_height = max_dy - min_dy + 1;
    return mask;
}

double SignatureHistogram::total() const {
    double t = non_edge_bin;
    for (double v : edge_bins) t += v;
    return t;
}

namespace {

SignatureHistogram make_histogram(int angle_bins, int brightness_bins) {
    if (angle_bins < 1 || brightness_bins < 1)
        throw Error(Errc::invalid_argument, "histogram needs at least one bin per axis");
    SignatureHistogram h;
    h.angle_bins = angle_bins;
    h.brightness_bins = brightness_bins;
    h.edge_bins.assign(static_cast<std::size_t>(angle_bins) * brightness_bins, 0.0);
    return h;
}

void check_comparable(const SignatureHistogram& s, const SignatureHistogram& m) {
    if (!s.same_shape(m))
        throw Error(Errc::invalid_argument, "histogram shapes do not match");
    if (!s.normalized || !m.normalized)
        throw Error(Errc::invalid_argument, "histogram distances need normalized inputs");
}

}  // namespace

SignatureHistogram collect_signature(const EdgePool& edges, const SilhouetteMask& region,
                                     const FeatureMask& mask, int ax, int ay,
                                     int angle_bins, int brightness_bins) {
    if (region.width != edges.width() || region.height != edges.height())
        throw Error(Errc::invalid_argument, "region dimensions do not match the edge pool");
    SignatureHistogram h = make_histogram(angle_bins, brightness_bins);
    for (const MaskOffset& off : mask.offsets) {
        const int x = ax + off.dx;
        const int y = ay + off.dy;
        if (x < 0 || x >= edges.width() || y < 0 || y >= edges.height())
            throw Error(Errc::invalid_argument, "feature mask exits the image frame");
        if (!edges.any_band(x, y)) {
            h.non_edge_bin += 1.0;
            continue;
        }
        for (int b = 0; b < edges.bands(); ++b) {
            const EdgePoint* p = edges.find(x, y, b);
            if (!p) continue;
            int ai = static_cast<int>(p->normal_angle * angle_bins / (2.0 * M_PI));
            ai = std::clamp(ai, 0, angle_bins - 1);
            const int bi = p->brightness * brightness_bins / 256;
            h.edge_at(ai, bi) += 1.0;
        }
    }
    return h;
}

SignatureHistogram normalize_histogram(SignatureHistogram h) {
    if (h.normalized) return h;
    const double t = h.total();
    if (t <= 0.0) throw Error(Errc::invalid_argument, "cannot normalize an all-zero histogram");
    for (double& v : h.edge_bins) v /= t;
    h.non_edge_bin /= t;
    h.normalized = true;
    return h;
}

double distance_l1(const SignatureHistogram& s, const SignatureHistogram& m) {
    check_comparable(s, m);
    double d = std::abs(s.non_edge_bin - m.non_edge_bin);
    for (std::size_t i = 0; i < s.edge_bins.size(); ++i)
        d += std::abs(s.edge_bins[i] - m.edge_bins[i]);
    return d;
}

double distance_kullback(const SignatureHistogram& s, const SignatureHistogram& m) {
    check_comparable(s, m);
    auto term = [](double si, double mi) {
        if (si <= 0.0) return 0.0;
        if (mi <= 0.0)
            throw Error(Errc::config, "Kullback measure needs a strictly positive (floored) model");
        return si * std::log(si / mi);
    };
    double d = term(s.non_edge_bin, m.non_edge_bin);
    for (std::size_t i = 0; i < s.edge_bins.size(); ++i) d += term(s.edge_bins[i], m.edge_bins[i]);
    return d;
}

FeatureModel train_model(const std::vector<TrainingSample>& samples, const FeatureMask& mask,
                         int angle_bins, int brightness_bins, double model_floor) {
    if (samples.empty()) throw Error(Errc::invalid_argument, "training needs at least one sample");
    if (model_floor <= 0.0)
        throw Error(Errc::config, "model floor must be positive");

    SignatureHistogram mean = make_histogram(angle_bins, brightness_bins);
    for (const TrainingSample& sample : samples) {
        const SignatureHistogram sig = normalize_histogram(collect_signature(
            *sample.edges, *sample.region, mask, sample.anchor_x, sample.anchor_y,
            angle_bins, brightness_bins));
        mean.non_edge_bin += sig.non_edge_bin;
        for (std::size_t i = 0; i < mean.edge_bins.size(); ++i) mean.edge_bins[i] += sig.edge_bins[i];
    }
    const double n = static_cast<double>(samples.size());
    mean.non_edge_bin = std::max(mean.non_edge_bin / n, model_floor);
    for (double& v : mean.edge_bins) v = std::max(v / n, model_floor);

    FeatureModel model;
    model.mask = mask;
    model.signature = normalize_histogram(std::move(mean));
    model.training_count = static_cast<int>(samples.size());
    return model;
}

LikelihoodMap build_likelihood_map(const EdgePool& edges, const SilhouetteMask& region,
                                   const FeatureModel& model, DistanceMeasure measure) {
    if (region.width != edges.width() || region.height != edges.height())
        throw Error(Errc::invalid_argument, "region dimensions do not match the edge pool");
    if (region.interior_count() == 0)
        throw Error(Errc::invalid_argument, "empty search region");

    int min_dx = 0, max_dx = 0, min_dy = 0, max_dy = 0;
    for (const MaskOffset& off : model.mask.offsets) {
        min_dx = std::min(min_dx, off.dx);
        max_dx = std::max(max_dx, off.dx);
        min_dy = std::min(min_dy, off.dy);
        max_dy = std::max(max_dy, off.dy);
    }

    LikelihoodMap map;
    map.width = edges.width();
    map.height = edges.height();
    map.values.assign(static_cast<std::size_t>(map.width) * map.height, 0.0);
    map.valid.assign(map.values.size(), 0);

    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            if (!region.contains(x, y)) continue;
            if (x + min_dx < 0 || x + max_dx >= map.width || y + min_dy < 0 ||
                y + max_dy >= map.height)
                continue;
            const SignatureHistogram sig = normalize_histogram(collect_signature(
                edges, region, model.mask, x, y, model.signature.angle_bins,
                model.signature.brightness_bins));
            const double d = measure == DistanceMeasure::l1
                                 ? distance_l1(sig, model.signature)
                                 : distance_kullback(sig, model.signature);
            const std::size_t i = static_cast<std::size_t>(y) * map.width + x;
            map.values[i] = d;
            map.valid[i] = 1;
        }
    }
    return map;
}

void save_model(const FeatureModel& model, const std::filesystem::path& path) {
    json offsets = json::array();
    for (const MaskOffset& off : model.mask.offsets) offsets.push_back({off.dx, off.dy});
    const json j = {
        {"version", 1},
        {"name", model.mask.name},
        {"mask",
         {{"width", model.mask.bbox_width},
          {"height", model.mask.bbox_height},
          {"anchor", {model.mask.anchor_x, model.mask.anchor_y}},
          {"offsets", offsets}}},
        {"angle_bins", model.signature.angle_bins},
        {"brightness_bins", model.signature.brightness_bins},
        {"non_edge", model.signature.non_edge_bin},
        {"edge_bins", model.signature.edge_bins},
        {"training_count", model.training_count},
    };
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot open model file for writing: " + path.string());
    out << j.dump(2) << '\n';
}

FeatureModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open model file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(Errc::io, "malformed model JSON " + path.string() + ": " + e.what());
    }
    try {
        if (j.at("version").get<int>() != 1)
            throw Error(Errc::config, "unsupported model version in " + path.string());
        FeatureModel model;
        model.mask.name = j.at("name").get<std::string>();
        model.mask.bbox_width = j.at("mask").at("width").get<int>();
        model.mask.bbox_height = j.at("mask").at("height").get<int>();
        model.mask.anchor_x = j.at("mask").at("anchor").at(0).get<int>();
        model.mask.anchor_y = j.at("mask").at("anchor").at(1).get<int>();
        for (const auto& off : j.at("mask").at("offsets"))
            model.mask.offsets.push_back({off.at(0).get<int>(), off.at(1).get<int>()});
        if (model.mask.offsets.empty())
            throw Error(Errc::config, "model mask has no offsets: " + path.string());
        model.signature.angle_bins = j.at("angle_bins").get<int>();
        model.signature.brightness_bins = j.at("brightness_bins").get<int>();
        model.signature.non_edge_bin = j.at("non_edge").get<double>();
        model.signature.edge_bins = j.at("edge_bins").get<std::vector<double>>();
        model.signature.normalized = true;
        model.training_count = j.value("training_count", 0);
        if (model.signature.edge_bins.size() !=
            static_cast<std::size_t>(model.signature.angle_bins) * model.signature.brightness_bins)
            throw Error(Errc::config, "model bin count does not match its shape: " + path.string());
        const double t = model.signature.total();
        if (std::abs(t - 1.0) > 1e-6)
            throw Error(Errc::config, "model histogram is not normalized: " + path.string());
        return model;
    } catch (const json::exception& e) {
        throw Error(Errc::config, "invalid model JSON " + path.string() + ": " + e.what());
    }
}

}  // namespace tripose
