#include "tripose/edges.hpp"

#include <cmath>

#include "tripose/errors.hpp"

namespace tripose {

namespace {

constexpr int kNeighborX[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kNeighborY[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

// Lower half-8-neighborhood: the forward scan that visits each unordered
// pixel pair exactly once.
constexpr int kLowerX[4] = {1, -1, 0, 1};
constexpr int kLowerY[4] = {0, 1, 1, 1};

void check_region(const Image& img, const SilhouetteMask& region) {
    if (region.width != img.width || region.height != img.height)
        throw Error(Errc::invalid_argument, "region dimensions do not match the image");
}

}  // namespace

EdgePool::EdgePool(int width, int height, int bands)
    : width_(width), height_(height), bands_(bands) {
    index_.assign(static_cast<std::size_t>(width) * height, {-1, -1, -1});
}

bool EdgePool::any_band(int x, int y) const {
    const auto& slots = index_[static_cast<std::size_t>(y) * width_ + x];
    return slots[0] >= 0 || slots[1] >= 0 || slots[2] >= 0;
}

const EdgePoint* EdgePool::find(int x, int y, int band) const {
    const std::int32_t s = slot(x, y, band);
    return s >= 0 ? &points_[s] : nullptr;
}

void EdgePool::insert(const EdgePoint& p) {
    auto& s = index_[static_cast<std::size_t>(p.y) * width_ + p.x][p.band];
    if (s >= 0) return;
    s = static_cast<std::int32_t>(points_.size());
    points_.push_back(p);
}

Image minmax_sharpen(const Image& img, const SilhouetteMask& region) {
    check_region(img, region);
    Image out = img;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!region.contains(x, y)) continue;
            for (int b = 0; b < img.bands; ++b) {
                int lo = 256, hi = -1;
                for (int k = 0; k < 8; ++k) {
                    const int nx = x + kNeighborX[k];
                    const int ny = y + kNeighborY[k];
                    if (!img.in_bounds(nx, ny)) continue;
                    const int v = img.at(nx, ny, b);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                if (hi < 0) continue;  // 1x1 image: no neighbors
                const int v = img.at(x, y, b);
                out.at(x, y, b) =
                    static_cast<std::uint8_t>(std::abs(v - hi) <= std::abs(v - lo) ? hi : lo);
            }
        }
    }
    return out;
}

std::optional<double> compute_edge_normal(const Image& img, int x, int y, int band) {
    if (!img.in_bounds(x, y) || band < 0 || band >= img.bands)
        throw Error(Errc::invalid_argument, "edge normal query out of bounds");
    const double center = img.at(x, y, band);
    double nx = 0.0, ny = 0.0;
    for (int k = 0; k < 8; ++k) {
        const int qx = x + kNeighborX[k];
        const int qy = y + kNeighborY[k];
        if (!img.in_bounds(qx, qy)) continue;
        const double diff = img.at(qx, qy, band) - center;
        const double len = std::hypot(kNeighborX[k], kNeighborY[k]);
        nx += diff * kNeighborX[k] / len;
        ny += diff * kNeighborY[k] / len;
    }
    if (std::hypot(nx, ny) < 1e-9) return std::nullopt;
    double angle = std::atan2(ny, nx);
    if (angle < 0.0) angle += 2.0 * M_PI;
    if (angle >= 2.0 * M_PI) angle = 0.0;
    return angle;
}

EdgePool detect_color_edges(const Image& img, const SilhouetteMask& region,
                            const std::vector<int>& thresholds) {
    check_region(img, region);
    if (static_cast<int>(thresholds.size()) != img.bands)
        throw Error(Errc::invalid_argument, "need one edge threshold per band");
    for (int t : thresholds)
        if (t < 0) throw Error(Errc::invalid_argument, "edge thresholds must be non-negative");

    EdgePool pool(img.width, img.height, img.bands);
    std::vector<std::array<std::uint8_t, 3>> rejected(
        static_cast<std::size_t>(img.width) * img.height, {0, 0, 0});
    auto admit = [&](int x, int y, int band) {
        if (pool.contains(x, y, band)) return;
        auto& seen = rejected[static_cast<std::size_t>(y) * img.width + x][band];
        if (seen) return;
        const auto angle = compute_edge_normal(img, x, y, band);
        if (!angle) {
            seen = 1;
            pool.count_dropped();
            return;
        }
        pool.insert({x, y, band, *angle, img.gray(x, y)});
    };

    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!region.contains(x, y)) continue;
            for (int k = 0; k < 4; ++k) {
                const int qx = x + kLowerX[k];
                const int qy = y + kLowerY[k];
                if (!img.in_bounds(qx, qy) || !region.contains(qx, qy)) continue;
                for (int b = 0; b < img.bands; ++b) {
                    const int diff = std::abs(img.at(x, y, b) - img.at(qx, qy, b));
                    if (diff > thresholds[b]) {
                        admit(x, y, b);
                        admit(qx, qy, b);
                    }
                }
            }
        }
    }
    return pool;
}

}  // namespace tripose
