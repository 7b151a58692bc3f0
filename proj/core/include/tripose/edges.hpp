#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tripose/image.hpp"

namespace tripose {

struct EdgePoint {
    int x = 0;
    int y = 0;
    int band = 0;
    double normal_angle = 0.0;        // [0, 2pi), dark -> bright
    std::uint8_t brightness = 0;      // gray level at (x, y)
};

// Two-sided edge points plus a per-pixel index for O(1) membership queries.
class EdgePool {
public:
    EdgePool() = default;
    EdgePool(int width, int height, int bands);

    int width() const { return width_; }
    int height() const { return height_; }
    int bands() const { return bands_; }

    const std::vector<EdgePoint>& points() const { return points_; }

    bool contains(int x, int y, int band) const { return slot(x, y, band) >= 0; }
    bool any_band(int x, int y) const;
    const EdgePoint* find(int x, int y, int band) const;

    // Duplicate (x, y, band) insertions are merged (first wins).
    void insert(const EdgePoint& p);

    // Points whose threshold-exceeding contrast averaged to a zero normal.
    int dropped_zero_gradient() const { return dropped_zero_gradient_; }
    void count_dropped() { ++dropped_zero_gradient_; }

private:
    std::int32_t slot(int x, int y, int band) const {
        return index_[static_cast<std::size_t>(y) * width_ + x][band];
    }

    int width_ = 0;
    int height_ = 0;
    int bands_ = 0;
    int dropped_zero_gradient_ = 0;
    std::vector<EdgePoint> points_;
    std::vector<std::array<std::int32_t, 3>> index_;  // point index per band, -1 = none
};

// Min-max sharpening: every pixel in the region snaps to the extreme of its
// in-bounds 8-neighborhood it is closest to by brightness (ties go to the
// max). Pixels outside the region are copied unchanged.
Image minmax_sharpen(const Image& img, const SilhouetteMask& region);

// Scans the lower half-8-neighborhood {(x+1,y), (x-1,y+1), (x,y+1), (x+1,y+1)}
// of every region pixel; a per-band contrast above the band threshold admits
// BOTH pixels of the pair. Zero-normal admissions are dropped and counted.
EdgePool detect_color_edges(const Image& img, const SilhouetteMask& region,
                            const std::vector<int>& thresholds);

// Contrast-weighted mean of in-bounds neighbor directions, mapped to [0, 2pi).
// nullopt when the averaged gradient is below 1e-9 (caller drops the point).
std::optional<double> compute_edge_normal(const Image& img, int x, int y, int band);

}  // namespace tripose
