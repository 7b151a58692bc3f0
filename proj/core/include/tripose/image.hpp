#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace tripose {

// 8-bit raster, 1 (gray) or 3 (RGB) bands, row-major and band-interleaved.
// x grows rightward, y downward, origin at the top-left pixel center.
struct Image {
    int width = 0;
    int height = 0;
    int bands = 1;
    std::vector<std::uint8_t> samples;

    static Image make(int width, int height, int bands, std::uint8_t fill = 0);

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    std::uint8_t at(int x, int y, int band = 0) const {
        return samples[(static_cast<std::size_t>(y) * width + x) * bands + band];
    }
    std::uint8_t& at(int x, int y, int band = 0) {
        return samples[(static_cast<std::size_t>(y) * width + x) * bands + band];
    }

    // Band mean, rounded; the shared brightness axis for edge points.
    std::uint8_t gray(int x, int y) const;
};

struct SilhouetteMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> inside;  // 1 = interior

    static SilhouetteMask full(int width, int height);
    // Sample > 127 marks interior.
    static SilhouetteMask from_image(const Image& img);

    bool contains(int x, int y) const {
        return inside[static_cast<std::size_t>(y) * width + x] != 0;
    }
    std::size_t interior_count() const;
};

// Binary PGM (P5, 1 band) / PPM (P6, 3 bands), maxval 255 only.
Image load_image(const std::filesystem::path& path);
void save_image(const Image& img, const std::filesystem::path& path);

SilhouetteMask load_mask(const std::filesystem::path& path);
void save_mask(const SilhouetteMask& mask, const std::filesystem::path& path);

}  // namespace tripose
