#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "tripose/errors.hpp"
#include "tripose/image.hpp"

using namespace tripose;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("tripose_image_" + name);
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("P5 parsing takes samples in file order") {
    const auto path = temp_file("p5.pgm");
    write_bytes(path, std::string("P5 2 2 255\n") + '\0' + '\xff' + '\0' + '\xff');
    const Image img = load_image(path);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.bands == 1);
    CHECK(img.at(0, 0) == 0);
    CHECK(img.at(1, 0) == 255);
    CHECK(img.at(0, 1) == 0);
    CHECK(img.at(1, 1) == 255);
}

TEST_CASE("P6 parsing yields one RGB pixel") {
    const auto path = temp_file("p6.ppm");
    write_bytes(path, std::string("P6 1 1 255\n") + '\x0a' + '\x14' + '\x1e');
    const Image img = load_image(path);
    CHECK(img.bands == 3);
    CHECK(img.at(0, 0, 0) == 10);
    CHECK(img.at(0, 0, 1) == 20);
    CHECK(img.at(0, 0, 2) == 30);
}

TEST_CASE("unsupported magic and maxval are distinct errors") {
    const auto p4 = temp_file("p4.pbm");
    write_bytes(p4, "P4 2 2\n\x00");
    CHECK_THROWS_WITH_AS(load_image(p4), doctest::Contains("unsupported netpbm magic"), Error);

    const auto maxval = temp_file("maxval.pgm");
    write_bytes(maxval, "P5 1 1 127\n\x00");
    CHECK_THROWS_WITH_AS(load_image(maxval), doctest::Contains("unsupported maxval"), Error);

    const auto truncated = temp_file("short.pgm");
    write_bytes(truncated, "P5 2 2 255\nab");
    CHECK_THROWS_WITH_AS(load_image(truncated), doctest::Contains("truncated"), Error);

    CHECK_THROWS_AS(load_image(temp_file("missing.pgm")), Error);
}

TEST_CASE("header comments are skipped") {
    const auto path = temp_file("comment.pgm");
    write_bytes(path, std::string("P5 # cam0\n1 1 # tiny\n255\n") + '\x7f');
    const Image img = load_image(path);
    CHECK(img.at(0, 0) == 127);
}

TEST_CASE("1x1 gray zero writes the canonical 12-byte P5 file") {
    const auto path = temp_file("canon.pgm");
    save_image(Image::make(1, 1, 1, 0), path);
    const std::string bytes = read_bytes(path);
    CHECK(bytes == std::string("P5\n1 1\n255\n") + '\0');
    CHECK(bytes.size() == 12);
}

TEST_CASE("2x2 RGB writes a P6 with 12 payload bytes") {
    const auto path = temp_file("rgb.ppm");
    save_image(Image::make(2, 2, 3, 9), path);
    const std::string bytes = read_bytes(path);
    CHECK(bytes.substr(0, 3) == "P6\n");
    CHECK(bytes.size() == std::string("P6\n2 2\n255\n").size() + 12);
}

TEST_CASE("save/load round-trips random images bit-exactly") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 31);
        const int h = 1 + static_cast<int>(rng() % 31);
        const int bands = (rng() % 2) ? 3 : 1;
        Image img = Image::make(w, h, bands);
        for (auto& s : img.samples) s = static_cast<std::uint8_t>(rng() & 0xff);

        const auto path = temp_file("roundtrip");
        save_image(img, path);
        const Image back = load_image(path);
        CHECK(back.width == img.width);
        CHECK(back.height == img.height);
        CHECK(back.bands == img.bands);
        CHECK(back.samples == img.samples);
    }
}

TEST_CASE("mask loading thresholds at 127") {
    Image img = Image::make(2, 1, 1);
    img.at(0, 0) = 127;
    img.at(1, 0) = 128;
    const SilhouetteMask mask = SilhouetteMask::from_image(img);
    CHECK_FALSE(mask.contains(0, 0));
    CHECK(mask.contains(1, 0));
    CHECK(mask.interior_count() == 1);
}

TEST_CASE("gray is the rounded band mean") {
    Image img = Image::make(1, 1, 3);
    img.at(0, 0, 0) = 1;
    img.at(0, 0, 1) = 2;
    img.at(0, 0, 2) = 2;
    CHECK(img.gray(0, 0) == 2);  // 5/3 rounds up
}
