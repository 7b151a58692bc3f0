#include "tripose/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <string>

#include "tripose/errors.hpp"

namespace tripose {

Image Image::make(int width, int height, int bands, std::uint8_t fill) {
    if (width <= 0 || height <= 0 || (bands != 1 && bands != 3))
        throw Error(Errc::invalid_argument, "image dimensions must be positive with 1 or 3 bands");
    Image img;
    img.width = width;
    img.height = height;
    img.bands = bands;
    img.samples.assign(static_cast<std::size_t>(width) * height * bands, fill);
    return img;
}

std::uint8_t Image::gray(int x, int y) const {
    if (bands == 1) return at(x, y, 0);
    const int sum = at(x, y, 0) + at(x, y, 1) + at(x, y, 2);
    return static_cast<std::uint8_t>(std::lround(sum / 3.0));
}

SilhouetteMask SilhouetteMask::full(int width, int height) {
    SilhouetteMask m;
    m.width = width;
    m.height = height;
    m.inside.assign(static_cast<std::size_t>(width) * height, 1);
    return m;
}

SilhouetteMask SilhouetteMask::from_image(const Image& img) {
    if (img.bands != 1)
        throw Error(Errc::invalid_argument, "silhouette mask requires a 1-band image");
    SilhouetteMask m;
    m.width = img.width;
    m.height = img.height;
    m.inside.resize(img.samples.size());
    for (std::size_t i = 0; i < img.samples.size(); ++i) m.inside[i] = img.samples[i] > 127 ? 1 : 0;
    return m;
}

std::size_t SilhouetteMask::interior_count() const {
    std::size_t n = 0;
    for (auto v : inside) n += v;
    return n;
}

namespace {

// One header token; '#' starts a comment running to end of line.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

int parse_positive(const std::string& tok, const char* what, const std::filesystem::path& path) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw Error(Errc::io, "malformed " + std::string(what) + " in netpbm header: " + path.string());
    long v = std::stol(tok);
    if (v <= 0 || v > 1 << 20)
        throw Error(Errc::io, std::string(what) + " out of range in netpbm header: " + path.string());
    return static_cast<int>(v);
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open image file: " + path.string());

    const std::string magic = next_token(in);
    int bands = 0;
    if (magic == "P5")
        bands = 1;
    else if (magic == "P6")
        bands = 3;
    else
        throw Error(Errc::io, "unsupported netpbm magic '" + magic + "' (want P5 or P6): " + path.string());

    const int width = parse_positive(next_token(in), "width", path);
    const int height = parse_positive(next_token(in), "height", path);
    const std::string maxval = next_token(in);
    if (maxval != "255")
        throw Error(Errc::io, "unsupported maxval '" + maxval + "' (want 255): " + path.string());
    // next_token consumed exactly one whitespace byte after the maxval.

    Image img = Image::make(width, height, bands);
    in.read(reinterpret_cast<char*>(img.samples.data()),
            static_cast<std::streamsize>(img.samples.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.samples.size()))
        throw Error(Errc::io, "truncated netpbm payload: " + path.string());
    return img;
}

void save_image(const Image& img, const std::filesystem::path& path) {
    if (img.samples.size() != static_cast<std::size_t>(img.width) * img.height * img.bands)
        throw Error(Errc::invalid_argument, "image sample buffer does not match its dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io, "cannot open file for writing: " + path.string());
    out << (img.bands == 1 ? "P5" : "P6") << '\n'
        << img.width << ' ' << img.height << '\n'
        << "255\n";
    out.write(reinterpret_cast<const char*>(img.samples.data()),
              static_cast<std::streamsize>(img.samples.size()));
    if (!out) throw Error(Errc::io, "failed writing image payload: " + path.string());
}

SilhouetteMask load_mask(const std::filesystem::path& path) {
    const Image img = load_image(path);
    if (img.bands != 1)
        throw Error(Errc::io, "silhouette mask must be a P5 file: " + path.string());
    return SilhouetteMask::from_image(img);
}

void save_mask(const SilhouetteMask& mask, const std::filesystem::path& path) {
    Image img = Image::make(mask.width, mask.height, 1);
    for (std::size_t i = 0; i < mask.inside.size(); ++i) img.samples[i] = mask.inside[i] ? 255 : 0;
    save_image(img, path);
}

}  // namespace tripose
