#include "tripose/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "tripose/errors.hpp"

namespace tripose {

ScoreGrid invert_map(const LikelihoodMap& map) {
    double max_valid = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < map.values.size(); ++i)
        if (map.valid[i]) max_valid = std::max(max_valid, map.values[i]);
    if (!std::isfinite(max_valid))
        throw Error(Errc::no_valid_peak, "likelihood map has no valid entries");

    ScoreGrid grid;
    grid.width = map.width;
    grid.height = map.height;
    grid.base = max_valid;
    grid.scores.assign(map.values.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < map.values.size(); ++i)
        if (map.valid[i]) grid.scores[i] = max_valid - map.values[i];
    return grid;
}

namespace {

struct Cell {
    double score;
    int x;
    int y;
};

// Max-heap order: higher score first, then raster order (y, x) ascending.
struct CellCompare {
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.score != b.score) return a.score < b.score;
        if (a.y != b.y) return a.y > b.y;
        return a.x > b.x;
    }
};

}  // namespace

std::vector<Peak> suppress_non_maxima(const ScoreGrid& grid, int radius, int max_peaks) {
    if (grid.width <= 0 || grid.height <= 0)
        throw Error(Errc::invalid_argument, "empty score grid");
    if (radius < 1 || max_peaks < 1)
        throw Error(Errc::invalid_argument, "suppression radius and max_peaks must be >= 1");

    std::priority_queue<Cell, std::vector<Cell>, CellCompare> queue;
    for (int y = 0; y < grid.height; ++y)
        for (int x = 0; x < grid.width; ++x)
            if (std::isfinite(grid.at(x, y))) queue.push({grid.at(x, y), x, y});

    std::vector<std::uint8_t> suppressed(grid.scores.size(), 0);
    auto is_suppressed = [&](int x, int y) {
        return suppressed[static_cast<std::size_t>(y) * grid.width + x] != 0;
    };

    std::vector<Peak> peaks;
    while (!queue.empty() && static_cast<int>(peaks.size()) < max_peaks) {
        const Cell c = queue.top();
        queue.pop();
        if (is_suppressed(c.x, c.y)) continue;

        // A peak must dominate its whole Chebyshev neighborhood, suppressed
        // cells included; false peaks on a slope never qualify.
        bool dominant = true;
        for (int dy = -radius; dy <= radius && dominant; ++dy) {
            const int ny = c.y + dy;
            if (ny < 0 || ny >= grid.height) continue;
            for (int dx = -radius; dx <= radius; ++dx) {
                const int nx = c.x + dx;
                if (nx < 0 || nx >= grid.width) continue;
                if (grid.at(nx, ny) > c.score) {
                    dominant = false;
                    break;
                }
            }
        }
        if (!dominant) continue;

        peaks.push_back({c.x, c.y, c.score, grid.base - c.score});
        for (int dy = -radius; dy <= radius; ++dy) {
            const int ny = c.y + dy;
            if (ny < 0 || ny >= grid.height) continue;
            for (int dx = -radius; dx <= radius; ++dx) {
                const int nx = c.x + dx;
                if (nx < 0 || nx >= grid.width) continue;
                suppressed[static_cast<std::size_t>(ny) * grid.width + nx] = 1;
            }
        }
    }
    return peaks;
}

}  // namespace tripose
