#pragma once

#include <vector>

#include "tripose/features.hpp"

namespace tripose {

struct ScoreGrid {
    int width = 0;
    int height = 0;
    std::vector<double> scores;  // -inf at invalid positions (never selectable)
    double base = 0.0;           // max valid distance; raw = base - score

    double at(int x, int y) const { return scores[static_cast<std::size_t>(y) * width + x]; }
};

struct Peak {
    int x = 0;
    int y = 0;
    double score = 0.0;         // base - distance, higher = more likely
    double raw_distance = 0.0;
};

// score = (max valid distance) - distance, so argmax(score) = argmin(distance)
// and an exact model match still has a finite score.
ScoreGrid invert_map(const LikelihoodMap& map);

// Best-first peak pick: a peak must dominate every score within Chebyshev
// distance <= radius of it, and no two returned peaks lie within <= radius of
// each other. Descending by score, ties by (y, x) ascending, capped at
// max_peaks.
std::vector<Peak> suppress_non_maxima(const ScoreGrid& grid, int radius, int max_peaks);

}  // namespace tripose
