// Test-only reference implementations, independent of the library code paths
// they check.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "tripose/peaks.hpp"

namespace tripose::test {

// Brute-force non-maxima suppression: every finite cell that dominates its
// full Chebyshev neighborhood is a candidate; candidates are taken best-first
// (score desc, then y, then x) subject to mutual separation > radius.
inline std::vector<Peak> nms_oracle(const ScoreGrid& grid, int radius, int max_peaks) {
    struct Candidate {
        double score;
        int x, y;
    };
    std::vector<Candidate> candidates;
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            const double s = grid.at(x, y);
            if (!std::isfinite(s)) continue;
            bool dominant = true;
            for (int ny = std::max(0, y - radius); ny <= std::min(grid.height - 1, y + radius); ++ny)
                for (int nx = std::max(0, x - radius); nx <= std::min(grid.width - 1, x + radius); ++nx)
                    if (grid.at(nx, ny) > s) dominant = false;
            if (dominant) candidates.push_back({s, x, y});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });

    std::vector<Peak> peaks;
    for (const Candidate& c : candidates) {
        if (static_cast<int>(peaks.size()) >= max_peaks) break;
        bool blocked = false;
        for (const Peak& p : peaks)
            if (std::max(std::abs(p.x - c.x), std::abs(p.y - c.y)) <= radius) blocked = true;
        if (!blocked) peaks.push_back({c.x, c.y, c.score, grid.base - c.score});
    }
    return peaks;
}

inline double poly_eval(const std::array<double, 5>& c, double x) {
    return (((c[0] * x + c[1]) * x + c[2]) * x + c[3]) * x + c[4];
}

namespace detail {

inline double bisect(const std::array<double, 5>& c, double lo, double hi) {
    double flo = poly_eval(c, lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fmid = poly_eval(c, mid);
        if (fmid == 0.0) return mid;
        if ((flo < 0) != (fmid < 0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

template <std::size_t N>
double bisect_n(const std::array<double, N>& c, double lo, double hi) {
    auto eval = [&](double x) {
        double v = 0.0;
        for (double coef : c) v = v * x + coef;
        return v;
    };
    double flo = eval(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fmid = eval(mid);
        if (fmid == 0.0) return mid;
        if ((flo < 0) != (fmid < 0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Dense-sampling sign-change bisection. Even-multiplicity roots never cross
// zero, so sign changes of the derivative are bisected as well and accepted
// when the polynomial residual is inside the same bound the implementation
// uses.
inline std::vector<double> quartic_roots_oracle(const std::array<double, 5>& coeffs,
                                                double tol = 1e-9) {
    double norm_inf = 0.0;
    for (double c : coeffs) norm_inf = std::max(norm_inf, std::abs(c));
    const double residual_bound = tol * std::max(1.0, norm_inf);

    // Cauchy-style search radius from the effective leading coefficient.
    int degree = 4;
    while (degree > 0 && std::abs(coeffs[4 - degree]) <= 1e-14 * norm_inf) --degree;
    const double lead = std::abs(coeffs[4 - degree]);
    double radius = 1.0;
    for (int i = 4 - degree + 1; i < 5; ++i) radius = std::max(radius, std::abs(coeffs[i]) / lead);
    radius = 1.0 + radius;

    const int samples = 20000;
    std::vector<double> roots;
    auto push = [&](double r) {
        if (std::abs(poly_eval(coeffs, r)) > residual_bound) return;
        for (double seen : roots)
            if (std::abs(seen - r) <= 1e-8 * std::max(1.0, std::abs(seen))) return;
        roots.push_back(r);
    };

    double prev_x = -radius;
    double prev_f = poly_eval(coeffs, prev_x);
    for (int i = 1; i <= samples; ++i) {
        const double x = -radius + 2.0 * radius * i / samples;
        const double f = poly_eval(coeffs, x);
        if (f == 0.0) push(x);
        else if ((prev_f < 0) != (f < 0)) push(detail::bisect(coeffs, prev_x, x));
        prev_x = x;
        prev_f = f;
    }

    const std::array<double, 4> dcoeffs{4.0 * coeffs[0], 3.0 * coeffs[1], 2.0 * coeffs[2],
                                        coeffs[3]};
    auto deval = [&](double x) {
        double v = 0.0;
        for (double coef : dcoeffs) v = v * x + coef;
        return v;
    };
    prev_x = -radius;
    prev_f = deval(prev_x);
    for (int i = 1; i <= samples; ++i) {
        const double x = -radius + 2.0 * radius * i / samples;
        const double f = deval(x);
        if ((prev_f < 0) != (f < 0) || f == 0.0) push(detail::bisect_n(dcoeffs, prev_x, x));
        prev_x = x;
        prev_f = f;
    }

    std::sort(roots.begin(), roots.end());
    return roots;
}

// Bidirectional match: every root in each set has a counterpart in the other
// within the tolerance.
inline bool root_sets_match(const std::vector<double>& a, const std::vector<double>& b,
                            double tol = 1e-7) {
    auto covered = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
        for (double x : xs) {
            bool hit = false;
            for (double y : ys)
                if (std::abs(x - y) <= tol * std::max(1.0, std::abs(x))) hit = true;
            if (!hit) return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

}  // namespace tripose::test
