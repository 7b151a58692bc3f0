#include "tripose/quartic.hpp"

#include <algorithm>
#include <cmath>

#include "tripose/errors.hpp"

namespace tripose {

namespace {

double eval(const std::array<double, 5>& c, double x) {
    return (((c[0] * x + c[1]) * x + c[2]) * x + c[3]) * x + c[4];
}

double eval_derivative(const std::array<double, 5>& c, double x) {
    return ((4.0 * c[0] * x + 3.0 * c[1]) * x + 2.0 * c[2]) * x + c[3];
}

// Real roots of x^2 + bx + c. A non-positive discriminant still yields the
// vertex as a candidate; the caller's residual filter arbitrates tangency.
void quadratic_candidates(double b, double c, std::vector<double>& out) {
    const double disc = b * b - 4.0 * c;
    if (disc <= 0.0) {
        out.push_back(-b / 2.0);
        return;
    }
    const double s = std::sqrt(disc);
    const double q = -(b + std::copysign(s, b)) / 2.0;
    out.push_back(q);
    if (q != 0.0) out.push_back(c / q);
    else out.push_back(-b);
}

// All real roots of x^3 + bx^2 + cx + d.
void cubic_roots(double b, double c, double d, std::vector<double>& out) {
    // Depress with x = t - b/3.
    const double shift = b / 3.0;
    const double p = c - b * b / 3.0;
    const double q = d - b * c / 3.0 + 2.0 * b * b * b / 27.0;

    if (p == 0.0 && q == 0.0) {
        out.push_back(-shift);
        return;
    }
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double t = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
        out.push_back(t - shift);
    } else {
        // Three real roots (trigonometric form).
        const double rho = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * rho), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            out.push_back(rho * std::cos(theta - 2.0 * M_PI * k / 3.0) - shift);
    }
}

// Candidate real roots of the monic quartic x^4 + bx^3 + cx^2 + dx + e via
// Ferrari's factorization into two quadratics.
void quartic_candidates(double b, double c, double d, double e, std::vector<double>& out) {
    const double shift = b / 4.0;
    const double p = c - 3.0 * b * b / 8.0;
    const double q = d - b * c / 2.0 + b * b * b / 8.0;
    const double r = e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b * b * b * b / 256.0;

    // Characteristic root scale; q below it means effectively biquadratic.
    const double scale = std::max(
        {1e-30, std::sqrt(std::abs(p)), std::cbrt(std::abs(q)), std::pow(std::abs(r), 0.25)});
    std::vector<double> ys;
    if (std::abs(q) <= 1e-12 * scale * scale * scale) {
        std::vector<double> zs;
        quadratic_candidates(p, r, zs);
        for (double z : zs) {
            if (z < 0.0) {
                if (z > -1e-12 * scale * scale) ys.push_back(0.0);
                continue;
            }
            ys.push_back(std::sqrt(z));
            ys.push_back(-std::sqrt(z));
        }
    } else {
        // Resolvent cubic u^3 + 2p u^2 + (p^2 - 4r) u - q^2 = 0 has a positive
        // root (value at 0 is -q^2 < 0); take the largest for stability.
        std::vector<double> us;
        cubic_roots(2.0 * p, p * p - 4.0 * r, -q * q, us);
        const double u = *std::max_element(us.begin(), us.end());
        if (u <= 0.0) {
            quadratic_candidates(p, r, ys);  // degenerate; fall back
        } else {
            const double alpha = std::sqrt(u);
            const double beta = (p + u - q / alpha) / 2.0;
            const double gamma = (p + u + q / alpha) / 2.0;
            quadratic_candidates(alpha, beta, ys);
            quadratic_candidates(-alpha, gamma, ys);
        }
    }
    for (double y : ys) out.push_back(y - shift);
}

}  // namespace

std::vector<double> quartic_real_roots(const std::array<double, 5>& coeffs, double tol) {
    double norm_inf = 0.0;
    for (double c : coeffs) norm_inf = std::max(norm_inf, std::abs(c));
    if (norm_inf == 0.0) throw Error(Errc::invalid_argument, "zero polynomial has no root set");

    // Leading coefficients negligible against the rest degrade the degree.
    const double lead_eps = 1e-14 * norm_inf;
    int degree = 4;
    while (degree > 0 && std::abs(coeffs[4 - degree]) <= lead_eps) --degree;
    if (degree == 0)
        throw Error(Errc::invalid_argument, "constant polynomial has no root set");

    const double lead = coeffs[4 - degree];
    std::vector<double> candidates;
    switch (degree) {
        case 1:
            candidates.push_back(-coeffs[4] / coeffs[3]);
            break;
        case 2:
            quadratic_candidates(coeffs[3] / lead, coeffs[4] / lead, candidates);
            break;
        case 3:
            cubic_roots(coeffs[2] / lead, coeffs[3] / lead, coeffs[4] / lead, candidates);
            break;
        default:
            quartic_candidates(coeffs[1] / lead, coeffs[2] / lead, coeffs[3] / lead,
                               coeffs[4] / lead, candidates);
            break;
    }

    const double residual_bound = tol * std::max(1.0, norm_inf);
    std::vector<double> roots;
    for (double x : candidates) {
        if (!std::isfinite(x)) continue;
        for (int it = 0; it < 12; ++it) {
            const double f = eval(coeffs, x);
            const double df = eval_derivative(coeffs, x);
            if (df == 0.0) break;
            const double step = f / df;
            x -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
        }
        if (std::isfinite(x) && std::abs(eval(coeffs, x)) <= residual_bound) roots.push_back(x);
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double r : roots) {
        if (!merged.empty() && r - merged.back() <= 1e-9) continue;
        merged.push_back(r);
    }
    return merged;
}

}  // namespace tripose
