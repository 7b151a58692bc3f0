#pragma once

#include <array>
#include <vector>

namespace tripose {

// Real roots of a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0, ascending.
// Degree degrades gracefully when leading coefficients vanish. Candidate
// roots are Newton-polished on the original polynomial, kept only when
// |p(r)| <= tol * max(1, ||coeffs||_inf), and merged when within 1e-9.
std::vector<double> quartic_real_roots(const std::array<double, 5>& coeffs, double tol = 1e-9);

}  // namespace tripose
