#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers/oracles.hpp"
#include "tripose/errors.hpp"
#include "tripose/quartic.hpp"

using namespace tripose;

TEST_CASE("factorable quartic: x^4 - 5x^2 + 4 = (x^2 - 1)(x^2 - 4)") {
    const auto roots = quartic_real_roots({1, 0, -5, 0, 4});
    REQUIRE(roots.size() == 4);
    CHECK(roots[0] == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(roots[1] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(roots[2] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(roots[3] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("strictly positive quartic has no real roots") {
    CHECK(quartic_real_roots({1, 0, 0, 0, 1}).empty());
}

TEST_CASE("quadruple root merges to one entry") {
    // (x - 1)^4 = x^4 - 4x^3 + 6x^2 - 4x + 1
    const auto roots = quartic_real_roots({1, -4, 6, -4, 1});
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("degree degrades gracefully") {
    // a4 = 0: cubic x^3 - x = x(x-1)(x+1)
    const auto cubic = quartic_real_roots({0, 1, 0, -1, 0});
    REQUIRE(cubic.size() == 3);
    CHECK(cubic[0] == doctest::Approx(-1.0));
    CHECK(cubic[1] == doctest::Approx(0.0));
    CHECK(cubic[2] == doctest::Approx(1.0));

    const auto quadratic = quartic_real_roots({0, 0, 2, -6, 4});  // 2(x-1)(x-2)
    REQUIRE(quadratic.size() == 2);
    CHECK(quadratic[0] == doctest::Approx(1.0));
    CHECK(quadratic[1] == doctest::Approx(2.0));

    const auto linear = quartic_real_roots({0, 0, 0, 3, -6});
    REQUIRE(linear.size() == 1);
    CHECK(linear[0] == doctest::Approx(2.0));

    CHECK_THROWS_AS(quartic_real_roots({0, 0, 0, 0, 0}), Error);
    CHECK_THROWS_AS(quartic_real_roots({0, 0, 0, 0, 5}), Error);
}

TEST_CASE("random quartics match the bisection oracle") {
    std::mt19937 rng(1009);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::array<double, 5> c{};
        do {
            for (double& v : c) v = uni(rng);
        } while (std::abs(c[0]) < 0.1);
        const auto got = quartic_real_roots(c, 1e-9);
        const auto want = test::quartic_roots_oracle(c, 1e-9);
        const bool match = test::root_sets_match(got, want, 1e-7);
        CHECK(match);
    }
}

TEST_CASE("constructed repeated roots match the oracle") {
    std::mt19937 rng(2003);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        // (x - r)^2 (x^2 + px + q), occasionally with q forcing no extra roots
        const double r = uni(rng);
        const double p = uni(rng);
        const double q = uni(rng) + (trial % 2 ? 2.5 : 0.0);
        const std::array<double, 5> c{
            1.0,
            p - 2.0 * r,
            q - 2.0 * r * p + r * r,
            r * r * p - 2.0 * r * q,
            r * r * q,
        };
        const auto got = quartic_real_roots(c, 1e-9);
        const auto want = test::quartic_roots_oracle(c, 1e-9);
        CHECK(test::root_sets_match(got, want, 1e-7));
        // The double root itself must be present.
        bool has_r = false;
        for (double x : got)
            if (std::abs(x - r) <= 1e-6 * std::max(1.0, std::abs(r))) has_r = true;
        CHECK(has_r);
    }
}

TEST_CASE("returned roots satisfy the residual contract") {
    std::mt19937 rng(3001);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<double, 5> c{};
        for (double& v : c) v = uni(rng);
        if (std::abs(c[0]) < 1e-3) c[0] = 1.0;
        double norm_inf = 0.0;
        for (double v : c) norm_inf = std::max(norm_inf, std::abs(v));
        const auto roots = quartic_real_roots(c, 1e-9);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            CHECK(std::abs(test::poly_eval(c, roots[i])) <= 1e-9 * std::max(1.0, norm_inf));
            if (i > 0) CHECK(roots[i] - roots[i - 1] > 1e-9);
        }
    }
}
