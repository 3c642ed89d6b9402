#include <cmath>

#include "doctest.h"
#include "dgmr/errors.hpp"
#include "dgmr/quadrature.hpp"

using namespace dgmr;

TEST_SUITE("quadrature") {
    TEST_CASE("gauss rules integrate monomials exactly up to degree 2n-1") {
        for (std::size_t n = 1; n <= 8; ++n) {
            const QuadratureRule rule = gauss_legendre(n);
            REQUIRE(rule.size() == n);
            for (std::size_t k = 0; k <= 2 * n - 1; ++k) {
                double acc = 0.0;
                for (std::size_t q = 0; q < n; ++q) {
                    acc += rule.weights[q] * std::pow(rule.points[q], static_cast<double>(k));
                }
                CHECK(acc == doctest::Approx(1.0 / static_cast<double>(k + 1)).epsilon(1e-14));
            }
        }
    }

    TEST_CASE("points are ascending and inside the unit interval") {
        const QuadratureRule rule = gauss_legendre(6);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            CHECK(rule.points[q] > 0.0);
            CHECK(rule.points[q] < 1.0);
            if (q > 0) {
                CHECK(rule.points[q] > rule.points[q - 1]);
            }
        }
    }

    TEST_CASE("two-point rule matches the closed form") {
        const QuadratureRule rule = gauss_legendre(2);
        const double d = 0.5 / std::sqrt(3.0);
        CHECK(rule.points[0] == doctest::Approx(0.5 - d).epsilon(1e-15));
        CHECK(rule.points[1] == doctest::Approx(0.5 + d).epsilon(1e-15));
        CHECK(rule.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
    }

    TEST_CASE("composite rule integrates a smooth non-polynomial function") {
        const QuadratureRule rule = composite_gauss_legendre(4, 16);
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            acc += rule.weights[q] * std::exp(rule.points[q]);
        }
        CHECK(acc == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    }

    TEST_CASE("zero points rejected") {
        CHECK_THROWS_AS(gauss_legendre(0), ConfigError);
        CHECK_THROWS_AS(composite_gauss_legendre(2, 0), ConfigError);
    }
}
