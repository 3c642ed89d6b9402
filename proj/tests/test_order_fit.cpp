#include <cmath>
#include <vector>

#include "doctest.h"
#include "dgmr/errors.hpp"
#include "dgmr/order_fit.hpp"

using namespace dgmr;

TEST_SUITE("order_fit") {
    TEST_CASE("exact power law") {
        const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
        std::vector<double> v;
        for (double x : h) {
            v.push_back(3.0 * x * x * x);
        }
        const OrderFit fit = fit_order(h, v);
        CHECK(fit.slope == doctest::Approx(3.0));
        CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
        CHECK(fit.residual < 1e-12);
        CHECK(fit.monotone);
        CHECK(fit.confirmed());
        CHECK(fit.matches(3.0, 0.01));
        CHECK_FALSE(fit.matches(2.0, 0.5));
    }

    TEST_CASE("residual of a kinked sequence") {
        // log values 0, 1, 0 at log h 0, 1, 2: slope 0, residuals -1/3, 2/3, -1/3
        const std::vector<double> h{1.0, std::exp(1.0), std::exp(2.0)};
        const std::vector<double> v{1.0, std::exp(1.0), 1.0};
        const OrderFit fit = fit_order(h, v);
        CHECK(fit.slope == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(fit.residual == doctest::Approx(std::sqrt(2.0) / 3.0));
        CHECK_FALSE(fit.confirmed());
    }

    TEST_CASE("monotonicity follows the fitted slope") {
        const std::vector<double> h{1.0, 2.0, 4.0, 8.0};
        const OrderFit up = fit_order(h, {1.0, 2.0, 3.9, 8.5});
        CHECK(up.monotone);
        const OrderFit wobble = fit_order(h, {1.0, 2.0, 1.9, 8.5});
        CHECK(wobble.slope > 0.0);
        CHECK_FALSE(wobble.monotone);
    }

    TEST_CASE("invalid input") {
        CHECK_THROWS_AS(fit_order({1.0, 2.0}, {1.0, 2.0}), ConfigError);
        CHECK_THROWS_AS(fit_order({1.0, 2.0, 3.0}, {1.0, 2.0}), ConfigError);
        CHECK_THROWS_AS(fit_order({1.0, 2.0, 3.0}, {1.0, 0.0, 2.0}), ConfigError);
        CHECK_THROWS_AS(fit_order({1.0, 2.0, 3.0}, {1.0, NAN, 2.0}), ConfigError);
    }
}
