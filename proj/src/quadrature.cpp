#include "dgmr/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "dgmr/errors.hpp"

namespace dgmr {

QuadratureRule gauss_legendre(std::size_t n_points) {
    if (n_points == 0) {
        throw ConfigError("gauss_legendre: need at least one point");
    }
    const auto n = static_cast<int>(n_points);
    QuadratureRule rule;
    rule.points.resize(n_points);
    rule.weights.resize(n_points);

    // Newton iteration on P_n from the Chebyshev initial guess; roots are
    // symmetric so only half of them are computed.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // recompute derivative at the converged root
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        // map [-1,1] -> [0,1]; ascending order
        rule.points[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
        rule.points[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
    }
    if (n % 2 == 1) {
        rule.points[static_cast<std::size_t>(n / 2)] = 0.5;
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(std::size_t n_points, std::size_t pieces) {
    if (pieces == 0) {
        throw ConfigError("composite_gauss_legendre: need at least one piece");
    }
    const QuadratureRule base = gauss_legendre(n_points);
    QuadratureRule rule;
    rule.points.reserve(n_points * pieces);
    rule.weights.reserve(n_points * pieces);
    const double h = 1.0 / static_cast<double>(pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
        const double a = static_cast<double>(k) * h;
        for (std::size_t q = 0; q < base.size(); ++q) {
            rule.points.push_back(a + h * base.points[q]);
            rule.weights.push_back(h * base.weights[q]);
        }
    }
    return rule;
}

}  // namespace dgmr
