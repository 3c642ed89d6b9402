#include "dgmr/order_fit.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "dgmr/errors.hpp"

namespace dgmr {

bool OrderFit::matches(double expected, double tolerance) const {
    return confirmed() && std::abs(slope - expected) <= tolerance;
}

OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& values) {
    if (h.size() != values.size()) {
        throw ConfigError("fit_order: h and values differ in length");
    }
    if (h.size() < 3) {
        throw ConfigError("fit_order: at least three refinement levels are required");
    }
    const auto n = static_cast<Eigen::Index>(h.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        if (!(h[i] > 0.0) || !(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw ConfigError("fit_order: data must be positive and finite");
        }
        design(k, 0) = std::log(h[i]);
        design(k, 1) = 1.0;
        y[k] = std::log(values[i]);
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
    OrderFit fit;
    fit.h = h;
    fit.values = values;
    fit.slope = coef[0];
    fit.intercept = coef[1];
    fit.residual = std::sqrt((design * coef - y).squaredNorm() / static_cast<double>(n));
    fit.monotone = true;
    for (Eigen::Index k = 1; k < n; ++k) {
        const double step = (y[k] - y[k - 1]) / (design(k, 0) - design(k - 1, 0));
        if (step * fit.slope <= 0.0) {
            fit.monotone = false;
        }
    }
    return fit;
}

}  // namespace dgmr
