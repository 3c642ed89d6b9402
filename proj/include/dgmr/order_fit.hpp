#pragma once

#include <vector>

namespace dgmr {

/// Least-squares line through (log h, log value). The residual is the root
/// mean square of the log residuals.
struct OrderFit {
    std::vector<double> h;
    std::vector<double> values;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    /// Successive values all move in the direction of the fitted slope.
    bool monotone = false;

    static constexpr double kConfirmResidual = 0.05;

    bool confirmed() const { return residual < kConfirmResidual; }
    bool matches(double expected, double tolerance) const;
};

/// Requires at least three levels and positive data.
OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& values);

}  // namespace dgmr
