#include <cmath>
#include <random>
#include <sstream>

#include "dgmr/experiments.hpp"
#include "dgmr/rational.hpp"
#include "experiment_support.hpp"

namespace dgmr {

using detail::check;
using detail::fmt;

ExperimentResult run_rational(const Config& cfg) {
    ExperimentResult result{"rational",
                            Table({"quantity", "r", "i", "j", "delta", "fitted_C", "fitted_C_doubled_samples",
                                   "max_modulus_right_half_plane", "value"}),
                            {},
                            {}};
    std::mt19937_64 rng(cfg.get_seed("seed", 3));
    const long points = cfg.get_int("points", 100);
    const double closed_tol = cfg.get_double("closed_form_tolerance", 1e-9);
    const double delta = cfg.get_double("delta", M_PI / 3.0);
    const auto per_decade = static_cast<std::size_t>(cfg.get_int("per_decade", 20));
    const double stability_tol = cfg.get_double("stability_tolerance", 0.05);
    std::uniform_real_distribution<double> re(0.0, 5.0);
    std::uniform_real_distribution<double> im(-5.0, 5.0);

    const RationalTable r0(0);
    const RationalTable r1(1);
    double err0 = 0.0;
    double err1 = 0.0;
    for (long k = 0; k < points; ++k) {
        const Complex z(re(rng), im(rng));
        err0 = std::max(err0, std::abs(r0.stability(z) - 1.0 / (1.0 + z)));
        const Complex closed = (1.0 - z / 3.0) / (1.0 + 2.0 * z / 3.0 + z * z / 6.0);
        err1 = std::max(err1, std::abs(r1.stability(z) - closed) / std::max(1.0, std::abs(closed)));
    }
    result.table.row() << "closed_form_error" << 0 << 0 << 0 << "" << "" << "" << "" << err0;
    result.table.row() << "closed_form_error" << 1 << 1 << 0 << "" << "" << "" << "" << err1;
    result.checks.push_back(check(3, "R00 = 1/(1+z)", err0 <= closed_tol, "max error " + fmt(err0)));
    result.checks.push_back(check(3, "R10 closed form", err1 <= closed_tol, "max error " + fmt(err1)));

    bool degrees_ok = true;
    bool a_stable = true;
    bool sector_ok = true;
    bool decay_ok = true;
    bool derivative_ok = true;
    std::ostringstream degree_detail;
    std::ostringstream sector_detail;
    std::ostringstream decay_detail;
    const std::vector<Complex> grid = right_half_plane_grid();
    const std::vector<Complex> contour = sector_contour(delta, 1e-3, 1e6, per_decade);
    const std::vector<Complex> contour2 = sector_contour(delta, 1e-3, 1e6, 2 * per_decade);
    for (int r = 0; r <= kMaxDegree; ++r) {
        const RationalTable table(r);
        const PolynomialStructure poly = extract_polynomials(table);
        result.table.row() << "deg_qhat" << r << "" << "" << "" << "" << "" << "" << poly.q_hat_degree;
        result.table.row() << "max_deg_q" << r << "" << "" << "" << "" << "" << "" << poly.max_numerator_degree;
        if (poly.q_hat_degree != r + 1 || poly.max_numerator_degree > r) {
            degrees_ok = false;
        }
        degree_detail << (r == 0 ? "" : ", ") << "r=" << r << ": " << poly.q_hat_degree << "/"
                      << poly.max_numerator_degree;

        const AStabilityReport a = check_a_stability(table, grid);
        result.table.row() << "a_stability" << r << r << 0 << "" << "" << "" << a.max_modulus << a.far_field;
        a_stable = a_stable && a.max_modulus <= 1.0 + 1e-12;

        const double h = 1e-6;
        const double derivative = (table.stability(h).real() - table.stability(-h).real()) / (2.0 * h);
        result.table.row() << "stability_derivative_at_0" << r << r << 0 << "" << "" << "" << "" << derivative;
        derivative_ok = derivative_ok && std::abs(derivative + 1.0) <= 1e-6;

        // Decay of |R_{i,0}| far out on the contour.
        for (int i = 0; i <= r; ++i) {
            std::vector<double> radii;
            std::vector<double> values;
            for (double rho : {1e4, 1e5, 1e6}) {
                radii.push_back(rho);
                values.push_back(std::abs(table.eval(std::polar(rho, delta)).init[i]));
            }
            const OrderFit fit = fit_order(radii, values);
            result.table.row() << "init_decay_slope" << r << i << 0 << delta << "" << "" << "" << fit.slope;
            if (std::abs(fit.slope + 1.0) > 0.1) {
                decay_ok = false;
                decay_detail << " r=" << r << ",i=" << i << ":" << fit.slope;
            }
        }

        if (r == 0) {
            continue;
        }
        const SectorBoundReport a1 = check_sector_bounds(table, contour, delta);
        const SectorBoundReport a2 = check_sector_bounds(table, contour2, delta);
        for (int i = 0; i <= r; ++i) {
            result.table.row() << "sector_init" << r << i << 0 << delta << a1.init[i] << a2.init[i] << "" << "";
            for (int j = 0; j <= r; ++j) {
                result.table.row() << "sector_load" << r << i << j << delta << a1.load(i, j) << a2.load(i, j) << "" << "";
            }
        }
        const auto stable = [&](double x, double y) {
            return std::isfinite(x) && std::isfinite(y) && std::abs(y - x) <= stability_tol * std::abs(x);
        };
        // Nodes i >= 1 carry the decay of the semigroup; the left node is reported separately.
        for (int i = 1; i <= r; ++i) {
            if (!(a1.init[i] > 0.0) || !stable(a1.init[i], a2.init[i])) {
                sector_ok = false;
                sector_detail << " init r=" << r << ",i=" << i << ":" << a1.init[i] << "/" << a2.init[i];
            }
        }
        for (int i = 0; i <= r; ++i) {
            for (int j = 0; j <= r; ++j) {
                if (!stable(a1.load(i, j), a2.load(i, j))) {
                    sector_ok = false;
                    sector_detail << " load r=" << r << ",(" << i << "," << j << ")";
                }
            }
        }
    }
    result.checks.push_back(check(3, "deg qhat = r+1 and deg q <= r", degrees_ok, degree_detail.str()));
    result.checks.push_back(check(3, "|R_{r,0}| <= 1 on the right half-plane grid", a_stable,
                                  std::to_string(grid.size()) + " samples per degree"));
    result.checks.push_back(check(3, "sector constants finite and sample-stable", sector_ok,
                                  sector_ok ? "delta = " + fmt(delta) + ", nodes i >= 1 and all load entries"
                                            : sector_detail.str()));
    result.checks.push_back(check(3, "|R_{i,0}| decays with slope -1", decay_ok,
                                  decay_ok ? "all r, i" : decay_detail.str()));
    result.checks.push_back(check(3, "R_{r,0}'(0) = -1", derivative_ok, "central difference, h = 1e-6"));
    return result;
}

}  // namespace dgmr
