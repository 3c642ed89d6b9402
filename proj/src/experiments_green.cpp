#include <cmath>
#include <limits>
#include <sstream>

#include "dgmr/errors.hpp"
#include "dgmr/experiments.hpp"
#include "dgmr/greens.hpp"
#include "dgmr/interpolation.hpp"
#include "dgmr/norms.hpp"
#include "experiment_support.hpp"

namespace dgmr {

using detail::check;
using detail::fmt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TemporalMesh family_member(double final_time, std::size_t n0, std::size_t n, double c, std::uint64_t seed) {
    const TemporalMesh base = TemporalMesh::make_quasi_uniform(final_time, n0, c, seed);
    if (n % n0 != 0) {
        throw ConfigError("refinement levels must be multiples of the first level");
    }
    return base.refined(n / n0);
}

std::string p_label(double p) { return std::isinf(p) ? "inf" : fmt(p); }

}  // namespace

ExperimentResult run_interp(const Config& cfg) {
    ExperimentResult result{"interp", Table({"r", "l", "p", "N", "tau_max", "error"}), {}, {}};
    const std::vector<std::size_t> levels = cfg.get_levels("N", {8, 16, 32, 64, 128});
    const double c = cfg.get_double("c", 0.5);
    const double final_time = cfg.get_double("T", 1.0);
    const double omega = cfg.get_double("frequency", 3.0);
    const double tol = cfg.get_double("order_tolerance", 0.15);
    const std::uint64_t seed = cfg.get_seed("seed", 8);
    const SpatialOperator scalar = SpatialOperator::diagonal(Eigen::VectorXd::Ones(1));
    const TimeFunction v = [omega](double t) -> Eigen::VectorXd { return Eigen::VectorXd::Constant(1, std::sin(omega * t)); };
    const auto dv = [omega](double t) { return omega * std::cos(omega * t); };
    for (int r : cfg.get_ints("r", {1, 2})) {
        for (double p : cfg.get_doubles("p", {2.0, kInf})) {
            for (int l : {0, 1}) {
                std::vector<double> h;
                std::vector<double> err;
                for (std::size_t n : levels) {
                    const TemporalMesh mesh = family_member(final_time, levels.front(), n, c, seed);
                    const PiecewisePoly iv = interpolate(mesh, r, v, 4);
                    const TimeFunction e = [&](double t) -> Eigen::VectorXd {
                        const std::size_t k = mesh.locate(t);
                        const double s = (t - mesh.t(k)) / mesh.tau(k);
                        if (l == 0) {
                            return iv.eval_local(k, s) - v(t);
                        }
                        return iv.eval_local(k, s, 1) - Eigen::VectorXd::Constant(1, dv(t));
                    };
                    const double value = function_norm(scalar, e, mesh, p, r + 4, 4);
                    h.push_back(mesh.tau_max());
                    err.push_back(value);
                    result.table.row() << r << l << p_label(p) << n << mesh.tau_max() << value;
                }
                const OrderFit fit = fit_order(h, err);
                result.fits.push_back(fit);
                std::ostringstream name;
                name << "interpolation order r=" << r << " l=" << l << " p=" << p_label(p);
                result.checks.push_back(detail::order_check(6, name.str(), fit, r + 1.0 - l, tol));
            }
        }
    }
    return result;
}

ExperimentResult run_mollifier(const Config& cfg) {
    ExperimentResult result{"mollifier", Table({"r", "l", "p", "N", "tau", "norm"}), {}, {}};
    const std::vector<std::size_t> levels = cfg.get_levels("N", {8, 16, 32, 64, 128});
    const double c = cfg.get_double("c", 0.5);
    const double final_time = cfg.get_double("T", 1.0);
    const double position = cfg.get_double("position", 0.3);
    const double tol = cfg.get_double("exponent_tolerance", 0.1);
    const std::uint64_t seed = cfg.get_seed("seed", 10);
    for (int r : cfg.get_ints("r", {1, 2})) {
        for (double p : cfg.get_doubles("p", {1.0, 2.0, kInf})) {
            for (int l : {0, 1}) {
                std::vector<double> h;
                std::vector<double> values;
                for (std::size_t n : levels) {
                    const TemporalMesh mesh = family_member(final_time, levels.front(), n, c, seed);
                    const std::size_t k = n / 2;
                    const Mollifier delta(mesh, r, k, mesh.t(k) + position * mesh.tau(k));
                    const double value = delta.norm(l, p);
                    h.push_back(mesh.tau(k));
                    values.push_back(value);
                    result.table.row() << r << l << p_label(p) << n << mesh.tau(k) << value;
                }
                const double expected = -l - 1.0 + (std::isinf(p) ? 0.0 : 1.0 / p);
                const OrderFit fit = fit_order(h, values);
                result.fits.push_back(fit);
                std::ostringstream name;
                name << "delta norm exponent r=" << r << " l=" << l << " p=" << p_label(p);
                result.checks.push_back(detail::order_check(6, name.str(), fit, expected, tol, false));
                if (l == 0 && p == 1.0) {
                    const double lowest = *std::min_element(values.begin(), values.end());
                    result.checks.push_back(check(6, "L1 norm at least one r=" + std::to_string(r),
                                                  lowest >= 1.0 - 1e-10, "min " + fmt(lowest)));
                }
            }
        }
    }
    return result;
}

ExperimentResult run_green(const Config& cfg) {
    ExperimentResult result{"green",
                            Table({"quantity", "N", "tau", "alpha", "value", "coarse_value", "distance"}),
                            {},
                            {}};
    const int r = static_cast<int>(cfg.get_int("r", 1));
    if (r < 1 || r > kMaxDegree) {
        throw ConfigError("green: requires 1 <= r <= 4");
    }
    const SpatialOperator op = detail::operator_from(cfg, {});
    const std::vector<std::size_t> levels = cfg.get_levels("N", {16, 32, 64, 128, 256});
    const double c = cfg.get_double("c", 1.0);
    const double final_time = cfg.get_double("T", 1.0);
    const double p = cfg.get_double("p", 2.0);
    const double p_dual = p / (p - 1.0);
    const double alpha = cfg.get_double("alpha", 1.0 / p_dual + 0.5);
    const double tol = cfg.get_double("order_tolerance", 0.2);
    const auto refinement = static_cast<std::size_t>(cfg.get_int("refinement", 8));
    const std::uint64_t seed = cfg.get_seed("seed", 11);
    if (!(alpha > 1.0 / p_dual) || !(alpha < 1.0 / p_dual + 1.0)) {
        throw ConfigError("green: alpha must lie in (1/p', 1/p' + 1)");
    }
    const Eigen::VectorXd v = Eigen::VectorXd::Ones(op.dim()).normalized();

    std::vector<double> h;
    std::vector<double> dg_err;
    std::vector<double> int_err;
    bool resolved = true;
    for (std::size_t n : levels) {
        const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(final_time, n, c, seed + n);
        const std::size_t center = n / 2;
        const double t_tilde = mesh.t(center) + 0.5 * mesh.tau(center);
        const GreensPair pair(op, mesh, r, center, t_tilde, v);
        const WeightFn sigma{t_tilde, mesh.tau_max()};
        const TimeFunction ref_a = pair.reference_A_fn();
        const WeightedError e = weighted_A_error(ref_a, pair.discrete(), sigma, alpha, p, op, refinement);
        const PiecewisePoly ig = interpolate(mesh, r, pair.reference_fn(), 4);
        const WeightedError ei = weighted_A_error(ref_a, ig, sigma, alpha, p, op, refinement);
        const WeightedError control = weighted_A_error(ref_a, pair.discrete(), sigma, 0.0, p, op, refinement);
        resolved = resolved && !e.flagged && !ei.flagged;
        h.push_back(mesh.tau_max());
        dg_err.push_back(e.value);
        int_err.push_back(ei.value);
        result.table.row() << "weighted_dg_error" << n << mesh.tau_max() << alpha << e.value << e.coarse_value << "";
        result.table.row() << "weighted_interpolation_error" << n << mesh.tau_max() << alpha << ei.value
                           << ei.coarse_value << "";
        result.table.row() << "unweighted_control" << n << mesh.tau_max() << 0.0 << control.value
                           << control.coarse_value << "";
    }
    const double expected = alpha - 1.0 / p_dual;
    const OrderFit fit = fit_order(h, dg_err);
    const OrderFit fit_int = fit_order(h, int_err);
    result.fits.push_back(fit);
    result.fits.push_back(fit_int);
    result.checks.push_back(detail::order_check(7, "weighted Green's function error order", fit, expected, tol));
    result.checks.push_back(
        detail::order_check(7, "weighted interpolation error order", fit_int, expected, tol));
    result.checks.push_back(check(7, "reference resolved", resolved, "refinement " + std::to_string(refinement)));

    // Decay of A(I_tau g - g_tau) away from the support.
    const auto n_loc = static_cast<std::size_t>(cfg.get_int("locality_N", 64));
    const auto center = static_cast<std::size_t>(cfg.get_int("locality_interval", 1));
    const auto offset = static_cast<std::size_t>(cfg.get_int("locality_offset", 4));
    const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(final_time, n_loc, c, seed);
    const double t_tilde = mesh.t(center) + 0.5 * mesh.tau(center);
    const GreensPair pair(op, mesh, r, center, t_tilde, v);
    const PiecewisePoly z = interpolate(mesh, r, pair.reference_fn(), 4) - pair.discrete();
    std::vector<double> dist;
    std::vector<double> sup;
    for (std::size_t m = center + offset; m < n_loc; ++m) {
        const double d = mesh.t(m - 1) - mesh.t(center + 1);
        const double value = interval_norm(op, z, m, kInf, 0, true, 8);
        dist.push_back(d);
        sup.push_back(value);
        result.table.row() << "locality_sup" << n_loc << mesh.tau_max() << "" << value << "" << d;
    }
    const OrderFit decay = fit_order(dist, sup);
    result.fits.push_back(decay);
    result.checks.push_back(detail::order_check(7, "locality slope", decay, -2.0, 0.3, false));
    return result;
}

}  // namespace dgmr
