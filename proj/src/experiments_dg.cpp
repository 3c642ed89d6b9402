#include <cmath>
#include <random>
#include <sstream>

#include "dgmr/bilinear.hpp"
#include "dgmr/experiments.hpp"
#include "dgmr/greens.hpp"
#include "dgmr/norms.hpp"
#include "dgmr/rational.hpp"
#include "experiment_support.hpp"

namespace dgmr {

using detail::check;
using detail::fmt;

namespace {

Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        m.data()[k] = normal(rng);
    }
    return m;
}

/// The same mesh family under halving when the levels allow it.
TemporalMesh level_mesh(const TemporalMesh& base, std::size_t n0, std::size_t n, double c, std::uint64_t seed) {
    if (n % n0 == 0) {
        return base.refined(n / n0);
    }
    return TemporalMesh::make_quasi_uniform(base.final_time(), n, c, seed);
}

}  // namespace

ExperimentResult run_exactness(const Config& cfg) {
    ExperimentResult result{"exactness", Table({"r", "N", "trace_error", "coeff_error", "max_jump"}), {}, {}};
    const SpatialOperator op = detail::operator_from(cfg, {.eigenvalues = {0.5, 3.0, 40.0}});
    const std::size_t n = static_cast<std::size_t>(cfg.get_int("N", 8));
    const double c = cfg.get_double("c", 0.5);
    const double final_time = cfg.get_double("T", 1.0);
    const double tol = cfg.get_double("tolerance", 1e-10);
    std::mt19937_64 rng(cfg.get_seed("seed", 1));
    const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(final_time, n, c, rng());
    double worst = 0.0;
    for (int r : cfg.get_ints("r", {1, 2})) {
        const Eigen::MatrixXd coef = normal_matrix(op.dim(), r + 1, rng);
        const TimeFunction u = [coef](double t) -> Eigen::VectorXd {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(coef.rows());
            for (Eigen::Index k = coef.cols() - 1; k >= 0; --k) {
                v = v * t + coef.col(k);
            }
            return v;
        };
        const TimeFunction du = [coef](double t) -> Eigen::VectorXd {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(coef.rows());
            for (Eigen::Index k = coef.cols() - 1; k >= 1; --k) {
                v = v * t + static_cast<double>(k) * coef.col(k);
            }
            return v;
        };
        const TimeFunction f = [&](double t) -> Eigen::VectorXd { return du(t) + op.apply(u(t)); };
        const PiecewisePoly sol = solve_primal(op, mesh, r, f, u(0.0));
        double trace_err = 0.0;
        double coeff_err = 0.0;
        double jump = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            trace_err = std::max(trace_err, (sol.right_trace(k) - u(mesh.t(k + 1))).lpNorm<Eigen::Infinity>());
            trace_err = std::max(trace_err, (sol.left_trace(k) - u(mesh.t(k))).lpNorm<Eigen::Infinity>());
            for (int j = 0; j <= r; ++j) {
                const double t = mesh.t(k) + mesh.tau(k) * static_cast<double>(j) / r;
                coeff_err = std::max(coeff_err, (sol.coeffs(k).col(j) - u(t)).lpNorm<Eigen::Infinity>());
            }
            jump = std::max(jump, sol.jump(k).lpNorm<Eigen::Infinity>());
        }
        result.table.row() << r << n << trace_err << coeff_err << jump;
        worst = std::max({worst, trace_err, coeff_err, jump});
    }
    result.checks.push_back(check(1, "polynomial solutions reproduced", worst <= tol,
                                  "max error " + fmt(worst) + " (tolerance " + fmt(tol) + ")"));
    return result;
}

ExperimentResult run_converge(const Config& cfg) {
    ExperimentResult result{"converge", Table({"r", "p", "N", "tau_max", "error"}), {}, {}};
    const SpatialOperator op = detail::operator_from(cfg, {.eigenvalues = {1.0, 4.0, 9.0}});
    const std::vector<std::size_t> levels = cfg.get_levels("N", {8, 16, 32, 64, 128});
    const double c = cfg.get_double("c", 0.5);
    const double final_time = cfg.get_double("T", 1.0);
    const double tol = cfg.get_double("order_tolerance", 0.15);
    const std::uint64_t seed = cfg.get_seed("seed", 2);
    const Eigen::Index dim = op.dim();
    Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(dim, 1.0, -0.5);
    Eigen::VectorXd w2 = Eigen::VectorXd::LinSpaced(dim, 0.3, 1.2);
    const TimeFunction u = [w, w2](double t) -> Eigen::VectorXd { return std::exp(-t) * w + std::sin(t) * w2; };
    const TimeFunction f = [&](double t) -> Eigen::VectorXd {
        return -std::exp(-t) * w + std::cos(t) * w2 + op.apply(u(t));
    };
    const TemporalMesh base = TemporalMesh::make_quasi_uniform(final_time, levels.front(), c, seed);
    for (int r : cfg.get_ints("r", {1, 2})) {
        for (double p : cfg.get_doubles("p", {2.0, 4.0})) {
            std::vector<double> h;
            std::vector<double> err;
            for (std::size_t n : levels) {
                const TemporalMesh mesh = level_mesh(base, levels.front(), n, c, seed + n);
                const PiecewisePoly sol = solve_primal(op, mesh, r, f, u(0.0), 2);
                const TimeFunction e = [&](double t) -> Eigen::VectorXd { return sol(t) - u(t); };
                const double value = function_norm(op, e, mesh, p, r + 3, 2);
                h.push_back(mesh.tau_max());
                err.push_back(value);
                result.table.row() << r << p << n << mesh.tau_max() << value;
            }
            const OrderFit fit = fit_order(h, err);
            result.fits.push_back(fit);
            std::ostringstream name;
            name << "order r=" << r << " p=" << p;
            result.checks.push_back(detail::order_check(2, name.str(), fit, r + 1.0, tol));
        }
    }
    return result;
}

ExperimentResult run_duhamel(const Config& cfg) {
    ExperimentResult result{"duhamel", Table({"instance", "dim", "max_difference"}), {}, {}};
    const std::size_t n = static_cast<std::size_t>(cfg.get_int("N", 5));
    const int r = static_cast<int>(cfg.get_int("r", 1));
    const long instances = cfg.get_int("instances", 20);
    const double tol = cfg.get_double("tolerance", 1e-9);
    std::mt19937_64 rng(cfg.get_seed("seed", 4));
    std::uniform_real_distribution<double> log_lambda(-2.0, 3.0);
    std::uniform_int_distribution<int> dims(1, 6);
    double worst = 0.0;
    for (long k = 0; k < instances; ++k) {
        const int dim = dims(rng);
        Eigen::VectorXd lambda(dim);
        for (int i = 0; i < dim; ++i) {
            lambda[i] = std::pow(10.0, log_lambda(rng));
        }
        const SpatialOperator op = SpatialOperator::diagonal(lambda);
        const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(1.0, n, 0.5, rng());
        const PiecewisePoly load = PiecewisePoly::random(mesh, r, dim, rng);
        const Eigen::VectorXd u0 = normal_matrix(dim, 1, rng);
        const MomentSource source = piecewise_moments(load);
        std::vector<Eigen::MatrixXd> moments;
        for (std::size_t m = 0; m < n; ++m) {
            moments.push_back(source(mesh, m, r));
        }
        const auto product = duhamel_product(RationalTable(r), op, mesh, moments, u0);
        const PiecewisePoly sol = solve_primal(op, mesh, r, source, u0);
        double diff = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const double scale = 1.0 + sol.coeffs(m).lpNorm<Eigen::Infinity>();
            diff = std::max(diff, (product[m] - sol.coeffs(m)).lpNorm<Eigen::Infinity>() / scale);
        }
        worst = std::max(worst, diff);
        result.table.row() << k << dim << diff;
    }
    result.checks.push_back(check(4, "product formula matches stepping", worst <= tol,
                                  "max relative difference " + fmt(worst) + " over " + std::to_string(instances) +
                                      " instances"));
    return result;
}

ExperimentResult run_duality(const Config& cfg) {
    ExperimentResult result{"duality", Table({"test", "operator", "r", "trial", "value", "difference", "scale"}), {}, {}};
    std::mt19937_64 rng(cfg.get_seed("seed", 9));
    const long trials = cfg.get_int("trials", 4);
    const double duality_tol = cfg.get_double("duality_tolerance", 1e-9);
    const double galerkin_tol = cfg.get_double("galerkin_tolerance", 1e-7);
    const std::size_t n = static_cast<std::size_t>(cfg.get_int("N", 6));
    const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(1.0, n, 0.5, rng());

    Eigen::Matrix4d nonsym = Eigen::Matrix4d::Identity() * 2.0 + 0.6 * normal_matrix(4, 4, rng);
    nonsym.diagonal() += Eigen::Vector4d(0.0, 1.0, 3.0, 10.0);
    Eigen::Matrix3d sym = normal_matrix(3, 3, rng);
    sym = sym * sym.transpose() + Eigen::Matrix3d::Identity();
    const std::vector<std::pair<std::string, SpatialOperator>> general{
        {"dense", SpatialOperator::dense(nonsym)},
        {"diagonal", SpatialOperator::diagonal(Eigen::Vector3d(1.0, 50.0, 2500.0))},
        {"fem1d", SpatialOperator::fem1d(8)},
    };
    const std::vector<std::pair<std::string, SpatialOperator>> symmetric{
        {"dense-sym", SpatialOperator::dense(sym)},
        {"diagonal", SpatialOperator::diagonal(Eigen::Vector3d(1.0, 20.0, 400.0))},
        {"fem1d", SpatialOperator::fem1d(8)},
    };

    double worst_duality = 0.0;
    for (const auto& [name, op] : general) {
        for (int r = 0; r <= kMaxDegree; ++r) {
            for (long k = 0; k < trials; ++k) {
                const PiecewisePoly v = PiecewisePoly::random(mesh, r, op.dim(), rng);
                const PiecewisePoly g = PiecewisePoly::random(mesh, r, op.dim(), rng);
                const double b = bilinear_form(op, v, g);
                const double bd = dual_bilinear_form(op, v, g);
                const double scale = std::max(1.0, std::abs(b));
                worst_duality = std::max(worst_duality, std::abs(b - bd) / scale);
                result.table.row() << "duality" << name << r << k << b << b - bd << scale;
            }
        }
    }
    result.checks.push_back(check(9, "B = B' on random piecewise polynomials", worst_duality <= duality_tol,
                                  "max relative difference " + fmt(worst_duality)));

    double worst_galerkin = 0.0;
    for (const auto& [name, op] : symmetric) {
        const Eigen::MatrixXd coef = normal_matrix(op.dim(), 3, rng);
        const TimeFunction f = [coef](double t) -> Eigen::VectorXd {
            return coef.col(0) + t * coef.col(1) + t * t * coef.col(2);
        };
        const Eigen::VectorXd u0 = normal_matrix(op.dim(), 1, rng);
        const TimeFunction exact = [&op, &f, &u0](double t) { return duhamel_reference(op, f, u0, t); };
        for (int r = 1; r <= 3; ++r) {
            const PiecewisePoly sol = solve_primal(op, mesh, r, f, u0);
            for (long k = 0; k < trials; ++k) {
                const PiecewisePoly g = PiecewisePoly::random(mesh, r, op.dim(), rng);
                const double b = bilinear_form(op, sol, g);
                const double residual = dual_bilinear_form(op, exact, g, 16) - b;
                const double scale = std::max(1.0, std::abs(b));
                worst_galerkin = std::max(worst_galerkin, std::abs(residual) / scale);
                result.table.row() << "galerkin" << name << r << k << b << residual << scale;
            }
        }
    }
    result.checks.push_back(check(9, "Galerkin orthogonality against spectral references",
                                  worst_galerkin <= galerkin_tol, "max relative residual " + fmt(worst_galerkin)));
    return result;
}

}  // namespace dgmr
