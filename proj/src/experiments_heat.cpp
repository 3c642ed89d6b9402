#include <cmath>
#include <sstream>

#include "dgmr/experiments.hpp"
#include "dgmr/norms.hpp"
#include "dgmr/rational.hpp"
#include "experiment_support.hpp"

namespace dgmr {

using detail::check;
using detail::fmt;

namespace {

struct HeatProblem {
    SpatialOperator op;
    Eigen::VectorXd profile;  ///< P_h sin(pi x)
    Eigen::VectorXd nodal;    ///< sin(pi x_i)

    explicit HeatProblem(int elements) : op(SpatialOperator::fem1d(elements)) {
        profile = op.project_l2([](double x) { return std::sin(M_PI * x); });
        nodal = op.grid_nodes().unaryExpr([](double x) { return std::sin(M_PI * x); });
    }

    TimeFunction load() const {
        const Eigen::VectorXd fp = (M_PI * M_PI - 1.0) * profile;
        return [fp](double t) -> Eigen::VectorXd { return std::exp(-t) * fp; };
    }

    PiecewisePoly solve(const TemporalMesh& mesh, int r) const { return solve_primal(op, mesh, r, load(), profile, 2); }

    double error(const PiecewisePoly& u, double p) const {
        const TimeFunction e = [&](double t) -> Eigen::VectorXd { return u(t) - std::exp(-t) * nodal; };
        return function_norm(op, e, u.mesh(), p, u.degree() + 3, 1);
    }
};

double extrapolate(const OrderFit& fit, double h) { return std::exp(fit.intercept) * std::pow(h, fit.slope); }

}  // namespace

ExperimentResult run_heat(const Config& cfg) {
    ExperimentResult result{"heat", Table({"study", "N", "elements", "tau", "h", "value"}), {}, {}};
    const int r = static_cast<int>(cfg.get_int("r", 1));
    const double p = cfg.get_double("p", 2.0);
    const double tol = cfg.get_double("order_tolerance", 0.15);
    const double limit = cfg.get_double("drift_limit", 1.25);
    const double final_time = cfg.get_double("T", 1.0);

    // Temporal order at a fine spatial grid.
    const int fine_elements = static_cast<int>(cfg.get_int("tau_study_elements", 1024));
    const std::vector<std::size_t> tau_levels = cfg.get_levels("tau_study_N", {4, 8, 16, 32, 64});
    const HeatProblem fine_space(fine_elements);
    std::vector<double> taus;
    std::vector<double> tau_err;
    for (std::size_t n : tau_levels) {
        const TemporalMesh mesh = TemporalMesh::make_uniform(final_time, n);
        const double e = fine_space.error(fine_space.solve(mesh, r), p);
        taus.push_back(mesh.tau_max());
        tau_err.push_back(e);
        result.table.row() << "tau" << n << fine_elements << mesh.tau_max() << 1.0 / fine_elements << e;
    }

    // Spatial order at a fine temporal mesh.
    const auto fine_n = static_cast<std::size_t>(cfg.get_int("h_study_N", 256));
    const std::vector<std::size_t> h_levels = cfg.get_levels("h_study_elements", {8, 16, 32, 64, 128});
    const TemporalMesh fine_time = TemporalMesh::make_uniform(final_time, fine_n);
    std::vector<double> hs;
    std::vector<double> h_err;
    for (std::size_t m : h_levels) {
        const HeatProblem problem(static_cast<int>(m));
        const double e = problem.error(problem.solve(fine_time, r), p);
        hs.push_back(1.0 / static_cast<double>(m));
        h_err.push_back(e);
        result.table.row() << "h" << fine_n << m << fine_time.tau_max() << 1.0 / static_cast<double>(m) << e;
    }

    const OrderFit tau_fit = fit_order(taus, tau_err);
    const OrderFit h_fit = fit_order(hs, h_err);
    result.fits.push_back(tau_fit);
    result.fits.push_back(h_fit);
    result.checks.push_back(detail::order_check(8, "temporal order", tau_fit, r + 1.0, tol));
    result.checks.push_back(detail::order_check(8, "spatial order", h_fit, 2.0, tol));

    const double spatial_floor = extrapolate(h_fit, 1.0 / fine_elements);
    const double temporal_floor = extrapolate(tau_fit, fine_time.tau_max());
    const double tau_min_err = *std::min_element(tau_err.begin(), tau_err.end());
    const double h_min_err = *std::min_element(h_err.begin(), h_err.end());
    std::ostringstream sep;
    sep << "temporal study min " << fmt(tau_min_err) << " vs spatial estimate " << fmt(spatial_floor)
        << "; spatial study min " << fmt(h_min_err) << " vs temporal estimate " << fmt(temporal_floor);
    result.checks.push_back(check(8, "error components separated",
                                  tau_min_err >= 3.0 * spatial_floor && h_min_err >= 3.0 * temporal_floor, sep.str()));

    // Fully discrete maximal regularity under joint refinement.
    const std::vector<std::size_t> joint = cfg.get_levels("joint_levels", {8, 16, 32, 64, 128, 256, 512});
    std::vector<double> ratios;
    for (std::size_t k : joint) {
        const HeatProblem problem(static_cast<int>(k));
        const TemporalMesh mesh = TemporalMesh::make_uniform(final_time, k);
        const PiecewisePoly u = problem.solve(mesh, r);
        const NormReport rep = mr_functional(problem.op, u, problem.load(), p, 2);
        ratios.push_back(rep.mr_ratio);
        result.table.row() << "mr_ratio" << k << k << mesh.tau_max() << 1.0 / static_cast<double>(k) << rep.mr_ratio;
    }
    std::ostringstream mr;
    mr << "drift " << fmt(detail::drift(ratios)) << " (limit " << fmt(limit) << ")";
    result.checks.push_back(check(8, "fully discrete ratio drift", detail::drift(ratios) <= limit, mr.str()));

    // Discrete eigenmodes decay by the stability function.
    {
        const SpatialOperator op = SpatialOperator::fem1d(16);
        const SpectralDecomposition& sd = op.spectral();
        const std::size_t n = 10;
        const TemporalMesh mesh = TemporalMesh::make_uniform(final_time, n);
        const RationalTable table(r);
        double worst = 0.0;
        for (Eigen::Index k : {Eigen::Index{0}, Eigen::Index{4}, sd.eigenvalues.size() - 1}) {
            const Eigen::VectorXd mode = sd.vectors.col(k);
            const PiecewisePoly u = solve_primal(op, mesh, r, zero_moments(op.dim()), mode);
            const double rho = table.stability(mesh.tau(0) * sd.eigenvalues[k]).real();
            for (std::size_t m = 0; m < n; ++m) {
                const Eigen::VectorXd expected = std::pow(rho, static_cast<double>(m + 1)) * mode;
                worst = std::max(worst, (u.right_trace(m) - expected).norm() / mode.norm());
            }
        }
        result.checks.push_back(check(8, "eigenmode traces follow the stability function", worst <= 1e-10,
                                      "max relative deviation " + fmt(worst)));
    }
    return result;
}

}  // namespace dgmr
