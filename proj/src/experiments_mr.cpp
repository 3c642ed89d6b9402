#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dgmr/errors.hpp"
#include "dgmr/experiments.hpp"
#include "dgmr/norms.hpp"
#include "dgmr/rational.hpp"
#include "experiment_support.hpp"

namespace dgmr {

using detail::check;
using detail::fmt;

namespace {

constexpr double kJumpSlack = 1e-10;

std::mt19937_64 member_rng(std::uint64_t seed, std::size_t level, std::size_t member, int tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(member),
                      static_cast<std::uint32_t>(tag)};
    return std::mt19937_64(seq);
}

Eigen::VectorXd normal_vector(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        v[k] = normal(rng);
    }
    return v;
}

int degree_from(const Config& cfg, const char* experiment) {
    const int r = static_cast<int>(cfg.get_int("r", 1));
    if (r < 1 || r > kMaxDegree) {
        throw ConfigError(std::string(experiment) + ": requires 1 <= r <= 4");
    }
    return r;
}

struct MemberStats {
    double ratio = 0.0;
    double jump_ratio = 0.0;
    double dt_ratio = 0.0;
    bool finite = true;
};

std::string drift_detail(const std::vector<double>& values, double limit) {
    std::ostringstream out;
    out << "drift " << fmt(detail::drift(values)) << " (limit " << fmt(limit) << "), coarsest " << fmt(values.front())
        << ", finest " << fmt(values.back());
    return out.str();
}

}  // namespace

ExperimentResult run_mr_sweep(const Config& cfg) {
    ExperimentResult result{"mr-sweep",
                            Table({"p", "N", "tau_max", "load_ratio_max", "initial_ratio_max", "jump_bound_max",
                                   "dt_constant_max"}),
                            {},
                            {}};
    const int r = degree_from(cfg, "mr-sweep");
    const SpatialOperator op = detail::operator_from(cfg, {});
    const std::vector<std::size_t> levels = cfg.get_levels("N", {8, 16, 32, 64, 128, 256, 512});
    const double c = cfg.get_double("c", 0.5);
    const double final_time = cfg.get_double("T", 1.0);
    const auto ensemble = static_cast<std::size_t>(cfg.get_int("ensemble", 32));
    const auto initial_ensemble = static_cast<std::size_t>(cfg.get_int("initial_ensemble", 8));
    const double limit = cfg.get_double("drift_limit", 1.25);
    const std::uint64_t seed = cfg.get_seed("seed", 5);
    const Eigen::Index dim = op.dim();

    bool jump_ok = true;
    bool finite_ok = true;
    for (double p : cfg.get_doubles("p", {2.0, 4.0})) {
        std::vector<double> load_max;
        std::vector<double> init_max;
        std::vector<double> dt_max;
        for (std::size_t li = 0; li < levels.size(); ++li) {
            const std::size_t n = levels[li];
            const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(final_time, n, c, seed + n);
            // u0 = 0 with random piecewise polynomial loads; the last member is
            // supported on a single interval.
            const auto load_stats = detail::parallel_map(ensemble + 1, [&](std::size_t m) {
                std::mt19937_64 rng = member_rng(seed, n, m, 1);
                PiecewisePoly f = PiecewisePoly::random(mesh, r, dim, rng);
                if (m == ensemble) {
                    for (std::size_t k = 0; k < n; ++k) {
                        if (k != n / 2) {
                            f.coeffs(k).setZero();
                        }
                    }
                }
                const TimeFunction ff = [&f](double t) { return f(t); };
                const PiecewisePoly u = solve_primal(op, mesh, r, piecewise_moments(f), Eigen::VectorXd::Zero(dim));
                const NormReport rep = mr_functional(op, u, broken_norm(op, f, p, 0, false, 2), p);
                MemberStats s;
                s.ratio = rep.mr_ratio;
                s.jump_ratio = jump_residual_ratio(op, u, ff, p, 2);
                s.dt_ratio = time_derivative_ratio(op, u, ff, p, 2);
                s.finite = std::isfinite(s.ratio) && std::isfinite(s.jump_ratio) && std::isfinite(s.dt_ratio);
                return s;
            });
            // f = 0 with random initial data of unit interpolation norm.
            const auto init_stats = detail::parallel_map(initial_ensemble, [&](std::size_t m) {
                std::mt19937_64 rng = member_rng(seed, n, m, 2);
                Eigen::VectorXd u0 = normal_vector(dim, rng);
                u0 /= interpolation_norm(op, u0, p);
                const PiecewisePoly u = solve_primal(op, mesh, r, zero_moments(dim), u0);
                const NormReport rep = mr_functional(op, u, 0.0, p);
                const TimeFunction zero = [dim](double) -> Eigen::VectorXd { return Eigen::VectorXd::Zero(dim); };
                MemberStats s;
                s.ratio = rep.mr_ratio;
                s.jump_ratio = jump_residual_ratio(op, u, zero, p, 2);
                s.finite = std::isfinite(s.ratio) && std::isfinite(s.jump_ratio);
                return s;
            });
            double lr = 0.0;
            double ir = 0.0;
            double lj = 0.0;
            double ld = 0.0;
            for (const auto& s : load_stats) {
                lr = std::max(lr, s.ratio);
                lj = std::max(lj, s.jump_ratio);
                ld = std::max(ld, s.dt_ratio);
                finite_ok = finite_ok && s.finite;
            }
            for (const auto& s : init_stats) {
                ir = std::max(ir, s.ratio);
                lj = std::max(lj, s.jump_ratio);
                finite_ok = finite_ok && s.finite;
            }
            jump_ok = jump_ok && lj <= 1.0 + kJumpSlack;
            load_max.push_back(lr);
            init_max.push_back(ir);
            dt_max.push_back(ld);
            result.table.row() << p << n << mesh.tau_max() << lr << ir << lj << ld;
        }
        const std::string tag = "p=" + fmt(p);
        result.checks.push_back(check(5, "load ensemble ratio drift " + tag, detail::drift(load_max) <= limit,
                                      drift_detail(load_max, limit)));
        result.checks.push_back(check(5, "time-derivative constant drift " + tag, detail::drift(dt_max) <= limit,
                                      drift_detail(dt_max, limit)));
        result.checks.push_back(check(0, "initial-data ratio drift " + tag, detail::drift(init_max) <= limit,
                                      drift_detail(init_max, limit)));
    }
    result.checks.push_back(check(5, "jump bound with constant one", jump_ok,
                                  "max ratio <= 1 + " + fmt(kJumpSlack) + " on every instance"));
    result.checks.push_back(check(5, "all ratios finite", finite_ok, ""));
    return result;
}

ExperimentResult run_initial(const Config& cfg) {
    ExperimentResult result{"initial", Table({"theta", "p", "N", "tau_max", "ratio_max", "sup_ratio_max"}), {}, {}};
    const int r = degree_from(cfg, "initial");
    const SpatialOperator op = detail::operator_from(cfg, {});
    const std::vector<std::size_t> levels = cfg.get_levels("N", {8, 16, 32, 64, 128, 256, 512});
    const double c = cfg.get_double("c", 0.5);
    const double final_time = cfg.get_double("T", 1.0);
    const auto ensemble = static_cast<std::size_t>(cfg.get_int("ensemble", 8));
    const double limit = cfg.get_double("drift_limit", 1.25);
    const std::uint64_t seed = cfg.get_seed("seed", 6);
    const Eigen::Index dim = op.dim();
    const Eigen::VectorXd lambda = op.spectral().eigenvalues;

    for (double theta : cfg.get_doubles("theta", {0.5, 1.0})) {
        for (double p : cfg.get_doubles("p", {2.0})) {
            std::vector<double> ratios;
            std::vector<double> sups;
            for (std::size_t n : levels) {
                const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(final_time, n, c, seed + n);
                const auto stats = detail::parallel_map(ensemble, [&](std::size_t m) {
                    std::mt19937_64 rng = member_rng(seed, 0, m, 3);
                    Eigen::VectorXd v = normal_vector(dim, rng);
                    v.normalize();
                    const SpectralDecomposition& sd = op.spectral();
                    const Eigen::VectorXd modal = (sd.inverse * v).cwiseProduct(lambda.array().pow(-theta).matrix());
                    const Eigen::VectorXd u0 = sd.vectors * modal;
                    const PiecewisePoly u = solve_primal(op, mesh, r, zero_moments(dim), u0);
                    const double a_norm = broken_norm(op, u, p, 0, true);
                    const double a_sup = broken_norm(op, u, std::numeric_limits<double>::infinity(), 0, true);
                    return std::pair{a_norm / interpolation_norm(op, u0, p), a_sup / op.norm(op.apply(u0))};
                });
                double ratio = 0.0;
                double sup = 0.0;
                for (const auto& [a, b] : stats) {
                    ratio = std::max(ratio, a);
                    sup = std::max(sup, b);
                }
                ratios.push_back(ratio);
                sups.push_back(sup);
                result.table.row() << theta << p << n << mesh.tau_max() << ratio << sup;
            }
            const std::string tag = "theta=" + fmt(theta) + " p=" + fmt(p);
            result.checks.push_back(check(0, "A u_tau against interpolation norm drift " + tag,
                                          detail::drift(ratios) <= limit, drift_detail(ratios, limit)));
            if (theta >= 1.0) {
                result.checks.push_back(check(0, "sup-norm of A u_tau against ||A u0|| drift " + tag,
                                              detail::drift(sups) <= limit, drift_detail(sups, limit)));
            }
        }
    }

    // Scalar reduction: traces follow R_{i,0}(z) R_{r,0}(z)^n, so for r = 1 and p = 2
    // ||A u_tau||^2 = lambda^2 tau (a0^2 + a0 a1 + a1^2)/3 sum_n rho^{2n}.
    {
        const double lam = cfg.get_double("single_mode_lambda", 5.0);
        const std::size_t n = 16;
        const TemporalMesh mesh = TemporalMesh::make_uniform(1.0, n);
        const double tau = mesh.tau(0);
        const SpatialOperator scalar = SpatialOperator::diagonal(Eigen::VectorXd::Constant(1, lam));
        const PiecewisePoly u = solve_primal(scalar, mesh, 1, zero_moments(1), Eigen::VectorXd::Ones(1));
        const RationalTable::Values v = RationalTable(1).eval(tau * lam);
        const double a0 = v.init[0].real();
        const double a1 = v.init[1].real();
        const double rho = a1;
        const double geometric = (1.0 - std::pow(rho, 2.0 * n)) / (1.0 - rho * rho);
        const double closed = std::sqrt(lam * lam * tau * (a0 * a0 + a0 * a1 + a1 * a1) / 3.0 * geometric);
        const double measured = broken_norm(scalar, u, 2.0, 0, true);
        const double err = std::abs(measured - closed) / closed;
        result.checks.push_back(check(0, "single-mode closed form", err <= 1e-10, "relative error " + fmt(err)));

        const PiecewisePoly zero = solve_primal(op, mesh, r, zero_moments(dim), Eigen::VectorXd::Zero(dim));
        result.checks.push_back(check(0, "u0 = 0 gives the zero solution", broken_norm(op, zero, 2.0) == 0.0, ""));
    }
    return result;
}

ExperimentResult run_one_step(const Config& cfg) {
    ExperimentResult result{"one-step", Table({"p", "N", "tau_max", "difference_ratio_max", "operator_ratio_max"}),
                            {},
                            {}};
    const int r = degree_from(cfg, "one-step");
    const SpatialOperator op = detail::operator_from(cfg, {});
    const std::vector<std::size_t> levels = cfg.get_levels("N", {8, 16, 32, 64, 128, 256, 512});
    const double c = cfg.get_double("c", 0.5);
    const double final_time = cfg.get_double("T", 1.0);
    const auto ensemble = static_cast<std::size_t>(cfg.get_int("ensemble", 8));
    const double limit = cfg.get_double("drift_limit", 1.25);
    const std::uint64_t seed = cfg.get_seed("seed", 7);
    const Eigen::Index dim = op.dim();
    for (double p : cfg.get_doubles("p", {2.0, 4.0})) {
        std::vector<double> diff_max;
        std::vector<double> op_max;
        for (std::size_t n : levels) {
            const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(final_time, n, c, seed + n);
            const auto stats = detail::parallel_map(ensemble, [&](std::size_t m) {
                std::mt19937_64 rng = member_rng(seed, n, m, 4);
                const PiecewisePoly f = PiecewisePoly::random(mesh, r, dim, rng);
                const PiecewisePoly u = solve_primal(op, mesh, r, piecewise_moments(f), Eigen::VectorXd::Zero(dim));
                const NormReport rep = mr_functional(op, u, broken_norm(op, f, p, 0, false, 2), p);
                const OneStepPair pair = one_step_functional(op, u, p);
                return std::pair{pair.difference / rep.lhs(), pair.operator_term / rep.lhs()};
            });
            double d = 0.0;
            double o = 0.0;
            for (const auto& [a, b] : stats) {
                d = std::max(d, a);
                o = std::max(o, b);
            }
            diff_max.push_back(d);
            op_max.push_back(o);
            result.table.row() << p << n << mesh.tau_max() << d << o;
        }
        const std::string tag = "p=" + fmt(p);
        result.checks.push_back(check(0, "difference quotient ratio drift " + tag, detail::drift(diff_max) <= limit,
                                      drift_detail(diff_max, limit)));
        result.checks.push_back(check(0, "operator term ratio drift " + tag, detail::drift(op_max) <= limit,
                                      drift_detail(op_max, limit)));
    }
    return result;
}

}  // namespace dgmr
