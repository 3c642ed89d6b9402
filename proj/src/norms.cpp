#include "dgmr/norms.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "dgmr/errors.hpp"
#include "dgmr/quadrature.hpp"

namespace dgmr {

namespace {

void check_exponent(double p) {
    if (!(p >= 1.0)) {
        throw ConfigError("norm exponent p must be >= 1");
    }
}

QuadratureRule interval_rule(int degree, std::size_t oversample) {
    return composite_gauss_legendre(static_cast<std::size_t>(degree) + 2, oversample);
}

/// Accumulates either sum tau w x^p or max x.
class LpAccumulator {
public:
    explicit LpAccumulator(double p) : p_(p), inf_(std::isinf(p)) {}

    void add(double weight, double x) {
        if (inf_) {
            acc_ = std::max(acc_, x);
        } else {
            acc_ += weight * std::pow(x, p_);
        }
    }
    void merge(const LpAccumulator& other) {
        acc_ = inf_ ? std::max(acc_, other.acc_) : acc_ + other.acc_;
    }
    double value() const { return inf_ ? acc_ : std::pow(acc_, 1.0 / p_); }

private:
    double p_;
    bool inf_;
    double acc_ = 0.0;
};

}  // namespace

double WeightFn::operator()(double t) const { return std::sqrt((t - t_tilde) * (t - t_tilde) + tau * tau); }

double interval_norm(const SpatialOperator& op, const PiecewisePoly& u, std::size_t n, double p, int derivative_order,
                     bool apply_A, std::size_t oversample) {
    check_exponent(p);
    if (u.dim() != op.dim()) {
        throw ConfigError("interval_norm: dimension mismatch");
    }
    const QuadratureRule rule = interval_rule(u.degree(), oversample);
    const double tau = u.mesh().tau(n);
    LpAccumulator acc(p);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        Eigen::VectorXd value = u.eval_local(n, rule.points[q], derivative_order);
        if (apply_A) {
            value = op.apply(value);
        }
        acc.add(tau * rule.weights[q], op.norm(value));
    }
    return acc.value();
}

double broken_norm(const SpatialOperator& op, const PiecewisePoly& u, double p, int derivative_order, bool apply_A,
                   std::size_t oversample) {
    check_exponent(p);
    if (std::isinf(p)) {
        double peak = 0.0;
        for (std::size_t n = 0; n < u.num_intervals(); ++n) {
            peak = std::max(peak, interval_norm(op, u, n, p, derivative_order, apply_A, oversample));
        }
        return peak;
    }
    double acc = 0.0;
    for (std::size_t n = 0; n < u.num_intervals(); ++n) {
        acc += std::pow(interval_norm(op, u, n, p, derivative_order, apply_A, oversample), p);
    }
    return std::pow(acc, 1.0 / p);
}

double function_norm(const SpatialOperator& op, const TimeFunction& f, const TemporalMesh& mesh, double p,
                     int degree, std::size_t oversample) {
    check_exponent(p);
    const QuadratureRule rule = interval_rule(degree, oversample);
    LpAccumulator acc(p);
    for (std::size_t n = 0; n < mesh.num_intervals(); ++n) {
        const double tau = mesh.tau(n);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            acc.add(tau * rule.weights[q], op.norm(f(mesh.t(n) + tau * rule.points[q])));
        }
    }
    return acc.value();
}

double jump_sum(const SpatialOperator& op, const PiecewisePoly& u, double p) {
    check_exponent(p);
    LpAccumulator acc(p);
    for (std::size_t n = 0; n < u.num_intervals(); ++n) {
        const double tau = u.mesh().tau(n);
        acc.add(tau, op.norm(u.jump(n)) / tau);
    }
    return acc.value();
}

double residual_norm(const SpatialOperator& op, const PiecewisePoly& u, const TimeFunction& f, std::size_t n,
                     double p, std::size_t oversample) {
    check_exponent(p);
    const QuadratureRule rule = interval_rule(u.degree(), oversample);
    const double t0 = u.mesh().t(n);
    const double tau = u.mesh().tau(n);
    LpAccumulator acc(p);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double s = rule.points[q];
        const Eigen::VectorXd r = u.eval_local(n, s, 1) + op.apply(u.eval_local(n, s)) - f(t0 + tau * s);
        acc.add(tau * rule.weights[q], op.norm(r));
    }
    return acc.value();
}

std::string NormReport::csv_header() { return "dt_norm,A_norm,jump_norm,f_norm,u0_norm,rhs_norm,mr_ratio,flagged"; }

std::string NormReport::csv_row() const {
    std::ostringstream out;
    out << std::setprecision(10) << dt_norm << ',' << A_norm << ',' << jump_norm << ',' << f_norm << ',' << u0_norm
        << ',' << rhs_norm << ',' << mr_ratio << ',' << (flagged ? 1 : 0);
    return out.str();
}

NormReport mr_functional(const SpatialOperator& op, const PiecewisePoly& u, double f_norm, double p) {
    NormReport report;
    report.dt_norm = broken_norm(op, u, p, 1);
    report.A_norm = broken_norm(op, u, p, 0, true);
    report.jump_norm = jump_sum(op, u, p);
    report.f_norm = f_norm;
    report.u0_norm = interpolation_norm(op, u.initial_trace(), p);
    report.rhs_norm = report.f_norm + report.u0_norm;
    if (report.rhs_norm > 0.0) {
        report.mr_ratio = report.lhs() / report.rhs_norm;
    } else if (report.lhs() == 0.0) {
        report.mr_ratio = 0.0;
    } else {
        report.mr_ratio = std::numeric_limits<double>::quiet_NaN();
        report.flagged = true;
    }
    return report;
}

NormReport mr_functional(const SpatialOperator& op, const PiecewisePoly& u, const TimeFunction& f, double p,
                         std::size_t oversample) {
    return mr_functional(op, u, function_norm(op, f, u.mesh(), p, u.degree(), oversample), p);
}

double time_derivative_ratio(const SpatialOperator& op, const PiecewisePoly& u, const TimeFunction& f, double p,
                             std::size_t oversample) {
    const QuadratureRule rule = interval_rule(u.degree(), oversample);
    double worst = 0.0;
    for (std::size_t n = 0; n < u.num_intervals(); ++n) {
        const double t0 = u.mesh().t(n);
        const double tau = u.mesh().tau(n);
        LpAccumulator num(p);
        LpAccumulator den(p);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double s = rule.points[q];
            const double w = tau * rule.weights[q];
            num.add(w, op.norm(u.eval_local(n, s, 1)));
            den.add(w, op.norm(op.apply(u.eval_local(n, s)) - f(t0 + tau * s)));
        }
        if (den.value() > 0.0) {
            worst = std::max(worst, num.value() / den.value());
        }
    }
    return worst;
}

double jump_residual_ratio(const SpatialOperator& op, const PiecewisePoly& u, const TimeFunction& f, double p,
                           std::size_t oversample) {
    double worst = 0.0;
    for (std::size_t n = 0; n < u.num_intervals(); ++n) {
        const double tau = u.mesh().tau(n);
        const double lhs = op.norm(u.jump(n)) / tau * (std::isinf(p) ? 1.0 : std::pow(tau, 1.0 / p));
        const double rhs = residual_norm(op, u, f, n, p, oversample);
        if (lhs == 0.0) {
            continue;
        }
        worst = std::max(worst, rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity());
    }
    return worst;
}

OneStepPair one_step_functional(const SpatialOperator& op, const PiecewisePoly& u, double p) {
    check_exponent(p);
    LpAccumulator diff(p);
    LpAccumulator oper(p);
    Eigen::VectorXd prev = u.initial_trace();
    for (std::size_t n = 0; n < u.num_intervals(); ++n) {
        const double tau = u.mesh().tau(n);
        const Eigen::VectorXd trace = u.right_trace(n);
        diff.add(tau, op.norm(trace - prev) / tau);
        oper.add(tau, op.norm(op.apply(trace)));
        prev = trace;
    }
    return {diff.value(), oper.value()};
}

namespace {

double weighted_integral(const TimeFunction& reference_A, const PiecewisePoly& g_tau, const WeightFn& sigma,
                         double alpha, double p, const SpatialOperator& op, std::size_t pieces) {
    const QuadratureRule rule = composite_gauss_legendre(8, pieces);
    LpAccumulator acc(p);
    const TemporalMesh& mesh = g_tau.mesh();
    for (std::size_t n = 0; n < mesh.num_intervals(); ++n) {
        const double t0 = mesh.t(n);
        const double tau = mesh.tau(n);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double t = t0 + tau * rule.points[q];
            const Eigen::VectorXd err = reference_A(t) - op.apply(g_tau.eval_local(n, rule.points[q]));
            acc.add(tau * rule.weights[q], std::pow(sigma(t), alpha) * op.norm(err));
        }
    }
    return acc.value();
}

}  // namespace

WeightedError weighted_A_error(const TimeFunction& reference_A, const PiecewisePoly& g_tau, const WeightFn& sigma,
                               double alpha, double p, const SpatialOperator& op, std::size_t refinement) {
    check_exponent(p);
    if (refinement < 2) {
        throw ConfigError("weighted_A_error: refinement must be >= 2");
    }
    WeightedError out;
    out.value = weighted_integral(reference_A, g_tau, sigma, alpha, p, op, refinement);
    out.coarse_value = weighted_integral(reference_A, g_tau, sigma, alpha, p, op, refinement / 2);
    out.flagged = std::abs(out.value - out.coarse_value) > 0.01 * std::abs(out.value);
    return out;
}

}  // namespace dgmr
