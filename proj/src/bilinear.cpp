#include "dgmr/bilinear.hpp"

#include <algorithm>

#include "dgmr/errors.hpp"
#include "dgmr/quadrature.hpp"

namespace dgmr {

namespace {

void check_same_space(const PiecewisePoly& v, const PiecewisePoly& phi) {
    if (!(v.mesh() == phi.mesh()) || v.dim() != phi.dim()) {
        throw ConfigError("bilinear form: arguments live on different meshes or spaces");
    }
}

constexpr std::size_t kFunctionPoints = 10;

QuadratureRule rule_for(int a, int b, std::size_t oversample = 1) {
    return composite_gauss_legendre(static_cast<std::size_t>(std::max(a, b)) + 2, oversample);
}

QuadratureRule function_rule(int degree, std::size_t oversample) {
    return composite_gauss_legendre(std::max(kFunctionPoints, static_cast<std::size_t>(degree) + 2), oversample);
}

}  // namespace

double bilinear_form(const SpatialOperator& op, const PiecewisePoly& v, const PiecewisePoly& phi) {
    check_same_space(v, phi);
    const QuadratureRule rule = rule_for(v.degree(), phi.degree());
    const TemporalMesh& mesh = v.mesh();
    double acc = 0.0;
    for (std::size_t n = 0; n < mesh.num_intervals(); ++n) {
        const double tau = mesh.tau(n);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double s = rule.points[q];
            const Eigen::VectorXd vq = v.eval_local(n, s);
            const Eigen::VectorXd residual = v.eval_local(n, s, 1) + op.apply(vq);
            acc += tau * rule.weights[q] * op.pairing(residual, phi.eval_local(n, s));
        }
        const Eigen::VectorXd jump = n == 0 ? v.left_trace(0) : Eigen::VectorXd(v.left_trace(n) - v.right_trace(n - 1));
        acc += op.pairing(jump, phi.left_trace(n));
    }
    return acc;
}

double dual_bilinear_form(const SpatialOperator& op, const PiecewisePoly& v, const PiecewisePoly& phi) {
    check_same_space(v, phi);
    const SpatialOperator adj = op.adjoint();
    const QuadratureRule rule = rule_for(v.degree(), phi.degree());
    const TemporalMesh& mesh = v.mesh();
    const std::size_t n_int = mesh.num_intervals();
    double acc = 0.0;
    for (std::size_t n = 0; n < n_int; ++n) {
        const double tau = mesh.tau(n);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double s = rule.points[q];
            const Eigen::VectorXd test = -phi.eval_local(n, s, 1) + adj.apply(phi.eval_local(n, s));
            acc += tau * rule.weights[q] * op.pairing(v.eval_local(n, s), test);
        }
        if (n > 0) {
            acc -= op.pairing(v.right_trace(n - 1), phi.left_trace(n) - phi.right_trace(n - 1));
        }
    }
    acc += op.pairing(v.right_trace(n_int - 1), phi.right_trace(n_int - 1));
    return acc;
}

double dual_bilinear_form(const SpatialOperator& op, const TimeFunction& v, const PiecewisePoly& phi,
                          std::size_t oversample) {
    const SpatialOperator adj = op.adjoint();
    const TemporalMesh& mesh = phi.mesh();
    const QuadratureRule rule = function_rule(phi.degree(), oversample);
    const std::size_t n_int = mesh.num_intervals();
    double acc = 0.0;
    for (std::size_t n = 0; n < n_int; ++n) {
        const double tau = mesh.tau(n);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double s = rule.points[q];
            const Eigen::VectorXd test = -phi.eval_local(n, s, 1) + adj.apply(phi.eval_local(n, s));
            acc += tau * rule.weights[q] * op.pairing(v(mesh.t(n) + tau * s), test);
        }
    }
    for (std::size_t n = 1; n < n_int; ++n) {
        acc -= op.pairing(v(mesh.t(n)), phi.left_trace(n) - phi.right_trace(n - 1));
    }
    acc += op.pairing(v(mesh.final_time()), phi.right_trace(n_int - 1));
    return acc;
}

double integral_pairing(const SpatialOperator& op, const PiecewisePoly& v, const TimeFunction& g,
                        std::size_t oversample) {
    const TemporalMesh& mesh = v.mesh();
    const QuadratureRule rule = function_rule(v.degree(), oversample);
    double acc = 0.0;
    for (std::size_t n = 0; n < mesh.num_intervals(); ++n) {
        const double tau = mesh.tau(n);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double s = rule.points[q];
            acc += tau * rule.weights[q] * op.pairing(v.eval_local(n, s), g(mesh.t(n) + tau * s));
        }
    }
    return acc;
}

}  // namespace dgmr
