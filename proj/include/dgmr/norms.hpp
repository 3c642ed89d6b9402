#pragma once

#include <string>

#include "dgmr/dg_solver.hpp"

namespace dgmr {

/// sigma(t) = sqrt((t - t~)^2 + tau^2).
struct WeightFn {
    double t_tilde = 0.0;
    double tau = 1.0;

    double operator()(double t) const;
};

/// ||d^l u||_{L^p(J_n;X)} on one interval (optionally of A u), by r+2 point
/// Gauss per piece; p = inf takes the maximum over the quadrature points.
double interval_norm(const SpatialOperator& op, const PiecewisePoly& u, std::size_t n, double p,
                     int derivative_order = 0, bool apply_A = false, std::size_t oversample = 1);

/// (sum_n ||d^l u||^p_{L^p(J_n;X)})^{1/p}, maximum over intervals for p = inf.
double broken_norm(const SpatialOperator& op, const PiecewisePoly& u, double p, int derivative_order = 0,
                   bool apply_A = false, std::size_t oversample = 1);

/// ||f||_{L^p(J;X)} for a function sampled at interior quadrature points.
double function_norm(const SpatialOperator& op, const TimeFunction& f, const TemporalMesh& mesh, double p,
                     int degree = 1, std::size_t oversample = 1);

/// (sum_n ||[u]^{n-1}/tau_n||^p tau_n)^{1/p}, using the stored initial trace.
double jump_sum(const SpatialOperator& op, const PiecewisePoly& u, double p);

/// ||u' + Au - f||_{L^p(J_n;X)} on one interval.
double residual_norm(const SpatialOperator& op, const PiecewisePoly& u, const TimeFunction& f, std::size_t n,
                     double p, std::size_t oversample = 1);

struct NormReport {
    double dt_norm = 0.0;
    double A_norm = 0.0;
    double jump_norm = 0.0;
    double f_norm = 0.0;
    double u0_norm = 0.0;
    double rhs_norm = 0.0;
    double mr_ratio = 0.0;
    /// Set when rhs_norm = 0 but the left-hand side is not.
    bool flagged = false;

    double lhs() const { return dt_norm + A_norm + jump_norm; }
    static std::string csv_header();
    std::string csv_row() const;
};

/// Discrete maximal regularity functional of a DG solution. The initial value
/// is the stored initial trace of u; its norm is the semigroup
/// characterization of the interpolation space.
NormReport mr_functional(const SpatialOperator& op, const PiecewisePoly& u, const TimeFunction& f, double p,
                         std::size_t oversample = 1);
NormReport mr_functional(const SpatialOperator& op, const PiecewisePoly& u, double f_norm, double p);

/// max_n ||u'||_{L^p(J_n)} / ||Au - f||_{L^p(J_n)} over intervals where the
/// denominator is nonzero.
double time_derivative_ratio(const SpatialOperator& op, const PiecewisePoly& u, const TimeFunction& f, double p,
                             std::size_t oversample = 1);

/// Largest value of ||[u]^{n-1}/tau_n|| tau_n^{1/p} / ||u' + Au - f||_{L^p(J_n)}.
double jump_residual_ratio(const SpatialOperator& op, const PiecewisePoly& u, const TimeFunction& f, double p,
                           std::size_t oversample = 1);

/// One-step quantities built from the right traces u^{n,-}:
/// first  = (sum ||(u^{n,-} - u^{n-1,-})/tau_n||^p tau_n)^{1/p},
/// second = (sum ||A u^{n,-}||^p tau_n)^{1/p}.
struct OneStepPair {
    double difference = 0.0;
    double operator_term = 0.0;
};
OneStepPair one_step_functional(const SpatialOperator& op, const PiecewisePoly& u, double p);

/// Result of a weighted error integral and its check at half resolution.
struct WeightedError {
    double value = 0.0;
    double coarse_value = 0.0;
    bool flagged = false;
};

/// ||sigma^alpha A(g - g_tau)||_{L^p(J;X)} where `reference_A` returns A g(t).
/// Integrated with 8 point Gauss on `refinement` pieces per interval and
/// flagged when `refinement`/2 pieces change the result by more than 1%.
WeightedError weighted_A_error(const TimeFunction& reference_A, const PiecewisePoly& g_tau, const WeightFn& sigma,
                               double alpha, double p, const SpatialOperator& op, std::size_t refinement = 8);

}  // namespace dgmr
