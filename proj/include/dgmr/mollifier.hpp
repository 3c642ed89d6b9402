#pragma once

#include <Eigen/Dense>

#include "dgmr/dg_solver.hpp"
#include "dgmr/temporal_mesh.hpp"

namespace dgmr {

/// Regularized delta on one interval J = [t_n, t_{n+1}]:
///
///   delta(t) = w(s) P(s),  s = (t - t_n)/tau_n,  w(s) = exp(-1/(s(1-s))),
///
/// with P of degree r chosen so that int_J delta q dt = q(t~) for every
/// q in P^r(J). P is stored through its nodal coefficients in the interval's
/// Lagrange basis.
class Mollifier {
public:
    Mollifier(const TemporalMesh& mesh, int degree, std::size_t interval, double t_tilde);

    std::size_t interval() const { return interval_; }
    double t_tilde() const { return t_tilde_; }
    double start() const { return start_; }
    double tau() const { return tau_; }
    int degree() const { return degree_; }
    const Eigen::VectorXd& coeffs() const { return coeffs_; }

    double operator()(double t) const;
    double derivative(double t) const;

    /// int_J delta phi_i dt for the interval's Lagrange basis.
    Eigen::VectorXd moments() const;
    /// max_i |int delta phi_i - phi_i(t~)|.
    double moment_error() const;

    /// ||d^l/dt^l delta||_{L^p}, l in {0, 1}, p >= 1 or p = inf.
    double norm(int derivative_order, double p) const;

    /// Load moments of delta(t) v on the owning mesh.
    MomentSource load(const Eigen::VectorXd& v) const;

    static double window(double s);
    static double window_derivative(double s);

private:
    double poly(double s, int derivative_order) const;

    TemporalMesh mesh_;
    int degree_;
    std::size_t interval_;
    double t_tilde_;
    double start_;
    double tau_;
    Eigen::VectorXd coeffs_;
};

}  // namespace dgmr
