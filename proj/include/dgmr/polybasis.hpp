#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dgmr/quadrature.hpp"

namespace dgmr {

inline constexpr int kMaxDegree = 4;

/// Degree-r Lagrange basis on [0,1] at the equispaced nodes j/r (node 0 for
/// r = 0) together with the constant matrices of one DG step:
///
///   K_ij  = int_0^1 phi_j' phi_i ds + phi_j(0) phi_i(0)   (upwind jump included)
///   Mt_ij = int_0^1 phi_j phi_i ds
///
/// so that one step reads  sum_j (K_ij I + tau Mt_ij A) U_j = F_i + phi_i(0) u_prev.
class ReferenceElement {
public:
    explicit ReferenceElement(int degree);

    int degree() const { return degree_; }
    int size() const { return degree_ + 1; }

    const std::vector<double>& nodes() const { return nodes_; }
    /// r + 2 point Gauss-Legendre rule, exact up to degree 2r + 3.
    const QuadratureRule& quadrature() const { return quad_; }

    const Eigen::MatrixXd& K() const { return K_; }
    const Eigen::MatrixXd& Mt() const { return Mt_; }
    const Eigen::VectorXd& phi0() const { return phi0_; }
    const Eigen::VectorXd& phi1() const { return phi1_; }

    /// Values (order 0) or first derivatives (order 1) of all basis functions
    /// at s in [0,1]. The 1/tau chain-rule factor is left to the caller.
    Eigen::VectorXd eval(double s, int derivative_order = 0) const;

    /// eval() over every point of `rule`: column q holds the basis at point q.
    Eigen::MatrixXd tabulate(const QuadratureRule& rule, int derivative_order = 0) const;

private:
    int degree_;
    std::vector<double> nodes_;
    std::vector<double> bary_weights_;
    QuadratureRule quad_;
    Eigen::MatrixXd K_;
    Eigen::MatrixXd Mt_;
    Eigen::VectorXd phi0_;
    Eigen::VectorXd phi1_;
};

/// Shared, lazily built element for degree r (0 <= r <= kMaxDegree).
const ReferenceElement& reference_element(int degree);

/// Polynomial in monomial form, coefficients in increasing degree.
struct MonomialPoly {
    std::vector<double> coeffs;

    double operator()(double s) const;
};

/// Polynomials psi_0..psi_{r-1} (degree <= r-1) orthonormal for the weight s
/// on [0,1]:  int_0^1 s psi_i psi_j ds = delta_ij.  Requires r >= 1.
std::vector<MonomialPoly> orthonormal_weighted_basis(int degree);

}  // namespace dgmr
