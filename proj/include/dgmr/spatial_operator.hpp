#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <functional>
#include <memory>
#include <string>

namespace dgmr {

using ComplexVector = Eigen::VectorXcd;

enum class OperatorKind { Dense, Diagonal, Fem1d };

std::string to_string(OperatorKind kind);

/// Eigen-decomposition A = V diag(lambda) V^{-1} of a symmetrizable operator.
/// For fem1d, V holds M_h-orthonormal eigenvectors and V^{-1} = V^T M_h.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd vectors;
    Eigen::MatrixXd inverse;
};

/// The spatial operator A of u' + A u = f in one of three concrete forms:
///
///  - dense:    an arbitrary M x M matrix acting on R^M;
///  - diagonal: A = diag(lambda_k) with lambda_k > 0;
///  - fem1d:    A_h = M_h^{-1} S_h for P1 elements on a uniform grid of (0,1)
///              with homogeneous Dirichlet conditions (interior nodes only).
///
/// States are real vectors of length dim(). The X-norm is the l^q norm,
/// weighted by the grid spacing for fem1d, and the duality pairing is the
/// Euclidean product (M_h-weighted for fem1d) so that adjoint() is the
/// Banach-space dual operator with respect to it.
///
/// Instances are immutable; expensive factorizations are cached on first use
/// and shared between copies behind a call_once guard.
class SpatialOperator {
public:
    static SpatialOperator dense(Eigen::MatrixXd matrix, double sector_angle = kDefaultSectorAngle);
    static SpatialOperator diagonal(Eigen::VectorXd eigenvalues, double sector_angle = kDefaultSectorAngle);
    /// `elements` uniform cells of width h = 1/elements; dim() = elements - 1.
    static SpatialOperator fem1d(int elements, double sector_angle = kDefaultSectorAngle);

    static constexpr double kDefaultSectorAngle = 0.7853981633974483;  // pi/4

    OperatorKind kind() const { return kind_; }
    Eigen::Index dim() const { return dim_; }
    double sector_angle() const { return sector_angle_; }
    bool is_symmetric() const { return symmetric_; }

    /// Exponent q of the spatial l^q norm (default 2).
    double space_exponent() const { return space_exponent_; }
    SpatialOperator with_space_exponent(double q) const;

    double norm(const Eigen::VectorXd& v) const;
    double pairing(const Eigen::VectorXd& v, const Eigen::VectorXd& phi) const;

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    /// (lambda I - A)^{-1} v, checked to relative residual 1e-10.
    ComplexVector resolvent_solve(std::complex<double> lambda, const ComplexVector& v) const;
    /// e^{-tA} v.
    Eigen::VectorXd semigroup_apply(double t, const Eigen::VectorXd& v) const;
    SpatialOperator adjoint() const;

    /// Available for symmetric operators only (always for diagonal/fem1d).
    const SpectralDecomposition& spectral() const;

    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const Eigen::VectorXd& eigenvalues() const { return diag_; }
    const Eigen::SparseMatrix<double>& mass() const { return mass_; }
    const Eigen::SparseMatrix<double>& stiffness() const { return stiffness_; }
    double grid_spacing() const { return h_; }
    /// Interior grid nodes x_i = i h (fem1d only).
    Eigen::VectorXd grid_nodes() const;
    /// L^2(Omega)-orthogonal projection onto the P1 space (fem1d only).
    Eigen::VectorXd project_l2(const std::function<double(double)>& fn) const;
    Eigen::VectorXd apply_mass(const Eigen::VectorXd& v) const;

    /// Largest and smallest real parts of the spectrum.
    double spectral_upper() const;
    double spectral_lower() const;

private:
    struct Cache;

    SpatialOperator() = default;

    OperatorKind kind_ = OperatorKind::Diagonal;
    Eigen::Index dim_ = 0;
    double sector_angle_ = kDefaultSectorAngle;
    double space_exponent_ = 2.0;
    bool symmetric_ = true;
    Eigen::MatrixXd matrix_;
    Eigen::VectorXd diag_;
    Eigen::SparseMatrix<double> mass_;
    Eigen::SparseMatrix<double> stiffness_;
    double h_ = 0.0;
    std::shared_ptr<Cache> cache_;
};

enum class InterpolationNormMethod { Semigroup, KFunctional };

/// Norm of u0 in the real interpolation space (X, D(A))_{1-1/p,p}.
///
/// Semigroup: ||u0|| + (int_0^inf ||A e^{-tA} u0||^p dt)^{1/p}.
/// KFunctional: (int_0^inf (K(t,u0)/t)^p dt)^{1/p} with
/// K(t,u0) = inf_{u0 = a + b} ||a|| + t ||A b||, minimized numerically over
/// per-mode splittings (diagonal operators only).
double interpolation_norm(const SpatialOperator& op, const Eigen::VectorXd& u0, double p,
                          InterpolationNormMethod method = InterpolationNormMethod::Semigroup);

}  // namespace dgmr
