#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <functional>
#include <map>
#include <memory>

#include "dgmr/piecewise_poly.hpp"
#include "dgmr/polybasis.hpp"
#include "dgmr/spatial_operator.hpp"
#include "dgmr/temporal_mesh.hpp"

namespace dgmr {

using TimeFunction = std::function<Eigen::VectorXd(double)>;

/// Load moments of one interval: column i holds int_{J_n} f phi^n_i dt.
using MomentSource = std::function<Eigen::MatrixXd(const TemporalMesh& mesh, std::size_t n, int degree)>;

MomentSource zero_moments(Eigen::Index dim);

/// Moments by Gauss-Legendre quadrature with r+2 points on each of
/// `oversample` equal pieces of the interval.
MomentSource quadrature_moments(TimeFunction f, std::size_t oversample = 1);

/// Exact moments of a piecewise polynomial of degree <= r living on the same
/// mesh as the solve.
MomentSource piecewise_moments(const PiecewisePoly& g);

/// One DG step on an interval of length tau:
///   sum_j (K_ij I + tau Mt_ij A) U_j = F_i + phi_i(0) u_prev
/// (multiplied through by M_h for fem1d operators).
class DgStepper {
public:
    DgStepper(SpatialOperator op, int degree);

    const SpatialOperator& op() const { return op_; }
    const ReferenceElement& element() const { return elem_; }

    /// Returns the dim x (r+1) coefficient block; residual checked to 1e-10.
    Eigen::MatrixXd step(double tau, const Eigen::VectorXd& u_prev, const Eigen::MatrixXd& moments);

private:
    Eigen::MatrixXd step_diagonal(double tau, const Eigen::VectorXd& u_prev, const Eigen::MatrixXd& moments) const;
    Eigen::MatrixXd step_dense(double tau, const Eigen::VectorXd& u_prev, const Eigen::MatrixXd& moments);
    Eigen::MatrixXd step_fem(double tau, const Eigen::VectorXd& u_prev, const Eigen::MatrixXd& moments);

    struct DenseBlock {
        Eigen::MatrixXd matrix;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    };
    struct SparseBlock {
        Eigen::SparseMatrix<double> matrix;
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    };

    SpatialOperator op_;
    const ReferenceElement& elem_;
    std::map<double, std::unique_ptr<DenseBlock>> dense_cache_;
    std::map<double, std::unique_ptr<SparseBlock>> sparse_cache_;
};

/// Forward DG solve of u' + Au = f, u^{0,-} = u0.
PiecewisePoly solve_primal(const SpatialOperator& op, const TemporalMesh& mesh, int degree,
                           const MomentSource& f, const Eigen::VectorXd& u0);
PiecewisePoly solve_primal(const SpatialOperator& op, const TemporalMesh& mesh, int degree, const TimeFunction& f,
                           const Eigen::VectorXd& u0, std::size_t oversample = 1);

/// DG approximation of the backward problem -g' + A'g = rhs, g^{N,+} = terminal,
/// computed as a forward solve in reflected time s = T - t. The moments of
/// `rhs` are taken on the original mesh.
PiecewisePoly solve_dual(const SpatialOperator& op, const TemporalMesh& mesh, int degree, const MomentSource& rhs,
                         const Eigen::VectorXd& terminal);

}  // namespace dgmr
