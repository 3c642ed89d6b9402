#include "dgmr/dg_solver.hpp"

#include <algorithm>
#include <sstream>

#include "dgmr/errors.hpp"
#include "dgmr/quadrature.hpp"

namespace dgmr {

namespace {

constexpr double kResidualTolerance = 1e-10;
constexpr std::size_t kMaxCachedFactorizations = 64;

void check_residual(double residual, double scale, double tau, const char* what) {
    if (scale > 0.0 && !(residual <= kResidualTolerance * scale)) {
        std::ostringstream msg;
        msg << "dg_step (" << what << "): block system singular or ill-conditioned at tau = " << tau
            << " (relative residual " << residual / scale << ")";
        throw NumericalError(msg.str());
    }
}

}  // namespace

MomentSource zero_moments(Eigen::Index dim) {
    return [dim](const TemporalMesh&, std::size_t, int degree) -> Eigen::MatrixXd {
        return Eigen::MatrixXd::Zero(dim, degree + 1);
    };
}

MomentSource quadrature_moments(TimeFunction f, std::size_t oversample) {
    if (oversample == 0) {
        throw ConfigError("quadrature_moments: oversample must be >= 1");
    }
    return [f = std::move(f), oversample](const TemporalMesh& mesh, std::size_t n, int degree) -> Eigen::MatrixXd {
        const ReferenceElement& elem = reference_element(degree);
        const QuadratureRule rule = composite_gauss_legendre(static_cast<std::size_t>(degree) + 2, oversample);
        const Eigen::MatrixXd basis = elem.tabulate(rule);
        const double t0 = mesh.t(n);
        const double tau = mesh.tau(n);
        Eigen::MatrixXd out;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Eigen::VectorXd value = f(t0 + tau * rule.points[q]);
            if (q == 0) {
                out = Eigen::MatrixXd::Zero(value.size(), degree + 1);
            }
            out.noalias() += (tau * rule.weights[q]) * value * basis.col(static_cast<Eigen::Index>(q)).transpose();
        }
        return out;
    };
}

MomentSource piecewise_moments(const PiecewisePoly& g) {
    return [g](const TemporalMesh& mesh, std::size_t n, int degree) -> Eigen::MatrixXd {
        if (!(mesh == g.mesh())) {
            throw ConfigError("piecewise_moments: load lives on a different mesh");
        }
        const QuadratureRule rule = gauss_legendre(static_cast<std::size_t>(std::max(degree, g.degree())) + 2);
        const Eigen::MatrixXd test = reference_element(degree).tabulate(rule);
        const Eigen::MatrixXd trial = g.element().tabulate(rule);
        const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(),
                                                                   static_cast<Eigen::Index>(rule.size()));
        // F = tau * G * (trial diag(w) test^T)
        const Eigen::MatrixXd cross = trial * w.asDiagonal() * test.transpose();
        return mesh.tau(n) * g.coeffs(n) * cross;
    };
}

DgStepper::DgStepper(SpatialOperator op, int degree) : op_(std::move(op)), elem_(reference_element(degree)) {}

Eigen::MatrixXd DgStepper::step(double tau, const Eigen::VectorXd& u_prev, const Eigen::MatrixXd& moments) {
    if (!(tau > 0.0)) {
        throw ConfigError("dg_step: tau must be positive");
    }
    if (u_prev.size() != op_.dim() || moments.rows() != op_.dim() || moments.cols() != elem_.size()) {
        throw ConfigError("dg_step: dimension mismatch");
    }
    switch (op_.kind()) {
        case OperatorKind::Diagonal:
            return step_diagonal(tau, u_prev, moments);
        case OperatorKind::Dense:
            return step_dense(tau, u_prev, moments);
        case OperatorKind::Fem1d:
            return step_fem(tau, u_prev, moments);
    }
    return {};
}

Eigen::MatrixXd DgStepper::step_diagonal(double tau, const Eigen::VectorXd& u_prev,
                                         const Eigen::MatrixXd& moments) const {
    const Eigen::VectorXd& lambda = op_.eigenvalues();
    const Eigen::Index m = op_.dim();
    Eigen::MatrixXd out(m, elem_.size());
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::MatrixXd local = elem_.K() + (tau * lambda[k]) * elem_.Mt();
        const Eigen::VectorXd rhs = moments.row(k).transpose() + u_prev[k] * elem_.phi0();
        const Eigen::VectorXd x = local.partialPivLu().solve(rhs);
        check_residual((local * x - rhs).norm(), local.norm() * x.norm() + rhs.norm(), tau, "diagonal");
        out.row(k) = x.transpose();
    }
    return out;
}

Eigen::MatrixXd DgStepper::step_dense(double tau, const Eigen::VectorXd& u_prev, const Eigen::MatrixXd& moments) {
    const Eigen::Index m = op_.dim();
    const Eigen::Index b = elem_.size();
    auto it = dense_cache_.find(tau);
    if (it == dense_cache_.end()) {
        if (dense_cache_.size() >= kMaxCachedFactorizations) {
            dense_cache_.clear();
        }
        auto block = std::make_unique<DenseBlock>();
        block->matrix.resize(m * b, m * b);
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
        for (Eigen::Index i = 0; i < b; ++i) {
            for (Eigen::Index j = 0; j < b; ++j) {
                block->matrix.block(i * m, j * m, m, m) = elem_.K()(i, j) * id + (tau * elem_.Mt()(i, j)) * op_.matrix();
            }
        }
        block->lu.compute(block->matrix);
        it = dense_cache_.emplace(tau, std::move(block)).first;
    }
    Eigen::VectorXd rhs(m * b);
    for (Eigen::Index i = 0; i < b; ++i) {
        rhs.segment(i * m, m) = moments.col(i) + elem_.phi0()[i] * u_prev;
    }
    const Eigen::VectorXd x = it->second->lu.solve(rhs);
    check_residual((it->second->matrix * x - rhs).norm(), it->second->matrix.norm() * x.norm() + rhs.norm(), tau,
                   "dense");
    return Eigen::Map<const Eigen::MatrixXd>(x.data(), m, b);
}

Eigen::MatrixXd DgStepper::step_fem(double tau, const Eigen::VectorXd& u_prev, const Eigen::MatrixXd& moments) {
    const Eigen::Index m = op_.dim();
    const Eigen::Index b = elem_.size();
    const Eigen::SparseMatrix<double>& mass = op_.mass();
    const Eigen::SparseMatrix<double>& stiff = op_.stiffness();
    auto it = sparse_cache_.find(tau);
    if (it == sparse_cache_.end()) {
        if (sparse_cache_.size() >= kMaxCachedFactorizations) {
            sparse_cache_.clear();
        }
        auto block = std::make_unique<SparseBlock>();
        std::vector<Eigen::Triplet<double>> entries;
        entries.reserve(static_cast<std::size_t>(b * b * (mass.nonZeros() + stiff.nonZeros())));
        for (Eigen::Index i = 0; i < b; ++i) {
            for (Eigen::Index j = 0; j < b; ++j) {
                const double kij = elem_.K()(i, j);
                const double mij = tau * elem_.Mt()(i, j);
                for (int outer = 0; outer < mass.outerSize(); ++outer) {
                    for (Eigen::SparseMatrix<double>::InnerIterator e(mass, outer); e; ++e) {
                        entries.emplace_back(i * m + e.row(), j * m + e.col(), kij * e.value());
                    }
                    for (Eigen::SparseMatrix<double>::InnerIterator e(stiff, outer); e; ++e) {
                        entries.emplace_back(i * m + e.row(), j * m + e.col(), mij * e.value());
                    }
                }
            }
        }
        block->matrix.resize(m * b, m * b);
        block->matrix.setFromTriplets(entries.begin(), entries.end());
        block->matrix.makeCompressed();
        block->lu.compute(block->matrix);
        if (block->lu.info() != Eigen::Success) {
            std::ostringstream msg;
            msg << "dg_step (fem1d): factorization failed at tau = " << tau;
            throw NumericalError(msg.str());
        }
        it = sparse_cache_.emplace(tau, std::move(block)).first;
    }
    const Eigen::VectorXd mu_prev = mass * u_prev;
    Eigen::VectorXd rhs(m * b);
    for (Eigen::Index i = 0; i < b; ++i) {
        rhs.segment(i * m, m) = mass * moments.col(i) + elem_.phi0()[i] * mu_prev;
    }
    const Eigen::VectorXd x = it->second->lu.solve(rhs);
    const Eigen::VectorXd lhs = it->second->matrix * x;
    check_residual((lhs - rhs).norm(), lhs.norm() + rhs.norm(), tau, "fem1d");
    return Eigen::Map<const Eigen::MatrixXd>(x.data(), m, b);
}

PiecewisePoly solve_primal(const SpatialOperator& op, const TemporalMesh& mesh, int degree, const MomentSource& f,
                           const Eigen::VectorXd& u0) {
    if (u0.size() != op.dim()) {
        throw ConfigError("solve_primal: initial value has wrong dimension");
    }
    DgStepper stepper(op, degree);
    PiecewisePoly u(mesh, degree, op.dim());
    u.set_initial_trace(u0);
    Eigen::VectorXd prev = u0;
    for (std::size_t n = 0; n < mesh.num_intervals(); ++n) {
        try {
            u.coeffs(n) = stepper.step(mesh.tau(n), prev, f(mesh, n, degree));
        } catch (const NumericalError& e) {
            std::ostringstream msg;
            msg << "solve_primal: interval " << n << ": " << e.what();
            throw NumericalError(msg.str());
        }
        prev = u.right_trace(n);
    }
    return u;
}

PiecewisePoly solve_primal(const SpatialOperator& op, const TemporalMesh& mesh, int degree, const TimeFunction& f,
                           const Eigen::VectorXd& u0, std::size_t oversample) {
    return solve_primal(op, mesh, degree, quadrature_moments(f, oversample), u0);
}

PiecewisePoly solve_dual(const SpatialOperator& op, const TemporalMesh& mesh, int degree, const MomentSource& rhs,
                         const Eigen::VectorXd& terminal) {
    const std::size_t n_int = mesh.num_intervals();
    const TemporalMesh reflected = mesh.reversed();
    // phi_i(1 - s) = phi_{r-i}(s) on the symmetric equispaced nodes
    const MomentSource reflected_rhs = [&rhs, &mesh, n_int](const TemporalMesh&, std::size_t n, int r) {
        return Eigen::MatrixXd(rhs(mesh, n_int - 1 - n, r).rowwise().reverse());
    };
    const PiecewisePoly w = solve_primal(op.adjoint(), reflected, degree, reflected_rhs, terminal);
    PiecewisePoly g(mesh, degree, op.dim());
    for (std::size_t n = 0; n < n_int; ++n) {
        g.coeffs(n) = w.coeffs(n_int - 1 - n).rowwise().reverse();
    }
    g.set_terminal_trace(terminal);
    return g;
}

}  // namespace dgmr
