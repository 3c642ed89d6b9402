#include "dgmr/spatial_operator.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <vector>

#include "dgmr/errors.hpp"
#include "dgmr/quadrature.hpp"

namespace dgmr {

std::string to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::Dense:
            return "dense";
        case OperatorKind::Diagonal:
            return "diagonal";
        case OperatorKind::Fem1d:
            return "fem1d";
    }
    return "unknown";
}

struct SpatialOperator::Cache {
    std::once_flag spectral_once;
    std::optional<SpectralDecomposition> spectral;
    std::once_flag bounds_once;
    double lower = 0.0;
    double upper = 0.0;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> mass_solver;
};

namespace {

void check_sector(double angle) {
    if (!(angle > 0.0) || !(angle < 0.5 * 3.141592653589793)) {
        throw ConfigError("SpatialOperator: sector angle must lie in (0, pi/2)");
    }
}

}  // namespace

SpatialOperator SpatialOperator::dense(Eigen::MatrixXd matrix, double sector_angle) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
        throw ConfigError("SpatialOperator::dense: matrix must be square and non-empty");
    }
    check_sector(sector_angle);
    SpatialOperator op;
    op.kind_ = OperatorKind::Dense;
    op.dim_ = matrix.rows();
    op.sector_angle_ = sector_angle;
    const double scale = std::max(1.0, matrix.norm());
    op.symmetric_ = (matrix - matrix.transpose()).norm() <= 1e-14 * scale;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(matrix);
    if (!lu.isInvertible()) {
        throw ConfigError("SpatialOperator::dense: 0 is an eigenvalue of A");
    }
    op.matrix_ = std::move(matrix);
    op.cache_ = std::make_shared<Cache>();
    return op;
}

SpatialOperator SpatialOperator::diagonal(Eigen::VectorXd eigenvalues, double sector_angle) {
    if (eigenvalues.size() == 0) {
        throw ConfigError("SpatialOperator::diagonal: need at least one eigenvalue");
    }
    if ((eigenvalues.array() <= 0.0).any()) {
        throw ConfigError("SpatialOperator::diagonal: eigenvalues must be positive");
    }
    check_sector(sector_angle);
    SpatialOperator op;
    op.kind_ = OperatorKind::Diagonal;
    op.dim_ = eigenvalues.size();
    op.sector_angle_ = sector_angle;
    op.diag_ = std::move(eigenvalues);
    op.cache_ = std::make_shared<Cache>();
    return op;
}

SpatialOperator SpatialOperator::fem1d(int elements, double sector_angle) {
    if (elements < 2) {
        throw ConfigError("SpatialOperator::fem1d: need at least two elements");
    }
    check_sector(sector_angle);
    SpatialOperator op;
    op.kind_ = OperatorKind::Fem1d;
    op.dim_ = elements - 1;
    op.sector_angle_ = sector_angle;
    op.h_ = 1.0 / elements;
    const double h = op.h_;
    std::vector<Eigen::Triplet<double>> m_entries;
    std::vector<Eigen::Triplet<double>> s_entries;
    for (Eigen::Index i = 0; i < op.dim_; ++i) {
        m_entries.emplace_back(i, i, 4.0 * h / 6.0);
        s_entries.emplace_back(i, i, 2.0 / h);
        if (i + 1 < op.dim_) {
            m_entries.emplace_back(i, i + 1, h / 6.0);
            m_entries.emplace_back(i + 1, i, h / 6.0);
            s_entries.emplace_back(i, i + 1, -1.0 / h);
            s_entries.emplace_back(i + 1, i, -1.0 / h);
        }
    }
    op.mass_.resize(op.dim_, op.dim_);
    op.stiffness_.resize(op.dim_, op.dim_);
    op.mass_.setFromTriplets(m_entries.begin(), m_entries.end());
    op.stiffness_.setFromTriplets(s_entries.begin(), s_entries.end());
    op.cache_ = std::make_shared<Cache>();
    op.cache_->mass_solver.compute(op.mass_);
    if (op.cache_->mass_solver.info() != Eigen::Success) {
        throw NumericalError("SpatialOperator::fem1d: mass matrix factorization failed");
    }
    return op;
}

SpatialOperator SpatialOperator::with_space_exponent(double q) const {
    if (!(q >= 1.0)) {
        throw ConfigError("SpatialOperator: space exponent q must be >= 1");
    }
    SpatialOperator copy = *this;
    copy.space_exponent_ = q;
    return copy;
}

double SpatialOperator::norm(const Eigen::VectorXd& v) const {
    const double weight = kind_ == OperatorKind::Fem1d ? h_ : 1.0;
    const double q = space_exponent_;
    if (std::isinf(q)) {
        return v.cwiseAbs().maxCoeff();
    }
    if (q == 2.0) {
        return std::sqrt(weight) * v.norm();
    }
    return std::pow(weight * v.cwiseAbs().array().pow(q).sum(), 1.0 / q);
}

double SpatialOperator::pairing(const Eigen::VectorXd& v, const Eigen::VectorXd& phi) const {
    if (kind_ == OperatorKind::Fem1d) {
        return v.dot(mass_ * phi);
    }
    return v.dot(phi);
}

Eigen::VectorXd SpatialOperator::apply(const Eigen::VectorXd& v) const {
    if (v.size() != dim_) {
        throw ConfigError("SpatialOperator::apply: dimension mismatch");
    }
    switch (kind_) {
        case OperatorKind::Dense:
            return matrix_ * v;
        case OperatorKind::Diagonal:
            return diag_.cwiseProduct(v);
        case OperatorKind::Fem1d: {
            Eigen::VectorXd w = cache_->mass_solver.solve(stiffness_ * v);
            if (cache_->mass_solver.info() != Eigen::Success) {
                throw NumericalError("SpatialOperator::apply: mass solve failed");
            }
            return w;
        }
    }
    return {};
}

Eigen::VectorXd SpatialOperator::apply_mass(const Eigen::VectorXd& v) const {
    if (kind_ == OperatorKind::Fem1d) {
        return mass_ * v;
    }
    return v;
}

ComplexVector SpatialOperator::resolvent_solve(std::complex<double> lambda, const ComplexVector& v) const {
    if (v.size() != dim_) {
        throw ConfigError("SpatialOperator::resolvent_solve: dimension mismatch");
    }
    ComplexVector w;
    double residual = 0.0;
    double scale = 0.0;
    switch (kind_) {
        case OperatorKind::Diagonal: {
            w = v;
            for (Eigen::Index k = 0; k < dim_; ++k) {
                w[k] /= lambda - diag_[k];
            }
            ComplexVector r = v;
            for (Eigen::Index k = 0; k < dim_; ++k) {
                r[k] -= (lambda - diag_[k]) * w[k];
            }
            residual = r.norm();
            scale = v.norm();
            break;
        }
        case OperatorKind::Dense: {
            const Eigen::MatrixXcd shifted =
                lambda * Eigen::MatrixXcd::Identity(dim_, dim_) - matrix_.cast<std::complex<double>>();
            w = shifted.partialPivLu().solve(v);
            residual = (shifted * w - v).norm();
            scale = v.norm();
            break;
        }
        case OperatorKind::Fem1d: {
            const Eigen::SparseMatrix<std::complex<double>> shifted =
                lambda * mass_.cast<std::complex<double>>() - stiffness_.cast<std::complex<double>>();
            Eigen::SparseLU<Eigen::SparseMatrix<std::complex<double>>> lu;
            lu.compute(shifted);
            const ComplexVector rhs = mass_.cast<std::complex<double>>() * v;
            if (lu.info() == Eigen::Success) {
                w = lu.solve(rhs);
                residual = (shifted * w - rhs).norm();
            } else {
                residual = std::numeric_limits<double>::infinity();
            }
            scale = rhs.norm();
            break;
        }
    }
    if (!(residual <= 1e-10 * scale) && scale > 0.0) {
        std::ostringstream msg;
        msg << "resolvent_solve: near-singular shift lambda = " << lambda.real() << (lambda.imag() < 0 ? "" : "+")
            << lambda.imag() << "i (relative residual " << residual / scale << ")";
        throw NumericalError(msg.str());
    }
    return w;
}

const SpectralDecomposition& SpatialOperator::spectral() const {
    if (!symmetric_) {
        throw ConfigError("SpatialOperator::spectral: operator is not symmetric");
    }
    std::call_once(cache_->spectral_once, [this] {
        SpectralDecomposition sd;
        switch (kind_) {
            case OperatorKind::Diagonal:
                sd.eigenvalues = diag_;
                sd.vectors = Eigen::MatrixXd::Identity(dim_, dim_);
                sd.inverse = sd.vectors;
                break;
            case OperatorKind::Dense: {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix_);
                if (es.info() != Eigen::Success) {
                    throw NumericalError("spectral: symmetric eigensolver failed");
                }
                sd.eigenvalues = es.eigenvalues();
                sd.vectors = es.eigenvectors();
                sd.inverse = sd.vectors.transpose();
                break;
            }
            case OperatorKind::Fem1d: {
                const Eigen::MatrixXd s = Eigen::MatrixXd(stiffness_);
                const Eigen::MatrixXd m = Eigen::MatrixXd(mass_);
                Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(s, m);
                if (es.info() != Eigen::Success) {
                    throw NumericalError("spectral: generalized eigensolver failed");
                }
                sd.eigenvalues = es.eigenvalues();
                sd.vectors = es.eigenvectors();
                sd.inverse = sd.vectors.transpose() * m;
                break;
            }
        }
        cache_->spectral = std::move(sd);
    });
    return *cache_->spectral;
}

Eigen::VectorXd SpatialOperator::semigroup_apply(double t, const Eigen::VectorXd& v) const {
    if (t < 0.0) {
        throw ConfigError("semigroup_apply: t must be nonnegative");
    }
    if (v.size() != dim_) {
        throw ConfigError("semigroup_apply: dimension mismatch");
    }
    if (t == 0.0) {
        return v;
    }
    if (kind_ == OperatorKind::Diagonal) {
        return (-t * diag_.array()).exp().matrix().cwiseProduct(v);
    }
    if (symmetric_) {
        const auto& sd = spectral();
        const Eigen::VectorXd modal = sd.inverse * v;
        return sd.vectors * (-t * sd.eigenvalues.array()).exp().matrix().cwiseProduct(modal);
    }
    const Eigen::MatrixXd propagator = (-t * matrix_).exp();
    return propagator * v;
}

SpatialOperator SpatialOperator::adjoint() const {
    SpatialOperator copy = *this;
    if (kind_ == OperatorKind::Dense && !symmetric_) {
        copy.matrix_ = matrix_.transpose();
        copy.cache_ = std::make_shared<Cache>();
    }
    return copy;
}

Eigen::VectorXd SpatialOperator::grid_nodes() const {
    if (kind_ != OperatorKind::Fem1d) {
        throw ConfigError("grid_nodes: fem1d operators only");
    }
    Eigen::VectorXd x(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
        x[i] = static_cast<double>(i + 1) * h_;
    }
    return x;
}

Eigen::VectorXd SpatialOperator::project_l2(const std::function<double(double)>& fn) const {
    if (kind_ != OperatorKind::Fem1d) {
        throw ConfigError("project_l2: fem1d operators only");
    }
    // load vector b_i = int fn * hat_i, 4-point Gauss per cell
    const QuadratureRule rule = gauss_legendre(4);
    Eigen::VectorXd load = Eigen::VectorXd::Zero(dim_);
    const Eigen::Index cells = dim_ + 1;
    for (Eigen::Index c = 0; c < cells; ++c) {
        const double x0 = static_cast<double>(c) * h_;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double s = rule.points[q];
            const double fx = fn(x0 + s * h_) * rule.weights[q] * h_;
            // left node of the cell is interior node c-1, right node is c
            if (c >= 1) {
                load[c - 1] += fx * (1.0 - s);
            }
            if (c < dim_) {
                load[c] += fx * s;
            }
        }
    }
    return cache_->mass_solver.solve(load);
}

namespace {

void compute_bounds(const SpatialOperator& op, double& lower, double& upper) {
    if (op.is_symmetric()) {
        const auto& ev = op.spectral().eigenvalues;
        lower = ev.minCoeff();
        upper = ev.maxCoeff();
        return;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(op.matrix(), false);
    const Eigen::VectorXcd ev = es.eigenvalues();
    lower = ev.real().minCoeff();
    upper = ev.cwiseAbs().maxCoeff();
}

}  // namespace

double SpatialOperator::spectral_lower() const {
    std::call_once(cache_->bounds_once, [this] { compute_bounds(*this, cache_->lower, cache_->upper); });
    return cache_->lower;
}

double SpatialOperator::spectral_upper() const {
    std::call_once(cache_->bounds_once, [this] { compute_bounds(*this, cache_->lower, cache_->upper); });
    return cache_->upper;
}

namespace {

/// Trapezoid rule in log t over [a, b] for a positive integrand.
template <typename Fn>
double log_trapezoid(Fn&& integrand, double a, double b, std::size_t min_points, double points_per_decade) {
    const double decades = std::log10(b / a);
    const auto n = std::max<std::size_t>(min_points, static_cast<std::size_t>(std::ceil(points_per_decade * decades)));
    const double la = std::log(a);
    const double lb = std::log(b);
    const double ds = (lb - la) / static_cast<double>(n - 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = std::exp(la + ds * static_cast<double>(k));
        const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        acc += w * integrand(t) * t;
    }
    return acc * ds;
}

double semigroup_norm(const SpatialOperator& op, const Eigen::VectorXd& u0, double p) {
    const double lower = op.spectral_lower();
    const double upper = op.spectral_upper();
    if (!(lower > 0.0)) {
        throw ConfigError("interpolation_norm: spectrum must lie in the open right half-plane");
    }
    std::function<Eigen::VectorXd(double)> a_semigroup;
    if (op.is_symmetric()) {
        const auto& sd = op.spectral();
        const Eigen::VectorXd modal = sd.inverse * u0;
        a_semigroup = [&sd, modal](double t) -> Eigen::VectorXd {
            return sd.vectors *
                   (sd.eigenvalues.array() * (-t * sd.eigenvalues.array()).exp() * modal.array()).matrix();
        };
    } else {
        a_semigroup = [&op, u0](double t) { return op.apply(op.semigroup_apply(t, u0)); };
    }
    const auto integrand = [&](double t) { return std::pow(op.norm(a_semigroup(t)), p); };

    const double head_end = 1e-6 / upper;
    double tail_start = 50.0 / (p * lower);
    const double head_value = integrand(0.0);
    double peak = head_value;
    // the integrand of a symmetric operator is monotone; sample for the others
    for (int k = 0; k <= 60; ++k) {
        peak = std::max(peak, integrand(head_end * std::pow(tail_start / head_end, k / 60.0)));
    }
    if (peak == 0.0) {
        return op.norm(u0);
    }
    while (integrand(tail_start) > 1e-16 * peak) {
        tail_start *= 2.0;
    }
    const double body = log_trapezoid(integrand, head_end, tail_start, 200, 40.0);
    const double total = head_value * head_end + body;
    const double tail_estimate = integrand(tail_start) * tail_start;
    if (tail_estimate > 0.01 * total) {
        throw NumericalError("interpolation_norm: semigroup integral does not converge");
    }
    return op.norm(u0) + std::pow(total, 1.0 / p);
}

double k_functional_norm(const SpatialOperator& op, const Eigen::VectorXd& u0, double p) {
    if (op.kind() != OperatorKind::Diagonal) {
        throw ConfigError("interpolation_norm: the K-functional route supports diagonal operators only");
    }
    const Eigen::VectorXd& lambda = op.eigenvalues();
    const Eigen::Index m = op.dim();
    const double u_norm = op.norm(u0);
    const double au_norm = op.norm(lambda.cwiseProduct(u0));
    const double lo = lambda.minCoeff();
    const double hi = lambda.maxCoeff();
    // K(t) = t ||A u0|| for t <= 1/max(lambda) and K(t) = ||u0|| for
    // t >= 1/min(lambda); both pieces integrate in closed form.
    const double head = std::pow(au_norm, p) / hi;
    const double tail = std::pow(u_norm, p) * std::pow(lo, p - 1.0) / (p - 1.0);
    if (!(hi > lo)) {
        return std::pow(head + tail, 1.0 / p);
    }

    Eigen::VectorXd theta = Eigen::VectorXd::Ones(m);
    const auto objective = [&](const Eigen::VectorXd& th, double t) {
        const Eigen::VectorXd a = (Eigen::VectorXd::Ones(m) - th).cwiseProduct(u0);
        const Eigen::VectorXd b = lambda.cwiseProduct(th).cwiseProduct(u0);
        return op.norm(a) + t * op.norm(b);
    };
    const int bits = std::numeric_limits<double>::digits / 2;
    const auto k_of_t = [&](double t) {
        double current = objective(theta, t);
        for (int sweep = 0; sweep < 500; ++sweep) {
            const double before = current;
            for (Eigen::Index k = 0; k < m; ++k) {
                if (u0[k] == 0.0) {
                    continue;
                }
                Eigen::VectorXd trial = theta;
                const auto line = [&](double x) {
                    trial[k] = x;
                    return objective(trial, t);
                };
                const auto [x_best, f_best] = boost::math::tools::brent_find_minima(line, 0.0, 1.0, bits);
                if (f_best < current) {
                    theta[k] = x_best;
                    current = f_best;
                }
            }
            if (before - current <= 1e-8 * std::abs(before)) {
                break;
            }
        }
        return current;
    };
    const double a = 1.0 / hi;
    const double b = 1.0 / lo;
    const auto integrand = [&](double t) { return std::pow(k_of_t(t) / t, p); };
    const double body = log_trapezoid(integrand, a, b, 200, 60.0);
    return std::pow(head + body + tail, 1.0 / p);
}

}  // namespace

double interpolation_norm(const SpatialOperator& op, const Eigen::VectorXd& u0, double p,
                          InterpolationNormMethod method) {
    if (u0.size() != op.dim()) {
        throw ConfigError("interpolation_norm: dimension mismatch");
    }
    if (!(p > 1.0) || std::isinf(p)) {
        throw ConfigError("interpolation_norm: p must lie in (1, inf)");
    }
    if (u0.isZero(0.0)) {
        return 0.0;
    }
    return method == InterpolationNormMethod::Semigroup ? semigroup_norm(op, u0, p) : k_functional_norm(op, u0, p);
}

}  // namespace dgmr
