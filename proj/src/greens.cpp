#include "dgmr/greens.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "dgmr/errors.hpp"

namespace dgmr {

namespace {

constexpr unsigned kMaxDepth = 12;
constexpr double kRelTol = 1e-10;

template <typename F>
double integrate(F&& f, double a, double b) {
    if (!(b > a)) {
        return 0.0;
    }
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, kMaxDepth, kRelTol);
}

PiecewisePoly discrete_green(const SpatialOperator& op, const TemporalMesh& mesh, int degree, const Mollifier& delta,
                             const Eigen::VectorXd& v, GreenDirection direction) {
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(op.dim());
    if (direction == GreenDirection::Forward) {
        return solve_primal(op, mesh, degree, delta.load(v), zero);
    }
    return solve_dual(op, mesh, degree, delta.load(v), zero);
}

}  // namespace

GreensPair::GreensPair(const SpatialOperator& op, const TemporalMesh& mesh, int degree, std::size_t interval,
                       double t_tilde, const Eigen::VectorXd& v, GreenDirection direction)
    : op_(op),
      delta_(mesh, degree, interval, t_tilde),
      discrete_(discrete_green(op, mesh, degree, delta_, v, direction)),
      direction_(direction) {
    if (!op.is_symmetric()) {
        throw ConfigError("GreensPair: the spectral reference needs a symmetric operator");
    }
    const SpectralDecomposition& sd = op.spectral();
    lambda_ = sd.eigenvalues;
    vectors_ = sd.vectors;
    v_modal_ = sd.inverse * v;
    const double a = delta_.start();
    const double b = a + delta_.tau();
    full_.resize(lambda_.size());
    for (Eigen::Index k = 0; k < lambda_.size(); ++k) {
        const double lam = lambda_[k];
        if (direction_ == GreenDirection::Forward) {
            full_[k] = integrate([&](double s) { return std::exp(-lam * (b - s)) * delta_(s); }, a, b);
        } else {
            full_[k] = integrate([&](double s) { return std::exp(-lam * (s - a)) * delta_(s); }, a, b);
        }
    }
}

Eigen::VectorXd GreensPair::modal(double t) const {
    const double a = delta_.start();
    const double b = a + delta_.tau();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(lambda_.size());
    for (Eigen::Index k = 0; k < lambda_.size(); ++k) {
        const double lam = lambda_[k];
        double value = 0.0;
        if (direction_ == GreenDirection::Forward) {
            if (t >= b) {
                value = std::exp(-lam * (t - b)) * full_[k];
            } else if (t > a) {
                value = integrate([&](double s) { return std::exp(-lam * (t - s)) * delta_(s); }, a, t);
            }
        } else {
            if (t <= a) {
                value = std::exp(-lam * (a - t)) * full_[k];
            } else if (t < b) {
                value = integrate([&](double s) { return std::exp(-lam * (s - t)) * delta_(s); }, t, b);
            }
        }
        out[k] = value * v_modal_[k];
    }
    return out;
}

Eigen::VectorXd GreensPair::reference(double t) const { return vectors_ * modal(t); }

Eigen::VectorXd GreensPair::reference_A(double t) const { return vectors_ * lambda_.cwiseProduct(modal(t)); }

TimeFunction GreensPair::reference_fn() const {
    return [this](double t) { return reference(t); };
}

TimeFunction GreensPair::reference_A_fn() const {
    return [this](double t) { return reference_A(t); };
}

Eigen::VectorXd duhamel_reference(const SpatialOperator& op, const TimeFunction& f, const Eigen::VectorXd& u0,
                                  double t) {
    const SpectralDecomposition& sd = op.spectral();
    const Eigen::VectorXd u0_modal = sd.inverse * u0;
    Eigen::VectorXd modal(u0.size());
    for (Eigen::Index k = 0; k < modal.size(); ++k) {
        const double lam = sd.eigenvalues[k];
        const Eigen::RowVectorXd row = sd.inverse.row(k);
        const double forced = integrate([&](double s) { return std::exp(-lam * (t - s)) * row.dot(f(s)); }, 0.0, t);
        modal[k] = std::exp(-lam * t) * u0_modal[k] + forced;
    }
    return sd.vectors * modal;
}

}  // namespace dgmr
