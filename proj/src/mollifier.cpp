#include "dgmr/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dgmr/errors.hpp"
#include "dgmr/quadrature.hpp"

namespace dgmr {

namespace {

const QuadratureRule& bump_rule() {
    static const QuadratureRule rule = composite_gauss_legendre(8, 64);
    return rule;
}

}  // namespace

double Mollifier::window(double s) {
    if (s <= 0.0 || s >= 1.0) {
        return 0.0;
    }
    return std::exp(-1.0 / (s * (1.0 - s)));
}

double Mollifier::window_derivative(double s) {
    if (s <= 0.0 || s >= 1.0) {
        return 0.0;
    }
    const double b = s * (1.0 - s);
    return window(s) * (1.0 - 2.0 * s) / (b * b);
}

Mollifier::Mollifier(const TemporalMesh& mesh, int degree, std::size_t interval, double t_tilde)
    : mesh_(mesh), degree_(degree), interval_(interval), t_tilde_(t_tilde) {
    if (interval >= mesh.num_intervals()) {
        throw ConfigError("Mollifier: interval index out of range");
    }
    start_ = mesh.t(interval);
    tau_ = mesh.tau(interval);
    if (!(t_tilde > start_) || !(t_tilde < mesh.t(interval + 1))) {
        std::ostringstream msg;
        msg << "Mollifier: t~ = " << t_tilde << " must lie strictly inside [" << start_ << ", "
            << mesh.t(interval + 1) << "]";
        throw ConfigError(msg.str());
    }
    const ReferenceElement& elem = reference_element(degree);
    const QuadratureRule& rule = bump_rule();
    const Eigen::MatrixXd phi = elem.tabulate(rule);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto col = phi.col(static_cast<Eigen::Index>(q));
        gram.noalias() += (tau_ * rule.weights[q] * window(rule.points[q])) * col * col.transpose();
    }
    const Eigen::VectorXd target = elem.eval((t_tilde - start_) / tau_);
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("Mollifier: weighted Gram matrix is not positive definite");
    }
    coeffs_ = llt.solve(target);
}

double Mollifier::poly(double s, int derivative_order) const {
    return reference_element(degree_).eval(s, derivative_order).dot(coeffs_);
}

double Mollifier::operator()(double t) const {
    const double s = (t - start_) / tau_;
    if (s <= 0.0 || s >= 1.0) {
        return 0.0;
    }
    return window(s) * poly(s, 0);
}

double Mollifier::derivative(double t) const {
    const double s = (t - start_) / tau_;
    if (s <= 0.0 || s >= 1.0) {
        return 0.0;
    }
    return (window_derivative(s) * poly(s, 0) + window(s) * poly(s, 1)) / tau_;
}

Eigen::VectorXd Mollifier::moments() const {
    const ReferenceElement& elem = reference_element(degree_);
    const QuadratureRule& rule = bump_rule();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(degree_ + 1);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double s = rule.points[q];
        out += (tau_ * rule.weights[q] * window(s) * poly(s, 0)) * elem.eval(s);
    }
    return out;
}

double Mollifier::moment_error() const {
    const Eigen::VectorXd target = reference_element(degree_).eval((t_tilde_ - start_) / tau_);
    return (moments() - target).cwiseAbs().maxCoeff();
}

double Mollifier::norm(int derivative_order, double p) const {
    if (derivative_order < 0 || derivative_order > 1) {
        throw ConfigError("Mollifier::norm: derivative order must be 0 or 1");
    }
    if (!(p >= 1.0)) {
        throw ConfigError("Mollifier::norm: p must be >= 1");
    }
    const auto value = [&](double s) {
        const double t = start_ + tau_ * s;
        return std::abs(derivative_order == 0 ? (*this)(t) : derivative(t));
    };
    const QuadratureRule& rule = bump_rule();
    if (std::isinf(p)) {
        double peak = 0.0;
        for (double s : rule.points) {
            peak = std::max(peak, value(s));
        }
        const int samples = 4000;
        for (int k = 1; k < samples; ++k) {
            peak = std::max(peak, value(static_cast<double>(k) / samples));
        }
        return peak;
    }
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        acc += rule.weights[q] * std::pow(value(rule.points[q]), p);
    }
    return std::pow(tau_ * acc, 1.0 / p);
}

MomentSource Mollifier::load(const Eigen::VectorXd& v) const {
    const Eigen::VectorXd m = moments();
    const std::size_t target = interval_;
    const TemporalMesh mesh = mesh_;
    return [m, v, target, mesh](const TemporalMesh& query, std::size_t n, int degree) -> Eigen::MatrixXd {
        if (!(query == mesh) || degree != static_cast<int>(m.size()) - 1) {
            throw ConfigError("Mollifier::load: used on a different mesh or degree");
        }
        if (n != target) {
            return Eigen::MatrixXd::Zero(v.size(), degree + 1);
        }
        return v * m.transpose();
    };
}

}  // namespace dgmr
