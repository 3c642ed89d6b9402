#pragma once

#include <memory>

#include "dgmr/mollifier.hpp"

namespace dgmr {

enum class GreenDirection {
    /// g' + Ag = delta v, g(0) = 0.
    Forward,
    /// -g' + A'g = delta v, g(T) = 0.
    Backward,
};

/// A regularized Green's function, its DG approximation and a spectral
/// Duhamel reference. The reference integrates each mode against delta with
/// adaptive Gauss-Kronrod quadrature.
class GreensPair {
public:
    GreensPair(const SpatialOperator& op, const TemporalMesh& mesh, int degree, std::size_t interval, double t_tilde,
               const Eigen::VectorXd& v, GreenDirection direction = GreenDirection::Forward);

    const Mollifier& delta() const { return delta_; }
    const PiecewisePoly& discrete() const { return discrete_; }
    GreenDirection direction() const { return direction_; }

    Eigen::VectorXd reference(double t) const;
    Eigen::VectorXd reference_A(double t) const;
    TimeFunction reference_fn() const;
    TimeFunction reference_A_fn() const;

private:
    Eigen::VectorXd modal(double t) const;

    SpatialOperator op_;
    Mollifier delta_;
    PiecewisePoly discrete_;
    GreenDirection direction_;
    Eigen::VectorXd lambda_;
    Eigen::MatrixXd vectors_;
    Eigen::VectorXd v_modal_;
    /// Per mode: integral of the kernel against delta over the whole support,
    /// anchored at the support end the solution propagates from.
    Eigen::VectorXd full_;
};

/// Mode-wise Duhamel reference for u' + Au = f, u(0) = u0 with symmetric A:
/// e^{-tA}u0 + int_0^t e^{-(t-s)A} f(s) ds, each mode by adaptive
/// Gauss-Kronrod. Intended for small systems.
Eigen::VectorXd duhamel_reference(const SpatialOperator& op, const TimeFunction& f, const Eigen::VectorXd& u0,
                                  double t);

}  // namespace dgmr
