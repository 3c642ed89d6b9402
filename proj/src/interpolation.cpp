#include "dgmr/interpolation.hpp"

#include <cmath>

#include "dgmr/errors.hpp"
#include "dgmr/quadrature.hpp"

namespace dgmr {

PiecewisePoly interpolate(const TemporalMesh& mesh, int degree, const TimeFunction& v, std::size_t oversample) {
    if (oversample == 0) {
        throw ConfigError("interpolate: oversample must be >= 1");
    }
    const ReferenceElement& elem = reference_element(degree);
    const Eigen::VectorXd v0 = v(0.0);
    PiecewisePoly out(mesh, degree, v0.size());
    out.set_initial_trace(v0);

    const QuadratureRule rule = composite_gauss_legendre(static_cast<std::size_t>(degree) + 2, oversample);
    const Eigen::MatrixXd phi = elem.tabulate(rule);
    const auto nq = static_cast<Eigen::Index>(rule.size());
    Eigen::MatrixXd psi_w(degree, nq);
    if (degree > 0) {
        const Eigen::MatrixXd psi = reference_element(degree - 1).tabulate(rule);
        for (Eigen::Index q = 0; q < nq; ++q) {
            psi_w.col(q) = rule.weights[static_cast<std::size_t>(q)] * psi.col(q);
        }
    }
    // row 0 pins phi(1); rows 1..r hold int psi_k phi_j
    Eigen::MatrixXd local(degree + 1, degree + 1);
    local.row(0) = elem.phi1().transpose();
    if (degree > 0) {
        local.bottomRows(degree) = psi_w * phi.transpose();
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(local);
    if (std::abs(lu.determinant()) < 1e-14) {
        throw NumericalError("interpolate: local system is singular");
    }

    for (std::size_t n = 0; n < mesh.num_intervals(); ++n) {
        const double t0 = mesh.t(n);
        const double tau = mesh.tau(n);
        Eigen::MatrixXd rhs(degree + 1, v0.size());
        rhs.row(0) = v(mesh.t(n + 1)).transpose();
        if (degree > 0) {
            Eigen::MatrixXd samples(nq, v0.size());
            for (Eigen::Index q = 0; q < nq; ++q) {
                samples.row(q) = v(t0 + tau * rule.points[static_cast<std::size_t>(q)]).transpose();
            }
            rhs.bottomRows(degree) = psi_w * samples;
        }
        out.coeffs(n) = lu.solve(rhs).transpose();
    }
    return out;
}

}  // namespace dgmr
