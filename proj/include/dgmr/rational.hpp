#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "dgmr/dg_solver.hpp"

namespace dgmr {

using Complex = std::complex<double>;

/// The rational functions of one DG step with z = tau * lambda:
///
///   R(z) = (K + z Mt)^{-1},   R_{i,0}(z) = [(K + z Mt)^{-1} Phi0]_i,
///
/// so that U_i = R_{i,0}(tau A) u_prev + sum_j R_{i,j}(tau A) F_j.
class RationalTable {
public:
    explicit RationalTable(int degree);

    int degree() const { return degree_; }

    struct Values {
        Eigen::VectorXcd init;  ///< R_{i,0}(z)
        Eigen::MatrixXcd load;  ///< R_{i,j}(z)
    };

    /// Throws NumericalError near a pole (condition estimate above 1e12).
    Values eval(Complex z) const;
    /// R_{r,0}(z), the one-step stability function.
    Complex stability(Complex z) const;

    /// Roots of det(K + z Mt).
    Eigen::VectorXcd poles() const;

private:
    int degree_;
    Eigen::MatrixXcd k_;
    Eigen::MatrixXcd mt_;
    Eigen::VectorXcd phi0_;
};

/// Samples of Gamma_delta = {arg z = +-delta}: log-spaced radii on both rays,
/// ordered so that the imaginary part decreases.
std::vector<Complex> sector_contour(double delta, double r_min = 1e-3, double r_max = 1e6,
                                   std::size_t per_decade = 20);

/// Fitted constants on Gamma_delta.
///   init(i): largest C with |R_{i,0}| <= 1/(1 + C|z|) at every sample
///            (non-positive when the bound fails somewhere);
///   load(i,j): smallest C with |R_{i,j}| <= C/(1 + |z|).
struct SectorBoundReport {
    double delta = 0.0;
    std::size_t samples = 0;
    Eigen::VectorXd init;
    Eigen::MatrixXd load;
    bool ok = false;
};
SectorBoundReport check_sector_bounds(const RationalTable& table, const std::vector<Complex>& contour, double delta);

struct AStabilityReport {
    double max_modulus = 0.0;
    double far_field = 0.0;  ///< |R_{r,0}(1e8)|
    bool ok = false;
};
/// Grid on the closed right half-plane: imaginary axis, real axis and rays,
/// radii log-spaced over 1e-4..1e8.
std::vector<Complex> right_half_plane_grid(std::size_t per_decade = 10);
AStabilityReport check_a_stability(const RationalTable& table, const std::vector<Complex>& samples);

/// Discrete Duhamel product formula for the nodal values U^n, evaluated mode by
/// mode for a symmetric operator. `moments[n]` is the dim x (r+1) load block
/// of interval n. Cost is quadratic in the number of intervals.
std::vector<Eigen::MatrixXd> duhamel_product(const RationalTable& table, const SpatialOperator& op,
                                             const TemporalMesh& mesh, const std::vector<Eigen::MatrixXd>& moments,
                                             const Eigen::VectorXd& u0);

/// Monomial coefficients (increasing degree) of qhat(z) = det(K + z Mt) and of
/// the numerators q_{i,j} = qhat R_{i,j} and q_{i,0} = qhat R_{i,0},
/// recovered by interpolation at roots of unity; degrees count coefficients
/// above 1e-10 relative to the largest one.
struct PolynomialStructure {
    Eigen::VectorXd q_hat;
    std::vector<std::vector<Eigen::VectorXd>> q;  ///< q[i][j]
    std::vector<Eigen::VectorXd> q_init;          ///< q_{i,0}
    int q_hat_degree = -1;
    int max_numerator_degree = -1;
};
PolynomialStructure extract_polynomials(const RationalTable& table);

Complex eval_polynomial(const Eigen::VectorXd& coeffs, Complex z);

}  // namespace dgmr
