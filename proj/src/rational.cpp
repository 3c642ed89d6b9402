#include "dgmr/rational.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dgmr/errors.hpp"

namespace dgmr {

RationalTable::RationalTable(int degree) : degree_(degree) {
    const ReferenceElement& elem = reference_element(degree);
    k_ = elem.K().cast<Complex>();
    mt_ = elem.Mt().cast<Complex>();
    phi0_ = elem.phi0().cast<Complex>();
}

RationalTable::Values RationalTable::eval(Complex z) const {
    const Eigen::MatrixXcd system = k_ + z * mt_;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
        std::ostringstream msg;
        msg << "RationalTable::eval: z = " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
            << "i is too close to a pole (condition estimate " << 1.0 / rcond << ")";
        throw NumericalError(msg.str());
    }
    const Eigen::Index n = degree_ + 1;
    Eigen::MatrixXcd rhs(n, n + 1);
    rhs.col(0) = phi0_;
    rhs.rightCols(n) = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd w = lu.solve(rhs);
    const double residual = (system * w - rhs).norm();
    if (!(residual <= 1e-12 * (system.norm() * w.norm() + rhs.norm()))) {
        throw NumericalError("RationalTable::eval: linear solve residual above tolerance");
    }
    return {w.col(0), w.rightCols(n)};
}

Complex RationalTable::stability(Complex z) const { return eval(z).init[degree_]; }

Eigen::VectorXcd RationalTable::poles() const {
    const Eigen::MatrixXd k = k_.real();
    const Eigen::MatrixXd mt = mt_.real();
    const Eigen::MatrixXd companion = -mt.partialPivLu().solve(k);
    return Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues();
}

std::vector<Complex> sector_contour(double delta, double r_min, double r_max, std::size_t per_decade) {
    if (!(delta > 0.0) || !(delta < 0.5 * std::numbers::pi)) {
        throw ConfigError("sector_contour: delta must lie in (0, pi/2)");
    }
    if (!(r_max > r_min) || !(r_min > 0.0) || per_decade == 0) {
        throw ConfigError("sector_contour: need 0 < r_min < r_max and per_decade >= 1");
    }
    const auto count = static_cast<std::size_t>(std::ceil(std::log10(r_max / r_min) * static_cast<double>(per_decade))) + 1;
    std::vector<double> radii(count);
    for (std::size_t k = 0; k < count; ++k) {
        radii[k] = r_min * std::pow(r_max / r_min, static_cast<double>(k) / static_cast<double>(count - 1));
    }
    std::vector<Complex> out;
    out.reserve(2 * count);
    for (auto it = radii.rbegin(); it != radii.rend(); ++it) {
        out.push_back(std::polar(*it, delta));
    }
    for (double rho : radii) {
        out.push_back(std::polar(rho, -delta));
    }
    return out;
}

SectorBoundReport check_sector_bounds(const RationalTable& table, const std::vector<Complex>& contour, double delta) {
    const Eigen::Index n = table.degree() + 1;
    SectorBoundReport report;
    report.delta = delta;
    report.samples = contour.size();
    report.init = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
    report.load = Eigen::MatrixXd::Zero(n, n);
    for (const Complex& z : contour) {
        const double mod = std::abs(z);
        if (mod == 0.0) {
            continue;
        }
        const RationalTable::Values v = table.eval(z);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double ri = std::abs(v.init[i]);
            report.init[i] = std::min(report.init[i], (1.0 / ri - 1.0) / mod);
            for (Eigen::Index j = 0; j < n; ++j) {
                report.load(i, j) = std::max(report.load(i, j), std::abs(v.load(i, j)) * (1.0 + mod));
            }
        }
    }
    report.ok = (report.init.array() > 0.0).all() && report.init.allFinite() && report.load.allFinite();
    return report;
}

std::vector<Complex> right_half_plane_grid(std::size_t per_decade) {
    std::vector<Complex> out{Complex(0.0, 0.0)};
    const double lo = -4.0;
    const double hi = 8.0;
    const auto count = static_cast<std::size_t>((hi - lo) * static_cast<double>(per_decade)) + 1;
    const double half_pi = 0.5 * std::numbers::pi;
    for (std::size_t k = 0; k < count; ++k) {
        const double rho = std::pow(10.0, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
        for (int a = -4; a <= 4; ++a) {
            out.push_back(std::polar(rho, half_pi * a / 4.0));
        }
    }
    return out;
}

AStabilityReport check_a_stability(const RationalTable& table, const std::vector<Complex>& samples) {
    AStabilityReport report;
    for (const Complex& z : samples) {
        if (z.real() < 0.0) {
            throw ConfigError("check_a_stability: sample outside the closed right half-plane");
        }
        report.max_modulus = std::max(report.max_modulus, std::abs(table.stability(z)));
    }
    report.far_field = std::abs(table.stability(1e8));
    report.ok = report.max_modulus <= 1.0 + 1e-12 && report.far_field < 1e-6;
    return report;
}

std::vector<Eigen::MatrixXd> duhamel_product(const RationalTable& table, const SpatialOperator& op,
                                             const TemporalMesh& mesh, const std::vector<Eigen::MatrixXd>& moments,
                                             const Eigen::VectorXd& u0) {
    const std::size_t n_int = mesh.num_intervals();
    const int r = table.degree();
    if (moments.size() != n_int) {
        throw ConfigError("duhamel_product: need one moment block per interval");
    }
    const SpectralDecomposition& sd = op.spectral();
    const Eigen::Index dim = op.dim();
    const Eigen::VectorXd u0_modal = sd.inverse * u0;
    std::vector<Eigen::MatrixXd> modal_moments(n_int);
    for (std::size_t n = 0; n < n_int; ++n) {
        modal_moments[n] = sd.inverse * moments[n];
    }
    std::vector<Eigen::MatrixXd> modal_out(n_int, Eigen::MatrixXd::Zero(dim, r + 1));
    std::vector<Eigen::VectorXd> init(n_int);
    std::vector<Eigen::MatrixXd> load(n_int);
    std::vector<double> step(n_int);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double lam = sd.eigenvalues[k];
        for (std::size_t n = 0; n < n_int; ++n) {
            const RationalTable::Values v = table.eval(mesh.tau(n) * lam);
            init[n] = v.init.real();
            load[n] = v.load.real();
            step[n] = init[n][r];
        }
        for (std::size_t n = 0; n < n_int; ++n) {
            // homogeneous part: R_{i,0}(tau_n) prod_{l<n} R_{r,0}(tau_l) u0
            double product = 1.0;
            for (std::size_t l = 0; l < n; ++l) {
                product *= step[l];
            }
            Eigen::VectorXd u = init[n] * (product * u0_modal[k]);
            for (std::size_t m = 0; m < n; ++m) {
                double carry = 1.0;
                for (std::size_t l = m + 1; l < n; ++l) {
                    carry *= step[l];
                }
                const double source = load[m].row(r).dot(modal_moments[m].row(k));
                u += init[n] * (carry * source);
            }
            u += load[n] * modal_moments[n].row(k).transpose();
            modal_out[n].row(k) = u.transpose();
        }
    }
    std::vector<Eigen::MatrixXd> out(n_int);
    for (std::size_t n = 0; n < n_int; ++n) {
        out[n] = sd.vectors * modal_out[n];
    }
    return out;
}

Complex eval_polynomial(const Eigen::VectorXd& coeffs, Complex z) {
    Complex acc = 0.0;
    for (Eigen::Index d = coeffs.size() - 1; d >= 0; --d) {
        acc = acc * z + coeffs[d];
    }
    return acc;
}

namespace {

int effective_degree(const Eigen::VectorXd& c, double scale) {
    for (Eigen::Index d = c.size() - 1; d >= 0; --d) {
        if (std::abs(c[d]) > 1e-10 * scale) {
            return static_cast<int>(d);
        }
    }
    return -1;
}

}  // namespace

PolynomialStructure extract_polynomials(const RationalTable& table) {
    const int r = table.degree();
    const Eigen::Index n = r + 1;
    const auto m = static_cast<Eigen::Index>(2 * (r + 2));
    const Eigen::VectorXcd poles = table.poles();
    const double radius = 0.5 * poles.cwiseAbs().minCoeff();
    const ReferenceElement& elem = reference_element(r);

    std::vector<Complex> nodes(static_cast<std::size_t>(m));
    Eigen::VectorXcd det_values(m);
    std::vector<Eigen::MatrixXcd> adj(static_cast<std::size_t>(m));
    std::vector<Eigen::VectorXcd> adj_init(static_cast<std::size_t>(m));
    for (Eigen::Index k = 0; k < m; ++k) {
        const Complex z = std::polar(radius, std::numbers::pi * (2.0 * static_cast<double>(k) + 1.0) /
                                                 static_cast<double>(m));
        nodes[static_cast<std::size_t>(k)] = z;
        const Eigen::MatrixXcd system = elem.K().cast<Complex>() + z * elem.Mt().cast<Complex>();
        det_values[k] = system.determinant();
        const RationalTable::Values v = table.eval(z);
        adj[static_cast<std::size_t>(k)] = det_values[k] * v.load;
        adj_init[static_cast<std::size_t>(k)] = det_values[k] * v.init;
    }
    // c_d = (1/m) sum_k p(z_k) z_k^{-d}, exact for degree < m
    const auto coefficients = [&](const auto& value_at) {
        Eigen::VectorXd c(m);
        for (Eigen::Index d = 0; d < m; ++d) {
            Complex acc = 0.0;
            for (Eigen::Index k = 0; k < m; ++k) {
                acc += value_at(k) * std::pow(nodes[static_cast<std::size_t>(k)], -static_cast<double>(d));
            }
            c[d] = (acc / static_cast<double>(m)).real();
        }
        return c;
    };
    PolynomialStructure out;
    out.q_hat = coefficients([&](Eigen::Index k) { return det_values[k]; });
    out.q_hat_degree = effective_degree(out.q_hat, out.q_hat.cwiseAbs().maxCoeff());
    out.q.assign(static_cast<std::size_t>(n), std::vector<Eigen::VectorXd>(static_cast<std::size_t>(n)));
    out.q_init.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            auto& c = out.q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            c = coefficients([&](Eigen::Index k) { return adj[static_cast<std::size_t>(k)](i, j); });
        }
        out.q_init[static_cast<std::size_t>(i)] =
            coefficients([&](Eigen::Index k) { return adj_init[static_cast<std::size_t>(k)][i]; });
    }
    // degrees of the numerators are measured against the scale of qhat
    const double scale = out.q_hat.cwiseAbs().maxCoeff();
    for (const auto& row : out.q) {
        for (const auto& c : row) {
            out.max_numerator_degree = std::max(out.max_numerator_degree, effective_degree(c, scale));
        }
    }
    for (const auto& c : out.q_init) {
        out.max_numerator_degree = std::max(out.max_numerator_degree, effective_degree(c, scale));
    }
    return out;
}

}  // namespace dgmr
