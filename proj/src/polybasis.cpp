#include "dgmr/polybasis.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "dgmr/errors.hpp"

namespace dgmr {

ReferenceElement::ReferenceElement(int degree) : degree_(degree) {
    if (degree < 0 || degree > kMaxDegree) {
        std::ostringstream msg;
        msg << "ReferenceElement: degree " << degree << " outside supported range 0.." << kMaxDegree;
        throw ConfigError(msg.str());
    }
    const int n = degree_ + 1;
    nodes_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        nodes_[static_cast<std::size_t>(j)] = degree_ == 0 ? 0.0 : static_cast<double>(j) / degree_;
    }
    bary_weights_.assign(static_cast<std::size_t>(n), 1.0);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (k != j) {
                bary_weights_[static_cast<std::size_t>(j)] /= nodes_[static_cast<std::size_t>(j)] - nodes_[static_cast<std::size_t>(k)];
            }
        }
    }
    quad_ = gauss_legendre(static_cast<std::size_t>(degree_ + 2));

    phi0_ = eval(0.0);
    phi1_ = eval(1.0);
    const Eigen::MatrixXd values = tabulate(quad_, 0);
    const Eigen::MatrixXd derivs = tabulate(quad_, 1);
    Mt_ = Eigen::MatrixXd::Zero(n, n);
    K_ = phi0_ * phi0_.transpose();
    for (std::size_t q = 0; q < quad_.size(); ++q) {
        const double w = quad_.weights[q];
        Mt_ += w * values.col(static_cast<Eigen::Index>(q)) * values.col(static_cast<Eigen::Index>(q)).transpose();
        // K_ij = int phi_j' phi_i: row index follows the test function
        K_ += w * values.col(static_cast<Eigen::Index>(q)) * derivs.col(static_cast<Eigen::Index>(q)).transpose();
    }
}

Eigen::VectorXd ReferenceElement::eval(double s, int derivative_order) const {
    const int n = degree_ + 1;
    if (derivative_order < 0 || derivative_order > 1) {
        throw ConfigError("ReferenceElement::eval: derivative order must be 0 or 1");
    }
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    if (derivative_order == 0) {
        // barycentric form; exact unit vector on a node
        for (int j = 0; j < n; ++j) {
            if (s == nodes_[static_cast<std::size_t>(j)]) {
                out[j] = 1.0;
                return out;
            }
        }
        double denom = 0.0;
        for (int j = 0; j < n; ++j) {
            const double term = bary_weights_[static_cast<std::size_t>(j)] / (s - nodes_[static_cast<std::size_t>(j)]);
            out[j] = term;
            denom += term;
        }
        return out / denom;
    }
    // phi_j'(s) = sum_{m != j} w_j prod_{k != j, m} (s - x_k)
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m) {
            if (m == j) {
                continue;
            }
            double prod = 1.0;
            for (int k = 0; k < n; ++k) {
                if (k != j && k != m) {
                    prod *= s - nodes_[static_cast<std::size_t>(k)];
                }
            }
            acc += prod;
        }
        out[j] = bary_weights_[static_cast<std::size_t>(j)] * acc;
    }
    return out;
}

Eigen::MatrixXd ReferenceElement::tabulate(const QuadratureRule& rule, int derivative_order) const {
    Eigen::MatrixXd out(degree_ + 1, static_cast<Eigen::Index>(rule.size()));
    for (std::size_t q = 0; q < rule.size(); ++q) {
        out.col(static_cast<Eigen::Index>(q)) = eval(rule.points[q], derivative_order);
    }
    return out;
}

const ReferenceElement& reference_element(int degree) {
    if (degree < 0 || degree > kMaxDegree) {
        throw ConfigError("reference_element: degree outside supported range 0..4");
    }
    static const std::array<ReferenceElement, kMaxDegree + 1> table{
        ReferenceElement(0), ReferenceElement(1), ReferenceElement(2), ReferenceElement(3), ReferenceElement(4)};
    return table[static_cast<std::size_t>(degree)];
}

double MonomialPoly::operator()(double s) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

std::vector<MonomialPoly> orthonormal_weighted_basis(int degree) {
    if (degree < 1 || degree > kMaxDegree) {
        throw ConfigError("orthonormal_weighted_basis: degree must lie in 1..4");
    }
    const auto n = static_cast<std::size_t>(degree);
    // <s^a, s^b>_s = int_0^1 s^{a+b+1} ds = 1/(a+b+2)
    const auto inner = [](const std::vector<double>& p, const std::vector<double>& q) {
        double acc = 0.0;
        for (std::size_t a = 0; a < p.size(); ++a) {
            for (std::size_t b = 0; b < q.size(); ++b) {
                acc += p[a] * q[b] / static_cast<double>(a + b + 2);
            }
        }
        return acc;
    };
    std::vector<MonomialPoly> basis;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> v(n, 0.0);
        v[k] = 1.0;
        // modified Gram-Schmidt with one reorthogonalization pass
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& e : basis) {
                const double c = inner(v, e.coeffs);
                for (std::size_t a = 0; a < n; ++a) {
                    v[a] -= c * e.coeffs[a];
                }
            }
        }
        const double nrm = std::sqrt(inner(v, v));
        for (auto& x : v) {
            x /= nrm;
        }
        basis.push_back(MonomialPoly{std::move(v)});
    }
    return basis;
}

}  // namespace dgmr
