#include <cmath>

#include "doctest.h"
#include "dgmr/errors.hpp"
#include "dgmr/polybasis.hpp"

using namespace dgmr;

namespace {

// Plain Lagrange product formula at the nodes j/r, as an independent oracle.
double lagrange(int r, int i, double s) {
    if (r == 0) {
        return 1.0;
    }
    double v = 1.0;
    for (int k = 0; k <= r; ++k) {
        if (k != i) {
            v *= (s - static_cast<double>(k) / r) / (static_cast<double>(i - k) / r);
        }
    }
    return v;
}

double lagrange_deriv(int r, int i, double s) {
    const double h = 1e-5;
    return (lagrange(r, i, s + h) - lagrange(r, i, s - h)) / (2.0 * h);
}

}  // namespace

TEST_SUITE("polybasis") {
    TEST_CASE("degree zero") {
        const ReferenceElement e(0);
        CHECK(e.K()(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(e.Mt()(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(e.phi0()[0] == 1.0);
    }

    TEST_CASE("degree one matches hand assembly") {
        const ReferenceElement e(1);
        const Eigen::Matrix2d k{{0.5, 0.5}, {-0.5, 0.5}};
        const Eigen::Matrix2d mt{{1.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 1.0 / 3.0}};
        CHECK((e.K() - k).norm() < 1e-14);
        CHECK((e.Mt() - mt).norm() < 1e-14);
        CHECK(e.phi0()[0] == 1.0);
        CHECK(e.phi0()[1] == 0.0);
        const Eigen::VectorXd d = e.eval(0.37, 1);
        CHECK(d[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(d[1] == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("nodal property and partition of unity") {
        for (int r = 0; r <= kMaxDegree; ++r) {
            const ReferenceElement e(r);
            for (int j = 0; j <= r; ++j) {
                const Eigen::VectorXd v = e.eval(e.nodes()[static_cast<std::size_t>(j)]);
                for (int i = 0; i <= r; ++i) {
                    CHECK(std::abs(v[i] - (i == j ? 1.0 : 0.0)) <= 1e-12);
                }
            }
            CHECK(e.phi0().sum() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(e.phi1().sum() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(std::abs(e.eval(0.123).sum() - 1.0) < 1e-13);
            CHECK(std::abs(e.eval(0.77, 1).sum()) < 1e-11);
        }
        const Eigen::VectorXd mid = ReferenceElement(2).eval(0.5);
        CHECK(mid[0] == 0.0);
        CHECK(mid[1] == 1.0);
        CHECK(mid[2] == 0.0);
    }

    TEST_CASE("evaluation agrees with the product formula") {
        for (int r = 1; r <= kMaxDegree; ++r) {
            const ReferenceElement e(r);
            for (double s : {0.0, 0.01, 0.3, 0.61, 0.999, 1.0}) {
                const Eigen::VectorXd v = e.eval(s);
                const Eigen::VectorXd d = e.eval(s, 1);
                for (int i = 0; i <= r; ++i) {
                    CHECK(v[i] == doctest::Approx(lagrange(r, i, s)).epsilon(1e-12));
                    CHECK(std::abs(d[i] - lagrange_deriv(r, i, s)) < 1e-6 * (1.0 + std::abs(d[i])));
                }
            }
        }
    }

    TEST_CASE("mass matrix symmetric positive definite with correct row sums") {
        for (int r = 0; r <= kMaxDegree; ++r) {
            const ReferenceElement e(r);
            CHECK((e.Mt() - e.Mt().transpose()).norm() < 1e-15);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e.Mt());
            CHECK(es.eigenvalues().minCoeff() > 0.0);
            // row sums equal int phi_i, here by composite Simpson
            for (int i = 0; i <= r; ++i) {
                const int n = 2000;
                double acc = 0.0;
                for (int k = 0; k <= n; ++k) {
                    const double s = static_cast<double>(k) / n;
                    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
                    acc += w * lagrange(r, i, s);
                }
                acc /= 3.0 * n;
                CHECK(e.Mt().row(i).sum() == doctest::Approx(acc).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("K plus its transpose collects both end traces") {
        for (int r = 0; r <= kMaxDegree; ++r) {
            const ReferenceElement e(r);
            const Eigen::MatrixXd expected = e.phi1() * e.phi1().transpose() + e.phi0() * e.phi0().transpose();
            CHECK((e.K() + e.K().transpose() - expected).norm() < 1e-12);
        }
    }

    TEST_CASE("element quadrature exactness") {
        for (int r = 0; r <= kMaxDegree; ++r) {
            const QuadratureRule& rule = reference_element(r).quadrature();
            for (int k = 0; k <= 2 * r + 1; ++k) {
                double acc = 0.0;
                for (std::size_t q = 0; q < rule.size(); ++q) {
                    acc += rule.weights[q] * std::pow(rule.points[q], k);
                }
                CHECK(std::abs(acc - 1.0 / (k + 1)) < 1e-14);
            }
        }
    }

    TEST_CASE("bad degrees and derivative orders are rejected") {
        CHECK_THROWS_AS(ReferenceElement(-1), ConfigError);
        CHECK_THROWS_AS(ReferenceElement(5), ConfigError);
        CHECK_THROWS_AS(ReferenceElement(2).eval(0.5, 2), ConfigError);
        CHECK_THROWS_AS(orthonormal_weighted_basis(0), ConfigError);
    }

    TEST_CASE("weighted orthonormal basis") {
        const auto one = orthonormal_weighted_basis(1);
        REQUIRE(one.size() == 1);
        CHECK(one[0](0.3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        for (int r = 1; r <= kMaxDegree; ++r) {
            const auto basis = orthonormal_weighted_basis(r);
            REQUIRE(basis.size() == static_cast<std::size_t>(r));
            CHECK(basis[0](0.9) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
            const QuadratureRule rule = gauss_legendre(8);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j) {
                    double acc = 0.0;
                    for (std::size_t q = 0; q < rule.size(); ++q) {
                        const double s = rule.points[q];
                        acc += rule.weights[q] * s * basis[static_cast<std::size_t>(i)](s) *
                               basis[static_cast<std::size_t>(j)](s);
                    }
                    CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
                }
            }
        }
    }
}
