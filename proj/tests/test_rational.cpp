#include <cmath>
#include <random>

#include "doctest.h"
#include "dgmr/rational.hpp"

using namespace dgmr;

TEST_SUITE("rational") {
    TEST_CASE("closed forms for degrees zero and one") {
        const RationalTable r0(0);
        const RationalTable r1(1);
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (int k = 0; k < 20; ++k) {
            const Complex z(std::abs(u(rng)), u(rng));
            CHECK(std::abs(r0.stability(z) - 1.0 / (1.0 + z)) < 1e-13);
            const Complex expected = (1.0 - z / 3.0) / (1.0 + 2.0 * z / 3.0 + z * z / 6.0);
            CHECK(std::abs(r1.stability(z) - expected) < 1e-13);
        }
    }

    TEST_CASE("constants are preserved at zero") {
        for (int r = 0; r <= kMaxDegree; ++r) {
            const RationalTable table(r);
            const RationalTable::Values values = table.eval(0.0);
            for (Eigen::Index i = 0; i <= r; ++i) {
                CHECK(std::abs(values.init[i] - 1.0) < 1e-12);
            }
        }
    }

    TEST_CASE("stability function approximates the exponential to order 2r+1") {
        for (int r = 0; r <= 2; ++r) {
            const RationalTable table(r);
            const double z = r == 2 ? 0.4 : 0.1;
            const double e1 = std::abs(table.stability(z) - std::exp(-z));
            const double e2 = std::abs(table.stability(z / 2.0) - std::exp(-z / 2.0));
            CHECK(std::log2(e1 / e2) == doctest::Approx(2.0 * r + 2.0).epsilon(0.05));
        }
    }

    TEST_CASE("poles lie in the open left half-plane") {
        for (int r = 0; r <= kMaxDegree; ++r) {
            const Eigen::VectorXcd poles = RationalTable(r).poles();
            CHECK(poles.size() == r + 1);
            for (Eigen::Index k = 0; k < poles.size(); ++k) {
                CHECK(poles[k].real() < 0.0);
            }
        }
    }

    TEST_CASE("polynomial structure") {
        for (int r = 0; r <= kMaxDegree; ++r) {
            const RationalTable table(r);
            const PolynomialStructure s = extract_polynomials(table);
            CHECK(s.q_hat_degree == r + 1);
            CHECK(s.max_numerator_degree <= r);
            std::mt19937_64 rng(static_cast<unsigned>(r));
            std::uniform_real_distribution<double> u(-2.0, 2.0);
            for (int k = 0; k < 10; ++k) {
                const Complex z(std::abs(u(rng)), u(rng));
                const RationalTable::Values values = table.eval(z);
                const Complex q_hat = eval_polynomial(s.q_hat, z);
                for (int i = 0; i <= r; ++i) {
                    CHECK(std::abs(eval_polynomial(s.q_init[i], z) / q_hat - values.init[i]) < 1e-9);
                    for (int j = 0; j <= r; ++j) {
                        CHECK(std::abs(eval_polynomial(s.q[i][j], z) / q_hat - values.load(i, j)) < 1e-9);
                    }
                }
            }
        }
        const PolynomialStructure s1 = extract_polynomials(RationalTable(1));
        CHECK(s1.q_hat[1] / s1.q_hat[0] == doctest::Approx(2.0 / 3.0));
        CHECK(s1.q_hat[2] / s1.q_hat[0] == doctest::Approx(1.0 / 6.0));
    }

    TEST_CASE("A-stability and sector bounds") {
        const std::vector<Complex> grid = right_half_plane_grid();
        const std::vector<Complex> contour = sector_contour(M_PI / 4.0);
        CHECK(contour.size() > 200);
        for (std::size_t k = 1; k < contour.size(); ++k) {
            CHECK(contour[k].imag() <= contour[k - 1].imag());
        }
        for (int r = 0; r <= kMaxDegree; ++r) {
            const RationalTable table(r);
            const AStabilityReport a = check_a_stability(table, grid);
            CHECK(a.ok);
            CHECK(a.max_modulus <= 1.0 + 1e-12);
            CHECK(a.far_field < 1e-7);
            const SectorBoundReport s = check_sector_bounds(table, contour, M_PI / 4.0);
            if (r > 0) {
                CHECK(s.init.tail(r).minCoeff() > 0.0);
            }
            CHECK(s.init[r] > 0.0);
            CHECK(std::isfinite(s.load.maxCoeff()));
        }
    }

    TEST_CASE("the left-node bound fails near the origin for wide sectors") {
        // R_{0,0}(z) = (1/2 + z/3) / (1/2 + z/3 + z^2/12) exceeds one in modulus
        // for small z with |arg z| = pi/3, so no C > 0 gives 1/(1 + C|z|).
        const Complex z = std::polar(0.01, M_PI / 3.0);
        const Complex closed = (0.5 + z / 3.0) / (0.5 + z / 3.0 + z * z / 12.0);
        CHECK(std::abs(closed) > 1.0);
        const RationalTable table(1);
        CHECK(std::abs(table.eval(z).init[0] - closed) < 1e-14);
        const SectorBoundReport s = check_sector_bounds(table, sector_contour(M_PI / 3.0), M_PI / 3.0);
        CHECK(s.init[0] < 0.0);
        CHECK(!s.ok);
        CHECK(s.init[1] > 0.0);
    }

    TEST_CASE("fitted constants are stable under sample doubling") {
        const double delta = M_PI / 3.0;
        for (int r = 1; r <= kMaxDegree; ++r) {
            const RationalTable table(r);
            const SectorBoundReport a = check_sector_bounds(table, sector_contour(delta, 1e-3, 1e6, 20), delta);
            const SectorBoundReport b = check_sector_bounds(table, sector_contour(delta, 1e-3, 1e6, 40), delta);
            CHECK(b.init[r] == doctest::Approx(a.init[r]).epsilon(0.05));
            CHECK(b.load.maxCoeff() == doctest::Approx(a.load.maxCoeff()).epsilon(0.05));
        }
    }

    TEST_CASE("the product formula reproduces the stepping") {
        const SpatialOperator op = SpatialOperator::diagonal(Eigen::Vector3d(0.5, 8.0, 300.0));
        const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(1.0, 10, 0.5, 3);
        std::mt19937_64 rng(4);
        for (int r : {0, 2}) {
            const PiecewisePoly f = PiecewisePoly::random(mesh, r, 3, rng);
            const MomentSource source = piecewise_moments(f);
            std::vector<Eigen::MatrixXd> moments;
            for (std::size_t n = 0; n < mesh.num_intervals(); ++n) {
                moments.push_back(source(mesh, n, r));
            }
            const Eigen::Vector3d u0(1.0, -1.0, 2.0);
            const std::vector<Eigen::MatrixXd> product = duhamel_product(RationalTable(r), op, mesh, moments, u0);
            const PiecewisePoly u = solve_primal(op, mesh, r, source, u0);
            for (std::size_t n = 0; n < mesh.num_intervals(); ++n) {
                CHECK((product[n] - u.coeffs(n)).norm() < 1e-11 * (1.0 + u.coeffs(n).norm()));
            }
        }
    }
}
