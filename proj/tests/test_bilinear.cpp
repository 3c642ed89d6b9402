#include <cmath>
#include <random>

#include "doctest.h"
#include "dgmr/bilinear.hpp"
#include "dgmr/greens.hpp"

using namespace dgmr;

namespace {

SpatialOperator nonsymmetric() {
    Eigen::Matrix3d a;
    a << 3.0, 1.0, 0.0,
         -0.5, 2.0, 0.7,
         0.2, 0.0, 1.5;
    return SpatialOperator::dense(a);
}

}  // namespace

TEST_SUITE("bilinear") {
    TEST_CASE("primal and dual forms agree on random piecewise polynomials") {
        std::mt19937_64 rng(7);
        const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(1.5, 7, 0.5, 11);
        for (const SpatialOperator& op :
             {nonsymmetric(), SpatialOperator::diagonal(Eigen::Vector3d(1.0, 10.0, 100.0)), SpatialOperator::fem1d(4)}) {
            for (int r = 0; r <= 3; ++r) {
                const PiecewisePoly v = PiecewisePoly::random(mesh, r, op.dim(), rng);
                const PiecewisePoly phi = PiecewisePoly::random(mesh, r, op.dim(), rng);
                PiecewisePoly v0 = v;
                v0.set_initial_trace(Eigen::VectorXd::Zero(op.dim()));
                const double b = bilinear_form(op, v0, phi);
                const double bd = dual_bilinear_form(op, v0, phi);
                CHECK(std::abs(b - bd) <= 1e-11 * (1.0 + std::abs(b)));
            }
        }
    }

    TEST_CASE("hand-computed value on one interval") {
        // v = t, phi = 1 on [0, 2], A = 3: int (1 + 3t) dt + v(0) phi(0) = 2 + 6 + 0
        const TemporalMesh mesh({0.0, 2.0});
        const SpatialOperator op = SpatialOperator::diagonal(Eigen::VectorXd::Constant(1, 3.0));
        PiecewisePoly v(mesh, 1, 1);
        v.coeffs(0) << 0.0, 2.0;
        PiecewisePoly phi(mesh, 1, 1);
        phi.coeffs(0) << 1.0, 1.0;
        CHECK(bilinear_form(op, v, phi) == doctest::Approx(8.0));
        CHECK(dual_bilinear_form(op, v, phi) == doctest::Approx(8.0));
    }

    TEST_CASE("the DG solution satisfies the primal identity") {
        std::mt19937_64 rng(3);
        const SpatialOperator op = nonsymmetric();
        const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(1.0, 9, 0.5, 5);
        const int r = 2;
        const PiecewisePoly f = PiecewisePoly::random(mesh, r, 3, rng);
        const Eigen::Vector3d u0(1.0, -1.0, 0.5);
        const PiecewisePoly u = solve_primal(op, mesh, r, piecewise_moments(f), u0);
        for (int trial = 0; trial < 4; ++trial) {
            const PiecewisePoly phi = PiecewisePoly::random(mesh, r, 3, rng);
            const double lhs = bilinear_form(op, u, phi);
            const double rhs = integral_pairing(op, phi, [&f](double t) { return f(t); }) + u0.dot(phi.left_trace(0));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }

    TEST_CASE("the discrete dual solution satisfies the dual identity") {
        std::mt19937_64 rng(5);
        const SpatialOperator op = nonsymmetric();
        const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(1.0, 6, 0.5, 9);
        const int r = 1;
        const PiecewisePoly g = PiecewisePoly::random(mesh, r, 3, rng);
        const Eigen::Vector3d terminal(0.3, 0.0, -2.0);
        const PiecewisePoly gamma = solve_dual(op, mesh, r, piecewise_moments(g), terminal);
        for (int trial = 0; trial < 4; ++trial) {
            const PiecewisePoly v = PiecewisePoly::random(mesh, r, 3, rng);
            const double lhs = dual_bilinear_form(op, v, gamma);
            const double rhs = integral_pairing(op, v, [&g](double t) { return g(t); }) +
                               v.right_trace(mesh.num_intervals() - 1).dot(terminal);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }

    TEST_CASE("Galerkin orthogonality against a Duhamel reference") {
        std::mt19937_64 rng(11);
        const SpatialOperator op = SpatialOperator::diagonal(Eigen::Vector2d(1.0, 20.0));
        const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(1.0, 5, 0.5, 2);
        const TimeFunction f = [](double t) -> Eigen::VectorXd { return Eigen::Vector2d(1.0 - t, t * t); };
        const Eigen::Vector2d u0(1.0, 2.0);
        const TimeFunction exact = [&](double t) { return duhamel_reference(op, f, u0, t); };
        for (int r : {0, 1, 2}) {
            const PiecewisePoly u = solve_primal(op, mesh, r, f, u0, 8);
            for (int trial = 0; trial < 3; ++trial) {
                const PiecewisePoly phi = PiecewisePoly::random(mesh, r, 2, rng);
                const double residual = dual_bilinear_form(op, exact, phi, 4) - bilinear_form(op, u, phi);
                CHECK(std::abs(residual) < 1e-9);
            }
        }
    }
}
