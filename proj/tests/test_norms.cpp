#include <cmath>
#include <random>

#include "doctest.h"
#include "dgmr/norms.hpp"

using namespace dgmr;

namespace {

SpatialOperator scalar(double lambda) { return SpatialOperator::diagonal(Eigen::VectorXd::Constant(1, lambda)); }

PiecewisePoly linear_t(const TemporalMesh& mesh) {
    PiecewisePoly u(mesh, 1, 1);
    for (std::size_t n = 0; n < mesh.num_intervals(); ++n) {
        u.coeffs(n) << mesh.t(n), mesh.t(n + 1);
    }
    return u;
}

}  // namespace

TEST_SUITE("norms") {
    TEST_CASE("norms of t on the unit interval") {
        const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(1.0, 6, 0.5, 1);
        const PiecewisePoly u = linear_t(mesh);
        const SpatialOperator op = scalar(2.0);
        CHECK(broken_norm(op, u, 2.0) == doctest::Approx(1.0 / std::sqrt(3.0)));
        CHECK(broken_norm(op, u, 1.0) == doctest::Approx(0.5));
        CHECK(broken_norm(op, u, 4.0) == doctest::Approx(std::pow(0.2, 0.25)));
        CHECK(broken_norm(op, u, 2.0, 1) == doctest::Approx(1.0));
        CHECK(broken_norm(op, u, 2.0, 0, true) == doctest::Approx(2.0 / std::sqrt(3.0)));
        CHECK(jump_sum(op, u, 2.0) == doctest::Approx(0.0));
    }

    TEST_CASE("jump sum of a staircase") {
        const TemporalMesh mesh = TemporalMesh::make_uniform(1.0, 4);
        PiecewisePoly u(mesh, 0, 1);
        for (std::size_t n = 0; n < 4; ++n) {
            u.coeffs(n)(0, 0) = static_cast<double>(n + 1);
        }
        // jumps of 1 over tau = 1/4: (4 * 4^p * 1/4)^{1/p} = 4
        for (double p : {1.5, 2.0, 3.0}) {
            CHECK(jump_sum(scalar(1.0), u, p) == doctest::Approx(4.0));
        }
    }

    TEST_CASE("function norm of a smooth function") {
        const TemporalMesh mesh = TemporalMesh::make_uniform(M_PI, 16);
        const TimeFunction f = [](double t) -> Eigen::VectorXd { return Eigen::VectorXd::Constant(1, std::sin(t)); };
        CHECK(function_norm(scalar(1.0), f, mesh, 2.0, 3, 2) == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-10));
    }

    TEST_CASE("the jump bound holds with constant one") {
        std::mt19937_64 rng(19);
        const TemporalMesh mesh = TemporalMesh::make_quasi_uniform(1.0, 12, 0.5, 17);
        Eigen::VectorXd lambda(6);
        lambda << 1.0, 10.0, 1e2, 1e3, 1e4, 1e5;
        const SpatialOperator op = SpatialOperator::diagonal(lambda);
        for (int r : {0, 1, 2, 3}) {
            for (double p : {1.5, 2.0, 4.0}) {
                const PiecewisePoly f = PiecewisePoly::random(mesh, r, 6, rng);
                const TimeFunction ff = [&f](double t) { return f(t); };
                const PiecewisePoly u = solve_primal(op, mesh, r, piecewise_moments(f), Eigen::VectorXd::Ones(6));
                CHECK(jump_residual_ratio(op, u, ff, p, 2) <= 1.0 + 1e-10);
            }
        }
    }

    TEST_CASE("maximal regularity report") {
        const TemporalMesh mesh = TemporalMesh::make_uniform(1.0, 8);
        const SpatialOperator op = SpatialOperator::diagonal(Eigen::Vector2d(1.0, 50.0));
        const PiecewisePoly zero = solve_primal(op, mesh, 1, zero_moments(2), Eigen::VectorXd::Zero(2));
        const NormReport empty = mr_functional(op, zero, 0.0, 2.0);
        CHECK(empty.lhs() == 0.0);
        CHECK(!empty.flagged);

        const TimeFunction f = [](double t) -> Eigen::VectorXd { return Eigen::Vector2d(1.0, t); };
        const PiecewisePoly u = solve_primal(op, mesh, 1, f, Eigen::VectorXd::Zero(2));
        const NormReport report = mr_functional(op, u, f, 2.0, 2);
        CHECK(report.u0_norm == 0.0);
        CHECK(report.rhs_norm == doctest::Approx(std::sqrt(1.0 + 1.0 / 3.0)));
        CHECK(report.mr_ratio == doctest::Approx(report.lhs() / report.rhs_norm));
        CHECK(report.mr_ratio > 0.0);
        CHECK(NormReport::csv_header().find("mr_ratio") != std::string::npos);
    }

    TEST_CASE("one-step functional on exact traces") {
        const TemporalMesh mesh = TemporalMesh::make_uniform(1.0, 4);
        const PiecewisePoly u = linear_t(mesh);
        const OneStepPair pair = one_step_functional(scalar(3.0), u, 2.0);
        CHECK(pair.difference == doctest::Approx(1.0));
        // (sum (3 t_n)^2 / 4)^{1/2} over t_n = 1/4..1
        CHECK(pair.operator_term == doctest::Approx(3.0 * std::sqrt((1.0 + 4.0 + 9.0 + 16.0) / 64.0)));
    }

    TEST_CASE("weighted error of a polynomial reference") {
        const TemporalMesh mesh = TemporalMesh::make_uniform(1.0, 4);
        const SpatialOperator op = scalar(2.0);
        PiecewisePoly g(mesh, 1, 1);
        const TimeFunction ref = [](double t) -> Eigen::VectorXd { return Eigen::VectorXd::Constant(1, 2.0 * t); };
        const WeightedError plain = weighted_A_error(ref, g, WeightFn{0.5, 0.25}, 0.0, 2.0, op);
        CHECK(plain.value == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
        CHECK(!plain.flagged);
        const WeightFn sigma{0.5, 0.25};
        CHECK(sigma(0.5) == doctest::Approx(0.25));
        CHECK(sigma(0.5 + 0.25) == doctest::Approx(0.25 * std::sqrt(2.0)));
    }
}
