#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dgmr/errors.hpp"
#include "dgmr/temporal_mesh.hpp"

using namespace dgmr;

namespace {

double binomial3(std::size_t k) {
    const auto x = static_cast<double>(k);
    return x * (x - 1.0) * (x - 2.0) / 6.0;
}

// brute-force triple sum, independent of the dynamic-programming evaluation
double triple_sum_direct(const TemporalMesh& mesh, std::size_t m, std::size_t n) {
    double acc = 0.0;
    for (std::size_t a = m; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = b + 1; c < n; ++c) {
                acc += mesh.tau(a) * mesh.tau(b) * mesh.tau(c);
            }
        }
    }
    return acc;
}

}  // namespace

TEST_SUITE("temporal_mesh") {
    TEST_CASE("uniform meshes") {
        const TemporalMesh m4 = TemporalMesh::make_uniform(1.0, 4);
        const double expected[] = {0.0, 0.25, 0.5, 0.75, 1.0};
        REQUIRE(m4.num_intervals() == 4);
        for (std::size_t k = 0; k <= 4; ++k) {
            CHECK(m4.t(k) == expected[k]);
        }
        const TemporalMesh m1 = TemporalMesh::make_uniform(1.0, 1);
        CHECK(m1.num_intervals() == 1);
        CHECK(m1.tau_max() == 1.0);
        const TemporalMesh m8 = TemporalMesh::make_uniform(2.0, 8);
        CHECK(m8.tau_max() == 0.25);
        CHECK(m8.quasi_uniformity_constant() == 1.0);
    }

    TEST_CASE("invalid input is rejected") {
        CHECK_THROWS_AS(TemporalMesh::make_uniform(1.0, 0), ConfigError);
        CHECK_THROWS_AS(TemporalMesh::make_uniform(0.0, 4), ConfigError);
        CHECK_THROWS_AS(TemporalMesh::make_uniform(-1.0, 4), ConfigError);
        CHECK_THROWS_AS(TemporalMesh(std::vector<double>{0.0, 0.5, 0.5, 1.0}), ConfigError);
        CHECK_THROWS_AS(TemporalMesh(std::vector<double>{0.1, 0.5}), ConfigError);
        CHECK_THROWS_AS(TemporalMesh::make_quasi_uniform(1.0, 4, 0.0, 1), ConfigError);
        CHECK_THROWS_AS(TemporalMesh::make_quasi_uniform(1.0, 4, 1.5, 1), ConfigError);
    }

    TEST_CASE("quasi-uniform meshes satisfy the declared constant") {
        const TemporalMesh m = TemporalMesh::make_quasi_uniform(1.0, 16, 0.5, 7);
        double lo = 1e300;
        double hi = 0.0;
        for (std::size_t n = 0; n < m.num_intervals(); ++n) {
            const double len = m.t(n + 1) - m.t(n);
            lo = std::min(lo, len);
            hi = std::max(hi, len);
        }
        CHECK(lo >= 0.5 * hi);
        CHECK(m.final_time() == 1.0);

        const TemporalMesh two = TemporalMesh::make_quasi_uniform(1.0, 2, 0.5, 1);
        const double ratio = two.tau(0) / two.tau(1);
        CHECK(ratio >= 0.5);
        CHECK(ratio <= 2.0);

        CHECK(TemporalMesh::make_quasi_uniform(1.0, 4, 1.0, 0) == TemporalMesh::make_uniform(1.0, 4));
    }

    TEST_CASE("quasi-uniform generation is deterministic and holds over many seeds") {
        CHECK(TemporalMesh::make_quasi_uniform(3.0, 40, 0.3, 11) == TemporalMesh::make_quasi_uniform(3.0, 40, 0.3, 11));
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            for (double c : {0.1, 0.5, 0.9}) {
                const TemporalMesh m = TemporalMesh::make_quasi_uniform(1.0, 3 + seed % 50, c, seed);
                CHECK(m.tau_min() >= c * m.tau_max());
            }
        }
    }

    TEST_CASE("product bound on uniform meshes") {
        const TemporalMesh m = TemporalMesh::make_uniform(1.0, 20);
        const double h = 0.05;
        const ProductBound three = product_bound_check(m, 2, 5);
        CHECK(three.triple_sum == doctest::Approx(h * h * h).epsilon(1e-13));
        CHECK(three.cube == doctest::Approx(27.0 * h * h * h).epsilon(1e-13));
        CHECK(three.ratio == doctest::Approx(1.0 / 27.0).epsilon(1e-12));
        for (std::size_t k = 3; k <= 20; ++k) {
            const ProductBound b = product_bound_check(m, 0, k);
            CHECK(b.triple_sum == doctest::Approx(binomial3(k) * h * h * h).epsilon(1e-12));
            CHECK(b.cube == doctest::Approx(std::pow(static_cast<double>(k) * h, 3)).epsilon(1e-12));
        }
        CHECK_THROWS_AS(product_bound_check(m, 3, 5), ConfigError);
    }

    TEST_CASE("product bound on random meshes") {
        const TemporalMesh m = TemporalMesh::make_quasi_uniform(1.0, 30, 0.4, 3);
        const ProductBound b = product_bound_check(m, 4, 7);
        CHECK(b.triple_sum == doctest::Approx(m.tau(4) * m.tau(5) * m.tau(6)).epsilon(1e-13));
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const double c = 0.25 + 0.03 * static_cast<double>(seed);
            const TemporalMesh r = TemporalMesh::make_quasi_uniform(2.0, 25, c, seed);
            for (std::size_t lo = 0; lo + 3 <= 25; lo += 2) {
                for (std::size_t hi = lo + 3; hi <= 25; hi += 3) {
                    const ProductBound pb = product_bound_check(r, lo, hi);
                    CHECK(pb.triple_sum == doctest::Approx(triple_sum_direct(r, lo, hi)).epsilon(1e-12));
                    CHECK(pb.ratio >= c * c * c / 27.0);
                }
            }
        }
    }

    TEST_CASE("refinement keeps the coarse breakpoints") {
        const TemporalMesh coarse = TemporalMesh::make_uniform(1.0, 6);
        const TemporalMesh fine = TemporalMesh::make_uniform(1.0, 12);
        for (std::size_t k = 0; k <= 6; ++k) {
            CHECK(fine.t(2 * k) == doctest::Approx(coarse.t(k)).epsilon(1e-15));
        }
        const TemporalMesh split = coarse.refined(2);
        CHECK(split.num_intervals() == 12);
        for (std::size_t k = 0; k <= 6; ++k) {
            CHECK(split.t(2 * k) == coarse.t(k));
        }
    }

    TEST_CASE("locate uses half-open intervals and closes the last one") {
        const TemporalMesh m = TemporalMesh::make_uniform(1.0, 4);
        CHECK(m.locate(0.0) == 0);
        CHECK(m.locate(0.25) == 1);
        CHECK(m.locate(0.3) == 1);
        CHECK(m.locate(1.0) == 3);
        CHECK_THROWS_AS(m.locate(1.5), ConfigError);
        CHECK_THROWS_AS(m.locate(-0.1), ConfigError);
    }

    TEST_CASE("reversal is an involution") {
        const TemporalMesh m = TemporalMesh::make_quasi_uniform(2.0, 9, 0.5, 5);
        const TemporalMesh r = m.reversed();
        CHECK(r.tau(0) == m.tau(8));
        const TemporalMesh rr = r.reversed();
        for (std::size_t k = 0; k <= 9; ++k) {
            CHECK(rr.t(k) == doctest::Approx(m.t(k)).epsilon(1e-15));
        }
    }

    TEST_CASE("breakpoints round-trip through text") {
        const TemporalMesh m = TemporalMesh::make_quasi_uniform(1.0, 13, 0.6, 42);
        std::stringstream ss;
        write_breakpoints(ss, m);
        std::stringstream with_comment;
        with_comment << "# mesh\n\n" << ss.str();
        CHECK(read_breakpoints(with_comment) == m);
        std::stringstream bad("0\nabc\n");
        CHECK_THROWS_AS(read_breakpoints(bad), ConfigError);
    }
}
