#include <sstream>

#include "doctest.h"
#include "dgmr/config.hpp"
#include "dgmr/errors.hpp"
#include "dgmr/experiments.hpp"

using namespace dgmr;

namespace {

Config parse(const std::string& text) {
    std::istringstream in(text);
    return Config::parse(in);
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("scalars, lists and comments") {
        const Config cfg = parse(
            "# header\n"
            "p = 2.5\n"
            "N = 8, 16 32  # trailing comment\n"
            "\n"
            "operator = fem1d\n"
            "seed = 42\n");
        CHECK(cfg.get_double("p", 0.0) == 2.5);
        CHECK(cfg.get("operator", "") == "fem1d");
        CHECK(cfg.get_seed("seed", 0) == 42u);
        CHECK(cfg.get_levels("N", {}) == std::vector<std::size_t>{8, 16, 32});
        CHECK(cfg.get_int("missing", 7) == 7);
        CHECK(cfg.get_doubles("missing", {1.0}) == std::vector<double>{1.0});
    }

    TEST_CASE("malformed input") {
        CHECK_THROWS_AS(parse("no equals sign\n"), ConfigError);
        CHECK_THROWS_AS(parse("x = abc\n").get_double("x", 0.0), ConfigError);
        CHECK_THROWS_AS(parse("x = 1.5\n").get_int("x", 0), ConfigError);
        CHECK_THROWS_AS(parse("N = 16, 8\n").get_levels("N", {}), ConfigError);
        CHECK_THROWS_AS(parse("N = 0, 8\n").get_levels("N", {}), ConfigError);
        CHECK_THROWS_AS(Config::load("/nonexistent/config.txt"), ConfigError);
    }

    TEST_CASE("experiment scoped keys override plain keys") {
        const Config cfg = parse("p = 2\ngreen.p = 4\nheat.N = 8 16 32\nr = 1\n");
        const Config green = scoped_config(cfg, "green");
        CHECK(green.get_double("p", 0.0) == 4.0);
        CHECK(green.get_int("r", 0) == 1);
        CHECK_FALSE(green.has("N"));
        CHECK_FALSE(green.has("heat.N"));
        const Config heat = scoped_config(cfg, "heat");
        CHECK(heat.get_double("p", 0.0) == 2.0);
        CHECK(heat.get_levels("N", {}).size() == 3);
    }

    TEST_CASE("operator construction from keys") {
        const SpatialOperator diag = make_operator(parse("eigenvalues = 1 2 3\n"));
        CHECK(diag.dim() == 3);
        const SpatialOperator fem = make_operator(parse("operator = fem1d\nelements = 8\n"));
        CHECK(fem.kind() == OperatorKind::Fem1d);
        CHECK(fem.dim() == 7);
        CHECK_THROWS_AS(make_operator(parse("operator = spectral\n")), ConfigError);
    }

    TEST_CASE("csv table") {
        Table table({"name", "n", "value"});
        table.row() << "a" << 3 << 0.125;
        table.row() << std::string("b") << std::size_t{4} << 1.0 / 3.0;
        std::ostringstream out;
        table.write(out);
        CHECK(out.str() == "name,n,value\na,3,0.125\nb,4,0.333333333333\n");
        CHECK(table.size() == 2);
    }
}
