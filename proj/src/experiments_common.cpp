#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "dgmr/errors.hpp"
#include "experiment_support.hpp"

namespace dgmr {

Table::Row& Table::Row::operator<<(const std::string& v) {
    cells_.push_back(v);
    return *this;
}

Table::Row& Table::Row::operator<<(double v) {
    cells_.push_back(detail::fmt(v));
    return *this;
}

Table::Row& Table::Row::operator<<(long v) {
    cells_.push_back(std::to_string(v));
    return *this;
}

Table::Row& Table::row() {
    rows_.emplace_back();
    return rows_.back();
}

void Table::write(std::ostream& out) const {
    const auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            out << (k == 0 ? "" : ",") << cells[k];
        }
        out << '\n';
    };
    line(header_);
    for (const auto& r : rows_) {
        line(r.cells_);
    }
}

bool ExperimentResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<ExperimentEntry>& experiment_registry() {
    static const std::vector<ExperimentEntry> registry{
        {"exactness", "polynomial-in-time solutions are reproduced", run_exactness},
        {"converge", "order study on a smooth manufactured solution", run_converge},
        {"rational", "rational transfer functions of one step", run_rational},
        {"duhamel", "product formula against stepping", run_duhamel},
        {"mr-sweep", "maximal regularity ratio under refinement", run_mr_sweep},
        {"initial", "initial-value estimate with f = 0", run_initial},
        {"one-step", "one-step functional against the full functional", run_one_step},
        {"interp", "interpolation error orders", run_interp},
        {"mollifier", "regularized delta norms under refinement", run_mollifier},
        {"green", "weighted Green's function rate and locality", run_green},
        {"heat", "heat equation with P1 elements", run_heat},
        {"duality", "B = B' and Galerkin orthogonality", run_duality},
    };
    return registry;
}

SpatialOperator make_operator(const Config& cfg) { return detail::operator_from(cfg, {}); }

Config scoped_config(const Config& cfg, const std::string& prefix) {
    Config out;
    const std::string head = prefix + ".";
    for (const auto& [key, value] : cfg.entries()) {
        if (key.find('.') == std::string::npos) {
            out.set(key, value);
        }
    }
    for (const auto& [key, value] : cfg.entries()) {
        if (key.rfind(head, 0) == 0) {
            out.set(key.substr(head.size()), value);
        }
    }
    return out;
}

namespace detail {

std::string fmt(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

Check check(int criterion, std::string name, bool pass, std::string detail) {
    return Check{criterion, std::move(name), pass, std::move(detail)};
}

std::string describe(const OrderFit& fit, double expected, double tolerance) {
    std::ostringstream out;
    out << std::setprecision(4) << "slope " << fit.slope << " (expected " << expected << " +- " << tolerance
        << "), residual " << fit.residual << (fit.monotone ? "" : ", non-monotone");
    return out.str();
}

Check order_check(int criterion, std::string name, const OrderFit& fit, double expected, double tolerance,
                  bool require_monotone) {
    const bool pass = fit.matches(expected, tolerance) && (!require_monotone || fit.monotone);
    return check(criterion, std::move(name), pass, describe(fit, expected, tolerance));
}

double drift(const std::vector<double>& values) {
    if (values.empty() || !(values.front() > 0.0)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return *std::max_element(values.begin(), values.end()) / values.front();
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double s = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
        out[static_cast<std::size_t>(k)] = lo * std::pow(hi / lo, s);
    }
    return out;
}

namespace {

SpatialOperator build_operator(const Config& cfg, const OperatorDefaults& defaults) {
    const std::string kind = cfg.get("operator", defaults.kind);
    const double sector = cfg.get_double("sector_angle", SpatialOperator::kDefaultSectorAngle);
    if (kind == "diagonal") {
        std::vector<double> lambda = cfg.get_doubles("eigenvalues", defaults.eigenvalues);
        if (lambda.empty()) {
            lambda = log_spaced(cfg.get_double("lambda_min", defaults.lambda_min),
                                cfg.get_double("lambda_max", defaults.lambda_max),
                                static_cast<int>(cfg.get_int("modes", defaults.modes)));
        }
        return SpatialOperator::diagonal(Eigen::Map<const Eigen::VectorXd>(lambda.data(),
                                                                         static_cast<Eigen::Index>(lambda.size())),
                                       sector);
    }
    if (kind == "dense") {
        const long dim = cfg.get_int("dim", 0);
        const std::vector<double> entries = cfg.get_doubles("matrix", {});
        if (dim <= 0 || entries.size() != static_cast<std::size_t>(dim * dim)) {
            throw ConfigError("config: dense operator needs 'dim' and dim*dim 'matrix' entries");
        }
        Eigen::MatrixXd a(dim, dim);
        for (long i = 0; i < dim; ++i) {
            for (long j = 0; j < dim; ++j) {
                a(i, j) = entries[static_cast<std::size_t>(i * dim + j)];
            }
        }
        return SpatialOperator::dense(a, sector);
    }
    if (kind == "fem1d") {
        return SpatialOperator::fem1d(static_cast<int>(cfg.get_int("elements", defaults.elements)), sector);
    }
    throw ConfigError("config: unknown operator kind '" + kind + "'");
}

}  // namespace

SpatialOperator operator_from(const Config& cfg, const OperatorDefaults& defaults) {
    SpatialOperator op = build_operator(cfg, defaults);
    if (cfg.has("space_q")) {
        op = op.with_space_exponent(cfg.get_double("space_q", 2.0));
    }
    return op;
}

}  // namespace detail

}  // namespace dgmr
