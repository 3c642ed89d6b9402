#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dgmr/config.hpp"
#include "dgmr/order_fit.hpp"
#include "dgmr/spatial_operator.hpp"

namespace dgmr {

/// One pass/fail verdict. `criterion` is the acceptance criterion the check
/// belongs to, or 0 for supplementary checks.
struct Check {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// CSV table with a fixed header; numbers are written at 12 significant digits.
class Table {
public:
    explicit Table(std::vector<std::string> header = {}) : header_(std::move(header)) {}

    class Row {
    public:
        Row& operator<<(const std::string& v);
        Row& operator<<(const char* v) { return *this << std::string(v); }
        Row& operator<<(double v);
        Row& operator<<(long v);
        Row& operator<<(int v) { return *this << static_cast<long>(v); }
        Row& operator<<(std::size_t v) { return *this << static_cast<long>(v); }

    private:
        friend class Table;
        std::vector<std::string> cells_;
    };

    Row& row();
    const std::vector<std::string>& header() const { return header_; }
    std::size_t size() const { return rows_.size(); }
    void write(std::ostream& out) const;

private:
    std::vector<std::string> header_;
    std::vector<Row> rows_;
};

struct ExperimentResult {
    std::string id;
    Table table;
    std::vector<Check> checks;
    std::vector<OrderFit> fits;

    bool passed() const;
};

using ExperimentRunner = std::function<ExperimentResult(const Config&)>;

/// DG reproduces polynomial-in-time solutions.
ExperimentResult run_exactness(const Config& cfg);
/// Order study against u = e^{-t} w + sin(t) w'.
ExperimentResult run_converge(const Config& cfg);
/// Closed forms, polynomial degrees, A-stability and sector constants.
ExperimentResult run_rational(const Config& cfg);
/// Product formula against the stepping.
ExperimentResult run_duhamel(const Config& cfg);
/// Maximal regularity ratio over random load ensembles and random initial data.
ExperimentResult run_mr_sweep(const Config& cfg);
/// ||A u_tau|| against the interpolation norm of u0 with f = 0.
ExperimentResult run_initial(const Config& cfg);
/// One-step quantities against the full functional.
ExperimentResult run_one_step(const Config& cfg);
/// Interpolation error orders.
ExperimentResult run_interp(const Config& cfg);
/// Scaling of the regularized delta.
ExperimentResult run_mollifier(const Config& cfg);
/// Weighted Green's function rate and locality of the discrete error.
ExperimentResult run_green(const Config& cfg);
/// Heat equation with P1 elements in space.
ExperimentResult run_heat(const Config& cfg);
/// B = B' and Galerkin orthogonality.
ExperimentResult run_duality(const Config& cfg);

/// Operator from the keys operator, eigenvalues, modes, lambda_min, lambda_max,
/// dim, matrix, elements, space_q and sector_angle. Defaults to 20 modes
/// log-spaced in [1, 1e4].
SpatialOperator make_operator(const Config& cfg);

/// Entries of `cfg` with every `prefix.key` promoted to `key`.
Config scoped_config(const Config& cfg, const std::string& prefix);

struct ExperimentEntry {
    std::string id;
    std::string summary;
    ExperimentRunner run;
};
const std::vector<ExperimentEntry>& experiment_registry();

}  // namespace dgmr
