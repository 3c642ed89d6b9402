#include "dgmr/temporal_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "dgmr/errors.hpp"

namespace dgmr {

TemporalMesh::TemporalMesh(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
    if (breakpoints_.size() < 2) {
        throw ConfigError("TemporalMesh: need at least two breakpoints");
    }
    taus_.resize(breakpoints_.size() - 1);
    for (std::size_t n = 0; n + 1 < breakpoints_.size(); ++n) {
        taus_[n] = breakpoints_[n + 1] - breakpoints_[n];
    }
    finish_();
}

TemporalMesh::TemporalMesh(std::vector<double> breakpoints, std::vector<double> taus)
    : breakpoints_(std::move(breakpoints)), taus_(std::move(taus)) {
    finish_();
}

void TemporalMesh::finish_() {
    if (breakpoints_.front() != 0.0) {
        throw ConfigError("TemporalMesh: first breakpoint must be 0");
    }
    if (!(breakpoints_.back() > 0.0)) {
        throw ConfigError("TemporalMesh: final time must be positive");
    }
    for (std::size_t n = 0; n < taus_.size(); ++n) {
        if (!(breakpoints_[n + 1] > breakpoints_[n]) || !(taus_[n] > 0.0)) {
            std::ostringstream msg;
            msg << "TemporalMesh: breakpoints not strictly increasing at index " << n + 1;
            throw ConfigError(msg.str());
        }
    }
    tau_max_ = *std::max_element(taus_.begin(), taus_.end());
    tau_min_ = *std::min_element(taus_.begin(), taus_.end());
}

TemporalMesh TemporalMesh::make_uniform(double final_time, std::size_t intervals) {
    if (intervals == 0) {
        throw ConfigError("make_uniform: N must be >= 1");
    }
    if (!(final_time > 0.0)) {
        throw ConfigError("make_uniform: T must be positive");
    }
    std::vector<double> points(intervals + 1);
    const auto n_total = static_cast<double>(intervals);
    for (std::size_t k = 0; k <= intervals; ++k) {
        points[k] = final_time * static_cast<double>(k) / n_total;
    }
    points.back() = final_time;
    // nominal steps stored exactly, c = 1
    std::vector<double> taus(intervals, final_time / n_total);
    return TemporalMesh(std::move(points), std::move(taus));
}

TemporalMesh TemporalMesh::make_quasi_uniform(double final_time, std::size_t intervals, double c,
                                              std::uint64_t seed) {
    if (!(c > 0.0) || c > 1.0) {
        throw ConfigError("make_quasi_uniform: c must lie in (0, 1]");
    }
    if (c == 1.0 || intervals == 1) {
        return make_uniform(final_time, intervals);
    }
    if (intervals == 0 || !(final_time > 0.0)) {
        throw ConfigError("make_quasi_uniform: need N >= 1 and T > 0");
    }
    // weights in [c_eff, 1], c_eff slightly above c
    const double c_eff = std::min(1.0, c * (1.0 + 1e-9));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> draw(c_eff, 1.0);
    std::vector<double> weights(intervals);
    for (auto& w : weights) {
        w = draw(rng);
    }
    // stretch to the full band [c_eff, 1]
    const auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
    const double w_lo = *lo;
    const double w_hi = *hi;
    if (w_hi > w_lo) {
        for (auto& w : weights) {
            w = c_eff + (1.0 - c_eff) * (w - w_lo) / (w_hi - w_lo);
        }
    }
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    std::vector<double> points(intervals + 1, 0.0);
    double acc = 0.0;
    for (std::size_t n = 0; n < intervals; ++n) {
        acc += weights[n];
        points[n + 1] = final_time * acc / total;
    }
    points.back() = final_time;
    TemporalMesh mesh(std::move(points));
    if (!mesh.is_quasi_uniform(c)) {
        throw NumericalError("make_quasi_uniform: generated mesh violates the declared constant");
    }
    return mesh;
}

bool TemporalMesh::is_quasi_uniform(double c) const {
    return std::all_of(taus_.begin(), taus_.end(), [&](double tn) { return tn >= c * tau_max_; });
}

std::size_t TemporalMesh::locate(double time) const {
    if (time < 0.0 || time > final_time()) {
        std::ostringstream msg;
        msg << "TemporalMesh::locate: time " << time << " outside [0, " << final_time() << "]";
        throw ConfigError(msg.str());
    }
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), time);
    const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
    if (idx == 0) {
        return 0;
    }
    return std::min(idx - 1, num_intervals() - 1);
}

TemporalMesh TemporalMesh::reversed() const {
    const double T = final_time();
    std::vector<double> points(breakpoints_.size());
    std::vector<double> taus(taus_.rbegin(), taus_.rend());
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        points[k] = T - breakpoints_[breakpoints_.size() - 1 - k];
    }
    points.front() = 0.0;
    points.back() = T;
    return TemporalMesh(std::move(points), std::move(taus));
}

TemporalMesh TemporalMesh::refined(std::size_t factor) const {
    if (factor == 0) {
        throw ConfigError("TemporalMesh::refined: factor must be >= 1");
    }
    std::vector<double> points;
    std::vector<double> taus;
    points.reserve(num_intervals() * factor + 1);
    points.push_back(0.0);
    for (std::size_t n = 0; n < num_intervals(); ++n) {
        const double sub = taus_[n] / static_cast<double>(factor);
        for (std::size_t k = 1; k <= factor; ++k) {
            points.push_back(k == factor ? breakpoints_[n + 1]
                                         : breakpoints_[n] + static_cast<double>(k) * sub);
            taus.push_back(sub);
        }
    }
    return TemporalMesh(std::move(points), std::move(taus));
}

ProductBound product_bound_check(const TemporalMesh& mesh, std::size_t m, std::size_t n) {
    if (n > mesh.num_intervals() || n < m + 3) {
        throw ConfigError("product_bound_check: need m + 3 <= n <= N");
    }
    // elementary symmetric polynomials e1, e2, e3 of tau_{m+1..n}
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    for (std::size_t l = m; l < n; ++l) {
        const double x = mesh.tau(l);
        e3 += e2 * x;
        e2 += e1 * x;
        e1 += x;
    }
    const double span = mesh.t(n) - mesh.t(m);
    ProductBound out;
    out.triple_sum = e3;
    out.cube = span * span * span;
    out.ratio = e3 / out.cube;
    return out;
}

void write_breakpoints(std::ostream& out, const TemporalMesh& mesh) {
    out << std::setprecision(17);
    for (double t : mesh.breakpoints()) {
        out << t << '\n';
    }
}

TemporalMesh read_breakpoints(std::istream& in) {
    std::vector<double> points;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::istringstream ls(line);
        double v = 0.0;
        if (!(ls >> v)) {
            throw ConfigError("read_breakpoints: malformed line '" + line + "'");
        }
        points.push_back(v);
    }
    return TemporalMesh(std::move(points));
}

}  // namespace dgmr
