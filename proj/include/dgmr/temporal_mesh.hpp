#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace dgmr {

/// Partition 0 = t_0 < t_1 < ... < t_N = T of the time interval.
///
/// Intervals are indexed 0..N-1 in code; interval n spans
/// [t_n, t_{n+1}] and has length tau(n). Immutable after construction.
class TemporalMesh {
public:
    /// Validates strict monotonicity, t_0 = 0 and T > 0.
    explicit TemporalMesh(std::vector<double> breakpoints);

    static TemporalMesh make_uniform(double final_time, std::size_t intervals);

    /// Random mesh with tau_n >= c * max_n tau_n, reproducible from `seed`.
    static TemporalMesh make_quasi_uniform(double final_time, std::size_t intervals,
                                           double c, std::uint64_t seed);

    std::size_t num_intervals() const { return taus_.size(); }
    double final_time() const { return breakpoints_.back(); }

    /// Breakpoint t_k, k = 0..N.
    double t(std::size_t k) const { return breakpoints_[k]; }
    double tau(std::size_t n) const { return taus_[n]; }
    double tau_max() const { return tau_max_; }
    double tau_min() const { return tau_min_; }

    /// min_n tau_n / max_n tau_n.
    double quasi_uniformity_constant() const { return tau_min_ / tau_max_; }
    bool is_quasi_uniform(double c) const;

    std::span<const double> breakpoints() const { return breakpoints_; }
    std::span<const double> taus() const { return taus_; }

    /// Interval containing t under the half-open convention [t_n, t_{n+1}),
    /// with the last interval closed at T.
    std::size_t locate(double time) const;

    /// Mesh of the reflected time s = T - t (intervals in reverse order).
    TemporalMesh reversed() const;

    /// Every interval split into `factor` equal pieces.
    TemporalMesh refined(std::size_t factor) const;

    bool operator==(const TemporalMesh& other) const { return breakpoints_ == other.breakpoints_; }

private:
    TemporalMesh(std::vector<double> breakpoints, std::vector<double> taus);
    void finish_();

    std::vector<double> breakpoints_;
    std::vector<double> taus_;
    double tau_max_ = 0.0;
    double tau_min_ = 0.0;
};

/// Both sides of the triple-product lower bound
/// sum_{m < l1 < l2 < l3 <= n} tau_l1 tau_l2 tau_l3 >= C (t_n - t_m)^3,
/// with m, n breakpoint indices.
struct ProductBound {
    double triple_sum = 0.0;
    double cube = 0.0;
    double ratio = 0.0;
};

ProductBound product_bound_check(const TemporalMesh& mesh, std::size_t m, std::size_t n);

/// Plain text: one breakpoint per line, 17 significant digits.
void write_breakpoints(std::ostream& out, const TemporalMesh& mesh);
TemporalMesh read_breakpoints(std::istream& in);

}  // namespace dgmr
