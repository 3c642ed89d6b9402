#pragma once

#include <algorithm>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "dgmr/config.hpp"
#include "dgmr/experiments.hpp"
#include "dgmr/spatial_operator.hpp"

namespace dgmr::detail {

std::string fmt(double v);

Check check(int criterion, std::string name, bool pass, std::string detail);

/// "slope 2.01 (expected 2 +- 0.15), residual 0.004".
std::string describe(const OrderFit& fit, double expected, double tolerance);

/// Check that a fit is confirmed, within tolerance and, when requested, monotone.
Check order_check(int criterion, std::string name, const OrderFit& fit, double expected, double tolerance,
                  bool require_monotone = true);

/// max(values) / values.front().
double drift(const std::vector<double>& values);

std::vector<double> log_spaced(double lo, double hi, int count);

struct OperatorDefaults {
    std::string kind = "diagonal";
    std::vector<double> eigenvalues;
    int modes = 20;
    double lambda_min = 1.0;
    double lambda_max = 1e4;
    int elements = 32;
};

/// Keys: operator (diagonal | dense | fem1d), eigenvalues, modes, lambda_min,
/// lambda_max, elements, dim and matrix (row-major) for dense, space_q,
/// sector_angle.
SpatialOperator operator_from(const Config& cfg, const OperatorDefaults& defaults);

/// Evaluates f(0..count-1) on worker threads; results keep their index order.
template <typename F>
auto parallel_map(std::size_t count, F f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<R> out;
    out.reserve(count);
    const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    for (std::size_t begin = 0; begin < count; begin += workers) {
        std::vector<std::future<R>> batch;
        const std::size_t end = std::min(count, begin + workers);
        for (std::size_t k = begin; k < end; ++k) {
            batch.push_back(std::async(std::launch::async, f, k));
        }
        for (auto& fut : batch) {
            out.push_back(fut.get());
        }
    }
    return out;
}

}  // namespace dgmr::detail
