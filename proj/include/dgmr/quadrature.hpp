#pragma once

#include <cstddef>
#include <vector>

namespace dgmr {

/// Gauss-Legendre rule mapped to [0,1]. An n-point rule integrates
/// polynomials of degree <= 2n-1 exactly.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

QuadratureRule gauss_legendre(std::size_t n_points);

/// Composite rule on [0,1]: `pieces` equal sub-intervals, each carrying an
/// n-point Gauss-Legendre rule.
QuadratureRule composite_gauss_legendre(std::size_t n_points, std::size_t pieces);

}  // namespace dgmr
