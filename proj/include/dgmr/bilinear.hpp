#pragma once

#include "dgmr/dg_solver.hpp"

namespace dgmr {

/// B_tau(v, phi) = sum_n int <v' + Av, phi> + sum_{n>=1} <[v]^n, phi^{n,+}> + <v^{0,+}, phi^{0,+}>,
/// integrated exactly. Both arguments must share the mesh.
double bilinear_form(const SpatialOperator& op, const PiecewisePoly& v, const PiecewisePoly& phi);

/// B'_tau(v, phi) = sum_n int <v, -phi' + A'phi> - sum_{interior n} <v^{n,-}, [phi]^n> + <v^{N,-}, phi^{N,-}>.
double dual_bilinear_form(const SpatialOperator& op, const PiecewisePoly& v, const PiecewisePoly& phi);

/// B'_tau(v, phi) for a function v that is continuous across breakpoints;
/// the integrals use 10 point Gauss on `oversample` pieces per interval.
double dual_bilinear_form(const SpatialOperator& op, const TimeFunction& v, const PiecewisePoly& phi,
                          std::size_t oversample = 4);

/// int_J <v, g> dt with the same quadrature convention.
double integral_pairing(const SpatialOperator& op, const PiecewisePoly& v, const TimeFunction& g,
                        std::size_t oversample = 4);

}  // namespace dgmr
