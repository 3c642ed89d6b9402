#pragma once

#include "dgmr/dg_solver.hpp"

namespace dgmr {

/// I_tau v: on each interval the degree-r polynomial with right-end value
/// v(t_n) and the same moments as v against P^{r-1}. Moments use r+2 point
/// Gauss-Legendre on `oversample` pieces per interval. The initial trace of
/// the result is v(0).
PiecewisePoly interpolate(const TemporalMesh& mesh, int degree, const TimeFunction& v, std::size_t oversample = 1);

}  // namespace dgmr
