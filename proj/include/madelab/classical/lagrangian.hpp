#pragma once

#include <vector>

#include "madelab/classical/states.hpp"
#include "madelab/core/params.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

/// L = n (d_t S + H(grad S, q, t)) with d_t S supplied by the caller.
RealField lagrangian_density(const QStochasticState& st,
                             const PotentialSpec& pot,
                             const PhysicalParams& params, const RealField& dtS);

/// The Hamilton-Jacobi right-hand side, d_t S = -H.
RealField hj_time_derivative(const QStochasticState& st,
                             const PotentialSpec& pot,
                             const PhysicalParams& params);

/// Centred difference of S at the middle of 3 or 5 snapshots spaced by dt.
RealField stencil_time_derivative(const std::vector<ActionField>& snapshots,
                                  double dt);

}  // namespace madelab
