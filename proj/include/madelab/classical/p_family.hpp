#pragma once

#include "madelab/classical/states.hpp"
#include "madelab/core/params.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

/// Integrates the conjugate-family equations on a momentum grid
///   d_t n - d_p(n d_q H(p, grad_p S)) = 0,  d_t S - H(p, grad_p S) = 0.
/// Only A = 0 with a free, uniform-field or harmonic potential is accepted:
/// for anything else the scheme does not close (UnsupportedPotential).
PStochasticState evolve_p_state(const PStochasticState& st,
                                const PotentialSpec& pot,
                                const PhysicalParams& params, double dt,
                                int steps);

/// <q> = integral n grad_p S dp.
double p_state_mean_position(const PStochasticState& st, int axis = 0);
/// <p> = integral p n dp.
double p_state_mean_momentum(const PStochasticState& st, int axis = 0);
/// <H> = integral H(p, grad_p S) n dp.
double p_state_energy(const PStochasticState& st, const PotentialSpec& pot,
                      const PhysicalParams& params);

}  // namespace madelab
