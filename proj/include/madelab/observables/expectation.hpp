#pragma once

#include "madelab/bridge/wave_function.hpp"
#include "madelab/classical/states.hpp"
#include "madelab/core/potential.hpp"
#include "madelab/observables/observable.hpp"

namespace madelab {

/// Classical (n, S) quadrature of an observable. With use_sigma the second
/// moments of grad S carry the stochastic correction: <p_i p_j> gains
/// hbar^2/4 [d_i n d_j n / n^2 + delta_ij beta^2 n^(2/3) / 3], the kinetic
/// energy gains Sigma^2 / 2m, and <l_z^2> gains the same tensor contracted
/// with (-y, x). Powers of p above 2 throw UnsupportedObservable: only the
/// first two moments of grad S are known.
double expect_classical(const QStochasticState& st, const PotentialSpec& pot,
                        const PhysicalParams& params, const Observable& obs,
                        bool use_sigma = true);

/// <psi|F|psi> for a normalised psi.
double expect_quantum(const WaveFunction& psi, const PotentialSpec& pot, const Observable& obs);

/// Standard deviation of q_axis (or p_axis).
double position_spread(const WaveFunction& psi, int axis = 0);
double momentum_spread(const WaveFunction& psi, int axis = 0);
double position_spread(const QStochasticState& st, int axis = 0);
double momentum_spread(const QStochasticState& st, const PhysicalParams& params,
                       int axis = 0, bool use_sigma = true);

}  // namespace madelab
