#pragma once

#include "madelab/bridge/wave_function.hpp"
#include "madelab/classical/states.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

template <typename T>
struct Gauged {
  T target;
  PotentialSpec pot;
};

/// S -> S + e phi, A -> A + grad phi, V -> V - e d_t phi, with phi and the
/// target's time. phi must be periodic on the target's grid.
Gauged<QStochasticState> gauge_transform(const QStochasticState& st, const PotentialSpec& pot,
                                         const GaugeFunction& phi, const PhysicalParams& params);
/// psi -> psi exp(i e phi / hbar).
Gauged<WaveFunction> gauge_transform(const WaveFunction& psi, const PotentialSpec& pot,
                                     const GaugeFunction& phi);

/// d_t S + e d_t phi: the time derivative of the transformed action.
RealField gauge_transform_rate(const RealField& dtS, const GaugeFunction& phi,
                               const PhysicalParams& params, double t);

/// Throws InvalidArgument if phi (or its gradient) differs across opposite
/// faces of the box.
void require_periodic_gauge(const GaugeFunction& phi, const GridSpec& grid, double t);

}  // namespace madelab
