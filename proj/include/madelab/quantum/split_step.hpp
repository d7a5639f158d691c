#pragma once

#include <functional>

#include "madelab/bridge/wave_function.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

using WaveObserver = std::function<void(const WaveFunction&, int step)>;

/// Strang split-step propagation V/2 - T - V/2 of
///   i hbar d_t psi = (1/2m)(-i hbar grad - e A)^2 psi
///                    + 5 beta^2 hbar^2/24m |psi|^(4/3) psi + V psi.
///
/// The nonlinear term rides in the potential phase, where |psi| is constant.
/// A must be a periodic gradient (static table) or gauge terms carrying the
/// state's charge; the run happens in the A = 0 frame and psi is rotated
/// back. Anything else throws UngaugeablePotential. dt may be negative.
/// Warns "dt" when dt max|V_eff| / hbar exceeds pi/4.
WaveFunction split_step_propagate(const WaveFunction& psi, const PotentialSpec& pot,
                                  double dt, int steps, const WaveObserver& observer = {});

}  // namespace madelab
