#pragma once

#include <vector>

#include "madelab/bridge/wave_function.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

/// Largest L2 norm over interior snapshots of
/// i hbar (psi_{k+1} - psi_{k-1}) / 2dt - H psi_k.
/// Snapshots must be equally spaced in time.
double nlse_residual(const std::vector<WaveFunction>& history, const PotentialSpec& pot);

}  // namespace madelab
