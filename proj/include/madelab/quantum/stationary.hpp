#pragma once

#include "madelab/bridge/wave_function.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

struct StationaryOptions {
  double tolerance = 1e-8;
  long max_iterations = 100000;
};

struct EigenState {
  WaveFunction psi;
  double energy = 0.0;
  /// || H psi - E psi ||.
  double residual = 0.0;
  long iterations = 0;
};

/// Level 0 or 1 eigenstate of the linear Hamiltonian by explicit
/// imaginary-time relaxation with step 0.1 spacing^2 m / hbar; level 1 is
/// kept orthogonal to level 0. Needs beta = 0, A = 0 and a confining V.
/// Throws ConvergenceError carrying the final residual.
EigenState stationary_state(const GridSpec& grid, const PotentialSpec& pot,
                            const PhysicalParams& params, int level,
                            const StationaryOptions& opts = {});

}  // namespace madelab
