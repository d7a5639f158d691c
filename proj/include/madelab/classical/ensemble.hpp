#pragma once

#include <cstdint>

#include "madelab/classical/states.hpp"
#include "madelab/core/params.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

/// Advances every point by `steps` steps of Hamilton's equations for
/// H = (p - eA)^2/2m + V. Kick-drift-kick leapfrog when A = 0, implicit
/// midpoint otherwise; both are symplectic and second order.
ParticleEnsemble liouville_evolve_ensemble(const ParticleEnsemble& ens,
                                           const PotentialSpec& pot,
                                           const PhysicalParams& params,
                                           double dt, int steps);

/// q drawn from n (cell chosen by mass, uniform within the cell),
/// p = grad S(q); equal weights. Deterministic for a given seed.
ParticleEnsemble sample_ensemble_from_state(const QStochasticState& st,
                                            std::size_t count,
                                            std::uint64_t seed);

double particle_energy(const Particle& pt, int dims, const PotentialSpec& pot,
                       const PhysicalParams& params, double t);

}  // namespace madelab
