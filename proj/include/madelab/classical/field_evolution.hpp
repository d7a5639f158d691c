#pragma once

#include <functional>
#include <vector>

#include "madelab/classical/states.hpp"
#include "madelab/core/params.hpp"
#include "madelab/core/potential.hpp"

namespace madelab {

using QStateObserver = std::function<void(const QStochasticState&, int step)>;

/// Integrates the continuity and Hamilton-Jacobi equations
///   d_t n = -div(n (grad S - eA)/m),  d_t S = -H(grad S, q, t)
/// with RK4 in time and spectral derivatives. S keeps its true additive
/// constant. The observer, if given, sees the state after every step.
/// Throws CausticError when the caustic policy trips.
QStochasticState evolve_q_state(const QStochasticState& st,
                                const PotentialSpec& pot,
                                const PhysicalParams& params, double dt,
                                int steps, const QStateObserver& observer = {});

/// H(grad S, q, t) at every node.
RealField classical_hamiltonian(const QStochasticState& st,
                                const PotentialSpec& pot,
                                const PhysicalParams& params);

/// Integrates dq/dt = (grad S(q, t) - eA)/m for each start alongside the
/// field solve. Samples are stored every step with p = grad S(q(t), t).
TrajectoryBundle classical_trajectories(const QStochasticState& st,
                                        const std::vector<Point>& starts,
                                        const PotentialSpec& pot,
                                        const PhysicalParams& params,
                                        double T, double dt);

}  // namespace madelab
