#pragma once

#include "madelab/bridge/wave_function.hpp"
#include "madelab/classical/states.hpp"

namespace madelab {

struct MarginalPair {
  RealField mu;
  RealField nu;
};

/// mu = n; nu = n pushed forward by q -> grad S, deposited on the nearest
/// p-grid node (mass conserving). Mass landing off the p-grid above
/// 1e-14 throws MarginalOverflow.
MarginalPair marginals_classical(const QStochasticState& st, const GridSpec& p_grid);

/// mu = |psi|^2, nu = |psi_hat|^2 on the conjugate momentum grid.
MarginalPair marginals_quantum(const WaveFunction& psi);

}  // namespace madelab
