#pragma once

#include <optional>

#include "madelab/bridge/wave_function.hpp"
#include "madelab/classical/states.hpp"

namespace madelab {

/// psi = sqrt(n) exp(i S_m / hbar), evaluated node by node.
WaveFunction madelung_forward(const RealField& n, const ActionField& S_m,
                              const PhysicalParams& params, double time = 0.0);
WaveFunction madelung_forward(const QStochasticState& st, const PhysicalParams& params);

struct MadelungPair {
  RealField n;
  /// hbar times the unwrapped phase; not periodic in general.
  RealField S;
  std::size_t reference_node = 0;
};

/// n = |psi|^2 and S_m = hbar * unwrapped phase, pinned to 0 at the
/// reference node (the density maximum unless given).
///
/// Nodes where |psi|^2 <= node_eps * max|psi|^2 that form a patch not
/// touching the box boundary are interior zeros: NodeError lists them.
/// Sub-threshold tails that reach the boundary are unwrapped through.
/// In 2D a nonzero phase winding around any resolved plaquette raises
/// VortexError.
MadelungPair madelung_inverse(const WaveFunction& psi, double node_eps = 1e-10,
                              std::optional<std::size_t> reference = std::nullopt);

}  // namespace madelab
