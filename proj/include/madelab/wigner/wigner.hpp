#pragma once

#include <vector>

#include "madelab/bridge/wave_function.hpp"

namespace madelab {

/// W(p, q) on the product of a 1D position grid and its conjugate momentum
/// grid; samples are row major with q slowest.
struct WignerField {
  GridSpec q_grid;
  GridSpec p_grid;
  std::vector<double> values;
  PhysicalParams params;
  /// Largest |Im W| dropped when the transform was made real.
  double discarded_imaginary = 0.0;

  double at(int iq, int ip) const { return values[static_cast<std::size_t>(iq) * p_grid.points(0) + ip]; }
  /// Integral over p at each q, and over q at each p.
  RealField position_marginal() const;
  RealField momentum_marginal() const;
  double total() const;
  double min() const;
  /// W at the nodes nearest to (q, p).
  double nearest(double q, double p) const;
};

/// W(p, q) = (2 pi hbar)^-1 integral exp(i p x / hbar) conj(psi(q + x/2)) psi(q - x/2) dx
/// with x on the grid spacing and half-shifts done spectrally. 1D only.
WignerField wigner_transform(const WaveFunction& psi);

}  // namespace madelab
