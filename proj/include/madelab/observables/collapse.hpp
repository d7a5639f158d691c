#pragma once

#include <vector>

#include "madelab/bridge/wave_function.hpp"

namespace madelab {

enum class Basis { Position, Momentum };

/// Union of half-open boxes [lo, hi) (1D uses component 0).
struct Window {
  std::vector<std::pair<Point, Point>> boxes;

  static Window interval(double lo, double hi);
  static Window box(Point lo, Point hi);
  bool contains(const Point& x, int dims) const;
};

/// <psi|Pi|psi> for the window projector in the given basis.
double captured_probability(const WaveFunction& psi, const Window& w, Basis basis);

/// Pi psi / sqrt(<psi|Pi|psi>); momentum windows are applied to psi_hat on
/// the conjugate momentum grid and transformed back. Throws ZeroProbability
/// when the captured probability is not above 1e-12.
WaveFunction collapse(const WaveFunction& psi, const Window& w, Basis basis = Basis::Position);

}  // namespace madelab
