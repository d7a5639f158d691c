#pragma once

#include <vector>

#include "madelab/bridge/wave_function.hpp"
#include "madelab/core/potential.hpp"
#include "madelab/observables/observable.hpp"

namespace madelab {

struct MixtureComponent {
  double weight = 0.0;
  WaveFunction psi;
};

/// D = sum_a p_a |psi_a><psi_a|.
struct DensityMatrix {
  std::vector<MixtureComponent> components;

  /// p_a > 0, sum p_a = 1 within 1e-12, each psi_a normalised within 1e-8.
  void validate() const;
  RealField position_density() const;
};

/// Tr(D F) = sum_a p_a <psi_a|F|psi_a>.
double mixture_expectation(const DensityMatrix& D, const PotentialSpec& pot, const Observable& obs);

}  // namespace madelab
