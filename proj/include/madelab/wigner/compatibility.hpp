#pragma once

#include <vector>

#include "madelab/bridge/uncertainty.hpp"
#include "madelab/bridge/wave_function.hpp"

namespace madelab {

/// conj(psi(q + hbar xi/2)) psi(q - hbar xi/2) / |psi(q)|^2, the local
/// candidate for <exp(-i xi . grad S)>; 0 on masked nodes. Each component
/// of hbar xi must be a multiple of the grid spacing (so half-shifts land
/// on half-nodes, done spectrally).
struct LocalCharacteristic {
  ComplexField value;
  DensityMask mask;
};
LocalCharacteristic characteristic_local_solution(const WaveFunction& psi, const Point& xi,
                                                  double floor_rel = 1e-12);

/// conj(psi(q + hbar xi/2)) psi(q - hbar xi/2), unnormalised.
ComplexField shifted_product(const WaveFunction& psi, const Point& xi);

enum class CharacteristicModel {
  /// The local solution above.
  Local,
  /// exp(-i xi . grad S_m): S taken as deterministic.
  Deterministic,
};

/// | integral <exp(-i xi . grad S)> |psi|^2 dq - integral conj(psi(q + hbar xi/2)) psi(q - hbar xi/2) dq |
/// for each xi.
std::vector<double> compatibility_residual(const WaveFunction& psi, const std::vector<Point>& xi_set,
                                           CharacteristicModel model, double floor_rel = 1e-12);

/// Second-order xi expansion of the local solution against the assumed moments.
struct XiExpansionReport {
  int dims = 1;
  DensityMask mask;
  /// <d_i S> = (i hbar / 2)(psi d_i psibar - psibar d_i psi) / |psi|^2.
  std::vector<RealField> mean_gradient;
  /// <d_i S d_j S> from the local solution, row major dims x dims.
  std::vector<RealField> second_moment;
  /// second_moment - mean_i mean_j; equals -(hbar^2/4) d_ij ln n.
  std::vector<RealField> local_variance;
  /// second_moment minus the assumed moment tensor built from (n, <grad S>).
  std::vector<RealField> discrepancy;
  /// -(hbar^2/4) d_ij n / n, what the discrepancy should equal at beta = 0.
  std::vector<RealField> extra_term;
  double max_discrepancy = 0.0;
  double max_extra_mismatch = 0.0;
  /// Integral of n * trace(discrepancy).
  double integral_cancellation = 0.0;
  /// Smallest trace of local_variance over unmasked nodes, and whether it
  /// goes negative.
  double min_variance = 0.0;
  bool variance_negative = false;
};
XiExpansionReport xi_expansion_check(const WaveFunction& psi, double floor_rel = 1e-12);

}  // namespace madelab
