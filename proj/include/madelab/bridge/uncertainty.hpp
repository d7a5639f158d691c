#pragma once

#include <vector>

#include "madelab/classical/action_field.hpp"
#include "madelab/core/params.hpp"

namespace madelab {

/// Nodes where n exceeds floor_rel * max(n), and the share of the
/// probability mass they carry.
struct DensityMask {
  std::vector<char> valid;
  double coverage = 0.0;
  std::size_t masked = 0;
};
DensityMask density_mask(const RealField& n, double floor_rel = 1e-12);

/// grad n / n per axis, computed as 2 grad sqrt(n) / sqrt(n); 0 where masked.
std::vector<RealField> log_derivative(const RealField& n, const DensityMask& mask);

struct SigmaSquared {
  RealField value;
  DensityMask mask;
};

/// Sigma^2 = hbar^2/4 [ |grad n / n|^2 + beta^2 n^(2/3) ], masked to 0 below
/// the density floor.
SigmaSquared sigma_squared(const RealField& n, const PhysicalParams& params,
                           double floor_rel = 1e-12);

/// <d_i S d_j S> = d_i S_m d_j S_m + hbar^2/4 [ d_i n d_j n / n^2
///                 + 1/3 delta_ij beta^2 n^(2/3) ].
/// The 1/3 is kept in every dimension, so the trace reproduces Sigma^2 only
/// up to (dims/3 - 1) beta^2 hbar^2 n^(2/3) / 4.
struct MomentTensor {
  int dims = 1;
  /// Row-major dims x dims components.
  std::vector<RealField> c;
  const RealField& operator()(int i, int j) const { return c[i * dims + j]; }
  RealField trace() const;
};
MomentTensor second_moment_tensor(const RealField& n, const ActionField& S_m,
                                  const PhysicalParams& params, double floor_rel = 1e-12);
/// The hbar^2/4 [...] part alone (S_m-independent).
MomentTensor stochastic_moment_correction(const RealField& n, const PhysicalParams& params,
                                          double floor_rel = 1e-12);

}  // namespace madelab
