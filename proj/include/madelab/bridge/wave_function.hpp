#pragma once

#include "madelab/core/field.hpp"
#include "madelab/core/params.hpp"

namespace madelab {

/// psi on a position grid together with the hbar of its phase convention.
struct WaveFunction {
  ComplexField field;
  PhysicalParams params;
  double time = 0.0;

  WaveFunction(ComplexField f, PhysicalParams p, double t = 0.0);
  const GridSpec& grid() const { return field.grid(); }
  double norm_squared() const;
  /// Throws InvalidArgument unless |norm^2 - 1| <= tol.
  void require_normalized(double tol = 1e-8) const;
  WaveFunction normalized() const;
  WaveFunction with_field(ComplexField f) const { return {std::move(f), params, time}; }
};

/// Normalised Gaussian packet sqrt(n) exp(i p0.q / hbar), width sigma in n.
WaveFunction gaussian_packet(const GridSpec& grid, const PhysicalParams& params,
                             const Point& q0, const Point& p0, double sigma);

}  // namespace madelab
