#pragma once

#include <vector>

#include "madelab/core/field.hpp"

namespace madelab {

/// b0 + sum_a b1[a] d_a + 1/2 sum_a b2[a] d_a^2 with d = q - grid centre.
struct QuadraticBackground {
  double b0 = 0.0;
  Point b1{};
  Point b2{};
};

/// An action field S on a periodic grid.
///
/// Physically relevant actions (p0 q, a q^2/2, ...) are not periodic, so S
/// is held as an analytic quadratic background about the grid centre plus a
/// periodic residual sampled on the grid. Derivatives of the background are
/// exact; the residual is differentiated spectrally.
class ActionField {
 public:
  explicit ActionField(RealField residual, QuadraticBackground bg = {});
  static ActionField zero(const GridSpec& grid);
  /// S = c0 + linear . q + 1/2 sum_a curvature[a] q_a^2 in absolute
  /// coordinates.
  static ActionField polynomial(const GridSpec& grid, double c0, Point linear,
                                Point curvature = {});

  const GridSpec& grid() const { return residual_.grid(); }
  const RealField& residual() const { return residual_; }
  const QuadraticBackground& background() const { return bg_; }
  Point center() const;

  RealField values() const;
  double value_at(const Point& q) const;
  RealField gradient(int axis) const;
  std::vector<RealField> gradient() const;
  Point gradient_at(const Point& q) const;
  RealField second_derivative(int a, int b) const;
  /// max over nodes and axis pairs of |d^2 S / dq_a dq_b|.
  double max_curvature() const;

  ActionField plus_constant(double c) const;
  ActionField plus_periodic(const RealField& f) const;
  /// Same field with the additive constant chosen so that S(node) = value.
  ActionField pinned(std::size_t node, double value = 0.0) const;

 private:
  RealField residual_;
  QuadraticBackground bg_;
};

/// Pointwise evaluation of grad S with the residual gradient precomputed.
class ActionGradientSampler {
 public:
  explicit ActionGradientSampler(const ActionField& s);
  Point operator()(const Point& q) const;

 private:
  QuadraticBackground bg_;
  Point center_;
  std::vector<RealField> residual_gradient_;
};

}  // namespace madelab
