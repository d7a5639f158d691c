#include "madelab/classical/action_field.hpp"

#include <cmath>

#include "madelab/core/interpolation.hpp"
#include "madelab/core/spectral.hpp"

namespace madelab {

ActionField::ActionField(RealField residual, QuadraticBackground bg)
    : residual_(std::move(residual)), bg_(bg) {
  for (int a = residual_.grid().dims(); a < 2; ++a) {
    bg_.b1[a] = 0.0;
    bg_.b2[a] = 0.0;
  }
  if (!std::isfinite(bg_.b0))
    throw InvalidField("action background must be finite");
  for (int a = 0; a < 2; ++a)
    if (!std::isfinite(bg_.b1[a]) || !std::isfinite(bg_.b2[a]))
      throw InvalidField("action background must be finite");
}

ActionField ActionField::zero(const GridSpec& grid) {
  return ActionField(RealField::zeros(grid));
}

ActionField ActionField::polynomial(const GridSpec& grid, double c0,
                                    Point linear, Point curvature) {
  QuadraticBackground bg;
  bg.b0 = c0;
  for (int a = 0; a < grid.dims(); ++a) {
    const double c = grid.center(a);
    bg.b0 += linear[a] * c + 0.5 * curvature[a] * c * c;
    bg.b1[a] = linear[a] + curvature[a] * c;
    bg.b2[a] = curvature[a];
  }
  return ActionField(RealField::zeros(grid), bg);
}

Point ActionField::center() const {
  Point c{};
  for (int a = 0; a < grid().dims(); ++a) c[a] = grid().center(a);
  return c;
}

namespace {

double background_value(const QuadraticBackground& bg, const Point& d) {
  double v = bg.b0;
  for (int a = 0; a < 2; ++a) v += bg.b1[a] * d[a] + 0.5 * bg.b2[a] * d[a] * d[a];
  return v;
}

}  // namespace

RealField ActionField::values() const {
  const Point c = center();
  const int dims = grid().dims();
  std::vector<double> v(residual_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point q = grid().node(i);
    Point d{};
    for (int a = 0; a < dims; ++a) d[a] = q[a] - c[a];
    v[i] = background_value(bg_, d) + residual_[i];
  }
  return RealField(grid(), std::move(v));
}

double ActionField::value_at(const Point& q) const {
  const Point c = center();
  Point d{};
  for (int a = 0; a < grid().dims(); ++a) d[a] = q[a] - c[a];
  return background_value(bg_, d) + interpolate(residual_, q);
}

RealField ActionField::gradient(int axis) const {
  const double c = grid().center(axis);
  RealField g = spectral::gradient(residual_, axis);
  std::vector<double> v(g.data());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] += bg_.b1[axis] + bg_.b2[axis] * (grid().node(i)[axis] - c);
  return RealField(grid(), std::move(v));
}

std::vector<RealField> ActionField::gradient() const {
  std::vector<RealField> out;
  for (int a = 0; a < grid().dims(); ++a) out.push_back(gradient(a));
  return out;
}

Point ActionField::gradient_at(const Point& q) const {
  return ActionGradientSampler(*this)(q);
}

ActionGradientSampler::ActionGradientSampler(const ActionField& s)
    : bg_(s.background()),
      center_(s.center()),
      residual_gradient_(spectral::gradient(s.residual())) {}

Point ActionGradientSampler::operator()(const Point& q) const {
  Point g{};
  for (std::size_t a = 0; a < residual_gradient_.size(); ++a)
    g[a] = bg_.b1[a] + bg_.b2[a] * (q[a] - center_[a]) +
           interpolate(residual_gradient_[a], q);
  return g;
}

RealField ActionField::second_derivative(int a, int b) const {
  RealField d = spectral::mixed_derivative(residual_, a, b);
  if (a == b) d += RealField::constant(grid(), bg_.b2[a]);
  return d;
}

double ActionField::max_curvature() const {
  double m = 0.0;
  for (int a = 0; a < grid().dims(); ++a)
    for (int b = a; b < grid().dims(); ++b)
      m = std::max(m, max_abs(second_derivative(a, b)));
  return m;
}

ActionField ActionField::plus_constant(double c) const {
  QuadraticBackground bg = bg_;
  bg.b0 += c;
  return ActionField(residual_, bg);
}

ActionField ActionField::plus_periodic(const RealField& f) const {
  return ActionField(residual_ + f, bg_);
}

ActionField ActionField::pinned(std::size_t node, double value) const {
  if (node >= residual_.size())
    throw InvalidArgument("reference node out of range");
  return plus_constant(value - values()[node]);
}

}  // namespace madelab
