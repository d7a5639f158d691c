#include "madelab/classical/hamilton_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace madelab::hj {

void FieldState::axpy(double a, const FieldState& x) {
  bg.b0 += a * x.bg.b0;
  for (int i = 0; i < 2; ++i) {
    bg.b1[i] += a * x.bg.b1[i];
    bg.b2[i] += a * x.bg.b2[i];
  }
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += a * x.s[i];
  for (std::size_t i = 0; i < n.size(); ++i) n[i] += a * x.n[i];
  for (std::size_t i = 0; i < tracers.size(); ++i) {
    tracers[i][0] += a * x.tracers[i][0];
    tracers[i][1] += a * x.tracers[i][1];
  }
}

FieldState rk4_step(const FieldState& y, double t, double dt, const Rhs& f) {
  const FieldState k1 = f(y, t);
  FieldState y2 = y;
  y2.axpy(0.5 * dt, k1);
  const FieldState k2 = f(y2, t + 0.5 * dt);
  FieldState y3 = y;
  y3.axpy(0.5 * dt, k2);
  const FieldState k3 = f(y3, t + 0.5 * dt);
  FieldState y4 = y;
  y4.axpy(dt, k3);
  const FieldState k4 = f(y4, t + dt);
  FieldState out = y;
  out.axpy(dt / 6.0, k1);
  out.axpy(dt / 3.0, k2);
  out.axpy(dt / 3.0, k3);
  out.axpy(dt / 6.0, k4);
  return out;
}

FieldState pack(const RealField& n, const ActionField& S,
                std::vector<Point> tracers) {
  require_same_grid(n.grid(), S.grid(), "field state");
  return {S.background(), S.residual().data(), n.data(), std::move(tracers)};
}

RealField unpack_density(const GridSpec& grid, const FieldState& y) {
  return RealField(grid, y.n);
}

ActionField unpack_action(const GridSpec& grid, const FieldState& y) {
  return ActionField(RealField(grid, y.s), y.bg);
}

std::vector<double> tapered_offset(const GridSpec& grid, int axis) {
  const double half = 0.5 * grid.extent(axis);
  auto bump = [](double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; };
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d = grid.node(i)[axis] - grid.center(axis);
    const double x = (std::abs(d) / half - 0.7) / 0.3;  // 0 at 70%, 1 at the edge
    double w = 1.0;
    if (x >= 1.0)
      w = 0.0;
    else if (x > 0.0)
      w = bump(1.0 - x) / (bump(1.0 - x) + bump(x));
    out[i] = d * w;
  }
  return out;
}

void check_caustic(const GridSpec& grid, const FieldState& y, double t) {
  double min_n = 0.0;
  std::size_t where = 0;
  for (std::size_t i = 0; i < y.n.size(); ++i) {
    if (!std::isfinite(y.n[i]) || !std::isfinite(y.s[i]))
      throw CausticError(t, "non-finite field at node " + std::to_string(i));
    if (y.n[i] < min_n) {
      min_n = y.n[i];
      where = i;
    }
  }
  if (min_n < -1e-8)
    throw CausticError(t, "density " + std::to_string(min_n) + " at node " +
                              std::to_string(where));
  double h = grid.spacing(0);
  if (grid.dims() == 2) h = std::min(h, grid.spacing(1));
  const double curvature = unpack_action(grid, y).max_curvature();
  if (curvature > 1e3 / h)
    throw CausticError(t, "action curvature " + std::to_string(curvature) +
                              " exceeds 1e3/spacing");
}

}  // namespace madelab::hj
