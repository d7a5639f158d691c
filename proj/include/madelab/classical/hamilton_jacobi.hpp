#pragma once

#include <functional>
#include <vector>

#include "madelab/classical/states.hpp"

namespace madelab::hj {

/// Flattened (bg, s_residual, n, tracers) state of a field solve; the
/// vector-space operations RK4 needs.
struct FieldState {
  QuadraticBackground bg;
  std::vector<double> s;
  std::vector<double> n;
  std::vector<Point> tracers;

  void axpy(double a, const FieldState& x);
};

using Rhs = std::function<FieldState(const FieldState&, double)>;

/// One classical fourth-order Runge-Kutta step.
FieldState rk4_step(const FieldState& y, double t, double dt, const Rhs& f);

FieldState pack(const RealField& n, const ActionField& S,
                std::vector<Point> tracers = {});
RealField unpack_density(const GridSpec& grid, const FieldState& y);
ActionField unpack_action(const GridSpec& grid, const FieldState& y);

/// q_axis - centre, rolled smoothly to 0 over the outer 15% of the box on
/// each side so that products with periodic fields stay periodic. The
/// residual equations use it in place of the raw offset (the density flux
/// keeps the raw one); physics is only
/// claimed where the density lives, well inside the box.
std::vector<double> tapered_offset(const GridSpec& grid, int axis);

/// Caustic policy: min n < -1e-8 or max |d^2 S| > 1e3 / spacing.
/// Throws CausticError stamped with `t`.
void check_caustic(const GridSpec& grid, const FieldState& y, double t);

}  // namespace madelab::hj
