#include "madelab/core/interpolation.hpp"

#include <cmath>

namespace madelab {

namespace {

constexpr int kStencil = 6;

struct Stencil {
  int first;
  double weight[kStencil];
};

// Nodes first..first+5 around x (in units of the spacing from the origin).
Stencil make_stencil(double x) {
  Stencil s{};
  const double base = std::floor(x);
  s.first = static_cast<int>(base) - 2;
  const double t = x - base;  // in [0, 1)
  for (int i = 0; i < kStencil; ++i) {
    const double xi = i - 2;
    double w = 1.0;
    for (int j = 0; j < kStencil; ++j)
      if (j != i) w *= (t - (j - 2)) / (xi - (j - 2));
    s.weight[i] = w;
  }
  return s;
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

double interpolate(const RealField& f, const Point& q) {
  const GridSpec& g = f.grid();
  const Stencil s0 = make_stencil((q[0] - g.origin(0)) / g.spacing(0));
  if (g.dims() == 1) {
    double v = 0.0;
    for (int i = 0; i < kStencil; ++i)
      v += s0.weight[i] * f[wrap(s0.first + i, g.points(0))];
    return v;
  }
  const Stencil s1 = make_stencil((q[1] - g.origin(1)) / g.spacing(1));
  double v = 0.0;
  for (int i = 0; i < kStencil; ++i) {
    const int i0 = wrap(s0.first + i, g.points(0));
    double row = 0.0;
    for (int j = 0; j < kStencil; ++j)
      row += s1.weight[j] * f[g.flatten(i0, wrap(s1.first + j, g.points(1)))];
    v += s0.weight[i] * row;
  }
  return v;
}

}  // namespace madelab
