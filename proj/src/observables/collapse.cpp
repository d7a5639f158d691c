#include "madelab/observables/collapse.hpp"

#include <cmath>
#include <string>

#include "madelab/core/spectral.hpp"

namespace madelab {

Window Window::interval(double lo, double hi) { return {{{Point{lo, 0.0}, Point{hi, 0.0}}}}; }

Window Window::box(Point lo, Point hi) { return {{{lo, hi}}}; }

bool Window::contains(const Point& x, int dims) const {
  for (const auto& [lo, hi] : boxes) {
    bool in = true;
    for (int a = 0; a < dims; ++a) in = in && x[a] >= lo[a] && x[a] < hi[a];
    if (in) return true;
  }
  return false;
}

namespace {

ComplexField project(const ComplexField& f, const Window& w) {
  const GridSpec& g = f.grid();
  std::vector<cplx> v(f.data());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!w.contains(g.node(i), g.dims())) v[i] = 0.0;
  return ComplexField(g, std::move(v));
}

}  // namespace

double captured_probability(const WaveFunction& psi, const Window& w, Basis basis) {
  if (basis == Basis::Position) return integrate(abs_squared(project(psi.field, w)));
  return integrate(abs_squared(project(to_momentum_space(psi.field, psi.params.hbar), w)));
}

WaveFunction collapse(const WaveFunction& psi, const Window& w, Basis basis) {
  const double hbar = psi.params.hbar;
  ComplexField f = basis == Basis::Position
                       ? project(psi.field, w)
                       : from_momentum_space(project(to_momentum_space(psi.field, hbar), w),
                                             psi.grid(), hbar);
  const double prob = integrate(abs_squared(f));
  if (!(prob > 1e-12))
    throw ZeroProbability("window captures probability " + std::to_string(prob));
  return psi.with_field(f * cplx(1.0 / std::sqrt(prob)));
}

}  // namespace madelab
