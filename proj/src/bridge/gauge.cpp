#include "madelab/bridge/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace madelab {

void require_periodic_gauge(const GaugeFunction& phi, const GridSpec& grid, double t) {
  double scale = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    scale = std::max(scale, std::abs(phi.value(grid.node(i), t)));
  const double tol = 1e-9 * scale;
  for (int a = 0; a < grid.dims(); ++a) {
    const int other = grid.dims() == 2 ? 1 - a : a;
    const int samples = grid.dims() == 2 ? grid.points(other) : 1;
    for (int j = 0; j < samples; ++j) {
      Point lo{}, hi{};
      if (grid.dims() == 2) lo[other] = hi[other] = grid.coord(other, j);
      lo[a] = grid.origin(a);
      hi[a] = grid.origin(a) + grid.extent(a);
      const double dv = std::abs(phi.value(hi, t) - phi.value(lo, t));
      const Point gl = phi.gradient(lo, t), gh = phi.gradient(hi, t);
      const double dg = std::max(std::abs(gh[0] - gl[0]), std::abs(gh[1] - gl[1]));
      if (dv > tol || dg > tol * grid.points(a) / grid.extent(a))
        throw InvalidArgument("gauge function " + phi.label +
                              " is not periodic on the box along axis " + std::to_string(a));
    }
  }
}

Gauged<QStochasticState> gauge_transform(const QStochasticState& st, const PotentialSpec& pot,
                                         const GaugeFunction& phi, const PhysicalParams& params) {
  params.validate();
  const GridSpec& g = st.grid();
  require_periodic_gauge(phi, g, st.time);
  const RealField shift = RealField::sample(
      g, [&](const Point& q) { return params.charge * phi.value(q, st.time); });
  return {QStochasticState(st.n, st.S.plus_periodic(shift), st.time),
          pot.with_gauge(phi, params.charge)};
}

Gauged<WaveFunction> gauge_transform(const WaveFunction& psi, const PotentialSpec& pot,
                                     const GaugeFunction& phi) {
  const GridSpec& g = psi.grid();
  require_periodic_gauge(phi, g, psi.time);
  const double k = psi.params.charge / psi.params.hbar;
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = psi.field[i] * std::polar(1.0, k * phi.value(g.node(i), psi.time));
  return {psi.with_field(ComplexField(g, std::move(v))), pot.with_gauge(phi, psi.params.charge)};
}

RealField gauge_transform_rate(const RealField& dtS, const GaugeFunction& phi,
                               const PhysicalParams& params, double t) {
  const GridSpec& g = dtS.grid();
  std::vector<double> v(dtS.data());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += params.charge * phi.rate(g.node(i), t);
  return RealField(g, std::move(v));
}

}  // namespace madelab
