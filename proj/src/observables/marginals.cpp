#include "madelab/observables/marginals.hpp"

#include <cmath>
#include <string>

#include "madelab/core/spectral.hpp"

namespace madelab {

MarginalPair marginals_classical(const QStochasticState& st, const GridSpec& p_grid) {
  const GridSpec& g = st.grid();
  if (p_grid.dims() != g.dims()) throw InvalidArgument("p-grid dimension differs from the state's");
  const auto grad = st.S.gradient();
  std::vector<double> nu(p_grid.size(), 0.0);
  double overflow = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double mass = st.n[i] * g.cell_volume();
    std::array<int, 2> bin{0, 0};
    bool inside = true;
    for (int a = 0; a < g.dims(); ++a) {
      const long b = std::lround((grad[a][i] - p_grid.origin(a)) / p_grid.spacing(a));
      if (b < 0 || b >= p_grid.points(a)) inside = false;
      bin[a] = static_cast<int>(b);
    }
    if (inside)
      nu[p_grid.flatten(bin[0], bin[1])] += mass;
    else
      overflow += mass;
  }
  if (overflow > 1e-14)
    throw MarginalOverflow("grad S leaves the momentum grid carrying mass " +
                               std::to_string(overflow),
                           overflow);
  for (auto& v : nu) v /= p_grid.cell_volume();
  return {st.n, RealField(p_grid, std::move(nu))};
}

MarginalPair marginals_quantum(const WaveFunction& psi) {
  return {abs_squared(psi.field), abs_squared(to_momentum_space(psi.field, psi.params.hbar))};
}

}  // namespace madelab
