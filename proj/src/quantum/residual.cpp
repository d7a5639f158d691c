#include "madelab/quantum/residual.hpp"

#include <cmath>

#include "madelab/quantum/hamiltonian.hpp"

namespace madelab {

double nlse_residual(const std::vector<WaveFunction>& history, const PotentialSpec& pot) {
  if (history.size() < 3) throw InvalidArgument("nlse_residual needs at least 3 snapshots");
  const double dt = history[1].time - history[0].time;
  if (!(dt != 0.0)) throw InvalidArgument("nlse_residual: snapshots share a time");
  for (std::size_t k = 1; k < history.size(); ++k) {
    require_same_grid(history[k].grid(), history[0].grid(), "nlse_residual");
    const double step = history[k].time - history[k - 1].time;
    if (std::abs(step - dt) > 1e-9 * std::abs(dt))
      throw InvalidArgument("nlse_residual: snapshots are not equally spaced in time");
  }
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < history.size(); ++k) {
    const auto& psi = history[k];
    const ComplexField h = apply_hamiltonian(psi, pot);
    const cplx c(0.0, psi.params.hbar / (2 * dt));
    std::vector<cplx> r(h.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = c * (history[k + 1].field[i] - history[k - 1].field[i]) - h[i];
    worst = std::max(worst, l2_norm(ComplexField(psi.grid(), std::move(r))));
  }
  return worst;
}

}  // namespace madelab
