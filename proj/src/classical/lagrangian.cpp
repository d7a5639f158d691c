#include "madelab/classical/lagrangian.hpp"

#include "madelab/classical/field_evolution.hpp"

namespace madelab {

RealField lagrangian_density(const QStochasticState& st,
                             const PotentialSpec& pot,
                             const PhysicalParams& params,
                             const RealField& dtS) {
  require_same_grid(st.grid(), dtS.grid(), "lagrangian density");
  return st.n * (dtS + classical_hamiltonian(st, pot, params));
}

RealField hj_time_derivative(const QStochasticState& st,
                             const PotentialSpec& pot,
                             const PhysicalParams& params) {
  return classical_hamiltonian(st, pot, params) * -1.0;
}

RealField stencil_time_derivative(const std::vector<ActionField>& snapshots,
                                  double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  std::vector<RealField> s;
  for (const auto& a : snapshots) s.push_back(a.values());
  if (s.size() == 3) return (s[2] - s[0]) * (1.0 / (2 * dt));
  if (s.size() == 5)
    return (s[0] - s[4] + (s[3] - s[1]) * 8.0) * (1.0 / (12 * dt));
  throw InvalidArgument("time stencil needs 3 or 5 snapshots");
}

}  // namespace madelab
