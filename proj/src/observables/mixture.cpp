#include "madelab/observables/mixture.hpp"

#include <cmath>
#include <string>

#include "madelab/observables/expectation.hpp"

namespace madelab {

void DensityMatrix::validate() const {
  if (components.empty()) throw InvalidArgument("density matrix has no components");
  double total = 0.0;
  for (std::size_t a = 0; a < components.size(); ++a) {
    const auto& c = components[a];
    if (!(c.weight > 0.0))
      throw InvalidArgument("mixture weight " + std::to_string(a) + " is not positive");
    require_same_grid(c.psi.grid(), components.front().psi.grid(), "density matrix");
    c.psi.require_normalized();
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidArgument("mixture weights sum to " + std::to_string(total));
}

RealField DensityMatrix::position_density() const {
  validate();
  RealField rho = RealField::zeros(components.front().psi.grid());
  for (const auto& c : components) rho += abs_squared(c.psi.field) * c.weight;
  return rho;
}

double mixture_expectation(const DensityMatrix& D, const PotentialSpec& pot, const Observable& obs) {
  D.validate();
  double s = 0.0;
  for (const auto& c : D.components) s += c.weight * expect_quantum(c.psi, pot, obs);
  return s;
}

}  // namespace madelab
