#include "madelab/bridge/wave_function.hpp"

#include <cmath>
#include <string>

#include "madelab/classical/states.hpp"

namespace madelab {

WaveFunction::WaveFunction(ComplexField f, PhysicalParams p, double t)
    : field(std::move(f)), params(p), time(t) {
  params.validate();
}

double WaveFunction::norm_squared() const { return integrate(abs_squared(field)); }

void WaveFunction::require_normalized(double tol) const {
  const double n2 = norm_squared();
  if (std::abs(n2 - 1.0) > tol)
    throw InvalidArgument("wave function has norm^2 " + std::to_string(n2) +
                          ", expected 1");
}

WaveFunction WaveFunction::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw InvalidArgument("cannot normalise a zero wave function");
  return with_field(field * cplx(1.0 / std::sqrt(n2)));
}

WaveFunction gaussian_packet(const GridSpec& grid, const PhysicalParams& params,
                             const Point& q0, const Point& p0, double sigma) {
  const RealField n = gaussian_density(grid, q0, sigma);
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point q = grid.node(i);
    double phase = 0.0;
    for (int a = 0; a < grid.dims(); ++a) phase += p0[a] * q[a];
    v[i] = std::sqrt(n[i]) * std::polar(1.0, phase / params.hbar);
  }
  return WaveFunction(ComplexField(grid, std::move(v)), params);
}

}  // namespace madelab
