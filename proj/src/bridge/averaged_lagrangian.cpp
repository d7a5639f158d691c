#include "madelab/bridge/averaged_lagrangian.hpp"

#include <cmath>

#include "madelab/bridge/uncertainty.hpp"
#include "madelab/core/spectral.hpp"

namespace madelab {

RealField averaged_lagrangian(const RealField& n, const ActionField& S_m,
                              const PotentialSpec& pot, const PhysicalParams& params,
                              const RealField& dtS_m, double t) {
  const GridSpec& g = n.grid();
  require_same_grid(g, S_m.grid(), "averaged_lagrangian");
  require_same_grid(g, dtS_m.grid(), "averaged_lagrangian");
  const auto grad = S_m.gradient();
  const auto A = pot.vector(g, t);
  const RealField V = pot.scalar(g, t);
  const RealField sigma2 = sigma_squared(n, params).value;
  const double m = params.mass, e = params.charge;
  std::vector<double> L(g.size());
  for (std::size_t i = 0; i < L.size(); ++i) {
    double k2 = 0.0;
    for (int a = 0; a < g.dims(); ++a) {
      const double k = grad[a][i] - e * A[a][i];
      k2 += k * k;
    }
    L[i] = n[i] * (dtS_m[i] + k2 / (2 * m) + sigma2[i] / (2 * m) + V[i]);
  }
  return RealField(g, std::move(L));
}

RealField averaged_lagrangian_psi(const WaveFunction& psi, const ComplexField& dt_psi,
                                  const PotentialSpec& pot) {
  const GridSpec& g = psi.grid();
  require_same_grid(g, dt_psi.grid(), "averaged_lagrangian_psi");
  const auto& pr = psi.params;
  const double hbar = pr.hbar, m = pr.mass;
  const auto A = pot.vector(g, psi.time);
  const RealField V = pot.scalar(g, psi.time);
  std::vector<ComplexField> grad;
  for (int a = 0; a < g.dims(); ++a) grad.push_back(spectral::gradient(psi.field, a));
  std::vector<double> L(g.size());
  for (std::size_t i = 0; i < L.size(); ++i) {
    const cplx p = psi.field[i];
    const double rho = std::norm(p);
    double d2 = 0.0;
    for (int a = 0; a < g.dims(); ++a)
      d2 += std::norm(grad[a][i] - cplx(0.0, pr.charge / hbar * A[a][i]) * p);
    L[i] = hbar * std::imag(std::conj(p) * dt_psi[i]) + hbar * hbar / (2 * m) * d2 +
           pr.beta * pr.beta * hbar * hbar / (8 * m) * std::pow(rho, 5.0 / 3.0) + V[i] * rho;
  }
  return RealField(g, std::move(L));
}

ComplexField madelung_time_derivative(const WaveFunction& psi, const RealField& dtn,
                                      const RealField& dtS) {
  std::vector<cplx> v(psi.field.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double rho = std::norm(psi.field[i]);
    const double growth = rho > 0.0 ? 0.5 * dtn[i] / rho : 0.0;
    v[i] = psi.field[i] * cplx(growth, dtS[i] / psi.params.hbar);
  }
  return ComplexField(psi.grid(), std::move(v));
}

}  // namespace madelab
