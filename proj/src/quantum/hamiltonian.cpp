#include "madelab/quantum/hamiltonian.hpp"

#include <cmath>

#include "madelab/core/spectral.hpp"

namespace madelab {

ComplexField nonlinear_term(const WaveFunction& psi) {
  const auto& p = psi.params;
  const double c = 5.0 * p.beta * p.beta * p.hbar * p.hbar / (24.0 * p.mass);
  return psi.field.map([c](const cplx& z) { return c * std::pow(std::norm(z), 2.0 / 3.0) * z; });
}

double nonlinear_energy(const WaveFunction& psi) {
  const auto& p = psi.params;
  const double c = p.beta * p.beta * p.hbar * p.hbar / (8.0 * p.mass);
  return c * integrate(abs_squared(psi.field).map([](double r) { return std::pow(r, 5.0 / 3.0); }));
}

cplx nonlinear_energy_gradient_fd(const WaveFunction& psi, std::size_t node, double eps) {
  const double step = eps * std::max(std::abs(psi.field.data().at(node)), 1.0e-300);
  // E(psi + d) - E(psi - d) as an integral of density differences, so the
  // untouched nodes cancel exactly instead of through two large sums.
  auto difference = [&](cplx delta) {
    std::vector<cplx> up(psi.field.data()), down(psi.field.data());
    up[node] += delta;
    down[node] -= delta;
    const auto& p = psi.params;
    const double c = p.beta * p.beta * p.hbar * p.hbar / (8.0 * p.mass);
    const RealField a = abs_squared(ComplexField(psi.grid(), std::move(up)));
    const RealField b = abs_squared(ComplexField(psi.grid(), std::move(down)));
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = c * (std::pow(a[i], 5.0 / 3.0) - std::pow(b[i], 5.0 / 3.0));
    return integrate(RealField(psi.grid(), std::move(d)));
  };
  const double dx = difference(step) / (2 * step);
  const double dy = difference(cplx(0, step)) / (2 * step);
  return 0.5 * cplx(dx, dy) / psi.grid().cell_volume();
}

ComplexField apply_hamiltonian(const WaveFunction& psi, const PotentialSpec& pot,
                               bool nonlinear) {
  const GridSpec& g = psi.grid();
  const auto& pr = psi.params;
  const double hbar = pr.hbar, m = pr.mass, e = pr.charge;
  const RealField V = pot.scalar(g, psi.time);
  std::vector<cplx> h(spectral::laplacian(psi.field).data());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] *= -hbar * hbar / (2 * m);
  if (pot.has_vector_potential()) {
    const auto A = pot.vector(g, psi.time);
    for (int a = 0; a < g.dims(); ++a) {
      std::vector<cplx> ap(g.size());
      for (std::size_t i = 0; i < ap.size(); ++i) ap[i] = A[a][i] * psi.field[i];
      const ComplexField d_ap = spectral::gradient(ComplexField(g, std::move(ap)), a);
      const ComplexField d_psi = spectral::gradient(psi.field, a);
      const cplx c(0.0, hbar * e / (2 * m));
      for (std::size_t i = 0; i < h.size(); ++i)
        h[i] += c * (d_ap[i] + A[a][i] * d_psi[i]) +
                e * e * A[a][i] * A[a][i] / (2 * m) * psi.field[i];
    }
  }
  for (std::size_t i = 0; i < h.size(); ++i) h[i] += V[i] * psi.field[i];
  if (nonlinear && pr.beta > 0.0) {
    const ComplexField nl = nonlinear_term(psi);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += nl[i];
  }
  return ComplexField(g, std::move(h));
}

double energy_functional(const WaveFunction& psi, const PotentialSpec& pot) {
  const GridSpec& g = psi.grid();
  const auto& pr = psi.params;
  const auto A = pot.vector(g, psi.time);
  const RealField V = pot.scalar(g, psi.time);
  std::vector<double> dens(g.size(), 0.0);
  for (int a = 0; a < g.dims(); ++a) {
    const ComplexField d = spectral::gradient(psi.field, a);
    for (std::size_t i = 0; i < dens.size(); ++i)
      dens[i] += std::norm(d[i] - cplx(0.0, pr.charge / pr.hbar * A[a][i]) * psi.field[i]);
  }
  for (std::size_t i = 0; i < dens.size(); ++i)
    dens[i] = pr.hbar * pr.hbar / (2 * pr.mass) * dens[i] + V[i] * std::norm(psi.field[i]);
  return integrate(RealField(g, std::move(dens))) + nonlinear_energy(psi);
}

double rayleigh_quotient(const WaveFunction& psi, const PotentialSpec& pot) {
  const ComplexField h = apply_hamiltonian(psi, pot, false);
  cplx num = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) num += std::conj(psi.field[i]) * h[i];
  return std::real(num) * psi.grid().cell_volume() / psi.norm_squared();
}

}  // namespace madelab
