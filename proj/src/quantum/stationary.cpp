#include "madelab/quantum/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "madelab/quantum/hamiltonian.hpp"

namespace madelab {

namespace {

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b, double dv) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s * dv;
}

void normalise(std::vector<cplx>& f, double dv) {
  const double n = std::sqrt(std::real(inner(f, f, dv)));
  for (auto& z : f) z /= n;
}

// Gaussian about the minimum of V, width from the local curvature; level 1
// carries a factor (q0 - c0).
std::vector<cplx> initial_guess(const GridSpec& g, const RealField& V,
                                const PhysicalParams& p, int level) {
  const auto it = std::min_element(V.data().begin(), V.data().end());
  const std::size_t imin = it - V.data().begin();
  const auto idx = g.unflatten(imin);
  const Point c = g.node(imin);
  Point width{};
  for (int a = 0; a < g.dims(); ++a) {
    auto at = [&](int d) {
      auto j = idx;
      j[a] = (j[a] + d + g.points(a)) % g.points(a);
      return V[g.flatten(j[0], j[1])];
    };
    const double h = g.spacing(a);
    const double K = (at(1) - 2 * V[imin] + at(-1)) / (h * h);
    width[a] = K > 0.0 ? std::sqrt(p.hbar / std::sqrt(K * p.mass)) : g.extent(a) / 16;
  }
  std::vector<cplx> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point q = g.node(i);
    double r2 = 0.0;
    for (int a = 0; a < g.dims(); ++a) r2 += std::pow((q[a] - c[a]) / width[a], 2);
    f[i] = std::exp(-0.5 * r2) * (level == 1 ? (q[0] - c[0]) / width[0] : 1.0);
  }
  return f;
}

}  // namespace

EigenState stationary_state(const GridSpec& grid, const PotentialSpec& pot,
                            const PhysicalParams& params, int level,
                            const StationaryOptions& opts) {
  params.validate();
  if (level != 0 && level != 1) throw InvalidArgument("stationary_state supports levels 0 and 1");
  if (params.beta != 0.0) throw InvalidArgument("stationary_state needs beta = 0");
  if (pot.has_vector_potential()) throw UnsupportedPotential("stationary_state needs A = 0");
  if (pot.kind() == PotentialKind::Free || pot.kind() == PotentialKind::UniformField)
    throw UnsupportedPotential("stationary_state needs a confining potential, got " +
                               pot.describe());

  std::optional<EigenState> ground;
  if (level == 1) ground = stationary_state(grid, pot, params, 0, opts);

  double h = grid.spacing(0);
  if (grid.dims() == 2) h = std::min(h, grid.spacing(1));
  const double dtau = 0.1 * h * h * params.mass / params.hbar;
  const double dv = grid.cell_volume();
  const RealField V = pot.scalar(grid, 0.0);

  std::vector<cplx> f = initial_guess(grid, V, params, level);
  auto deflate = [&](std::vector<cplx>& x) {
    if (!ground) return;
    const auto& g0 = ground->psi.field.data();
    const cplx c = inner(g0, x, dv);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * g0[i];
  };
  deflate(f);
  normalise(f, dv);

  double residual = 0.0, energy = 0.0;
  for (long it = 0; it <= opts.max_iterations; ++it) {
    const WaveFunction psi(ComplexField(grid, f), params);
    const std::vector<cplx> hf = apply_hamiltonian(psi, pot, false).data();
    energy = std::real(inner(f, hf, dv));
    double r2 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) r2 += std::norm(hf[i] - energy * f[i]);
    residual = std::sqrt(r2 * dv);
    if (residual < opts.tolerance) return {psi, energy, residual, it};
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= dtau / params.hbar * hf[i];
    deflate(f);
    normalise(f, dv);
  }
  throw ConvergenceError("imaginary-time relaxation did not converge after " +
                             std::to_string(opts.max_iterations) + " iterations (residual " +
                             std::to_string(residual) + ")",
                         residual);
}

}  // namespace madelab
