#include "madelab/wigner/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "madelab/core/spectral.hpp"

namespace madelab {

namespace {

Point half_offset(const WaveFunction& psi, const Point& xi) {
  const GridSpec& g = psi.grid();
  Point s{};
  for (int a = 0; a < g.dims(); ++a) {
    const double steps = psi.params.hbar * xi[a] / g.spacing(a);
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, std::abs(steps)))
      throw InvalidArgument("hbar xi must be a multiple of the grid spacing on axis " +
                            std::to_string(a));
    s[a] = 0.5 * std::round(steps) * g.spacing(a);
  }
  return s;
}

std::vector<RealField> current_velocity(const WaveFunction& psi, const DensityMask& mask) {
  const GridSpec& g = psi.grid();
  std::vector<RealField> out;
  for (int a = 0; a < g.dims(); ++a) {
    const ComplexField d = spectral::gradient(psi.field, a);
    std::vector<double> v(g.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask.valid[i])
        v[i] = psi.params.hbar * std::imag(std::conj(psi.field[i]) * d[i]) / std::norm(psi.field[i]);
    out.emplace_back(g, std::move(v));
  }
  return out;
}

}  // namespace

ComplexField shifted_product(const WaveFunction& psi, const Point& xi) {
  const Point s = half_offset(psi, xi);
  const ComplexField plus = spectral::shift(psi.field, s);
  const ComplexField minus = spectral::shift(psi.field, {-s[0], -s[1]});
  std::vector<cplx> v(plus.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(plus[i]) * minus[i];
  return ComplexField(psi.grid(), std::move(v));
}

LocalCharacteristic characteristic_local_solution(const WaveFunction& psi, const Point& xi,
                                                  double floor_rel) {
  const RealField n = abs_squared(psi.field);
  DensityMask mask = density_mask(n, floor_rel);
  const ComplexField prod = shifted_product(psi, xi);
  std::vector<cplx> v(n.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mask.valid[i]) v[i] = prod[i] / n[i];
  return {ComplexField(psi.grid(), std::move(v)), std::move(mask)};
}

std::vector<double> compatibility_residual(const WaveFunction& psi, const std::vector<Point>& xi_set,
                                           CharacteristicModel model, double floor_rel) {
  const GridSpec& g = psi.grid();
  const RealField n = abs_squared(psi.field);
  const DensityMask mask = density_mask(n, floor_rel);
  std::vector<RealField> u;
  if (model == CharacteristicModel::Deterministic) u = current_velocity(psi, mask);
  std::vector<double> out;
  for (const Point& xi : xi_set) {
    const ComplexField prod = shifted_product(psi, xi);
    cplx lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      rhs += prod[i];
      if (!mask.valid[i]) continue;
      if (model == CharacteristicModel::Local) {
        lhs += prod[i] / n[i] * n[i];
      } else {
        double phase = 0.0;
        for (int a = 0; a < g.dims(); ++a) phase += xi[a] * u[a][i];
        lhs += std::polar(1.0, -phase) * n[i];
      }
    }
    out.push_back(std::abs(lhs - rhs) * g.cell_volume());
  }
  return out;
}

XiExpansionReport xi_expansion_check(const WaveFunction& psi, double floor_rel) {
  const GridSpec& g = psi.grid();
  const int d = g.dims();
  const double hbar = psi.params.hbar, c = 0.25 * hbar * hbar;
  const RealField n = abs_squared(psi.field);
  XiExpansionReport r;
  r.dims = d;
  r.mask = density_mask(n, floor_rel);
  r.mean_gradient = current_velocity(psi, r.mask);
  const MomentTensor corr = stochastic_moment_correction(n, psi.params, floor_rel);

  std::vector<ComplexField> grad;
  for (int a = 0; a < d; ++a) grad.push_back(spectral::gradient(psi.field, a));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const ComplexField dij = spectral::mixed_derivative(psi.field, i, j);
      const RealField nij = spectral::mixed_derivative(n, i, j);
      std::vector<double> second(g.size(), 0.0), var(g.size(), 0.0), disc(g.size(), 0.0),
          extra(g.size(), 0.0);
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (!r.mask.valid[k]) continue;
        const cplx p = psi.field[k];
        const double num = 2.0 * std::real(std::conj(p) * dij[k]) -
                           2.0 * std::real(std::conj(grad[i][k]) * grad[j][k]);
        const double mi = r.mean_gradient[i][k], mj = r.mean_gradient[j][k];
        second[k] = -c * num / n[k];
        var[k] = second[k] - mi * mj;
        disc[k] = second[k] - (mi * mj + corr(i, j)[k]);
        extra[k] = -c * nij[k] / n[k];
        r.max_discrepancy = std::max(r.max_discrepancy, std::abs(disc[k]));
        if (psi.params.beta == 0.0)
          r.max_extra_mismatch = std::max(r.max_extra_mismatch, std::abs(disc[k] - extra[k]));
      }
      r.second_moment.emplace_back(g, std::move(second));
      r.local_variance.emplace_back(g, std::move(var));
      r.discrepancy.emplace_back(g, std::move(disc));
      r.extra_term.emplace_back(g, std::move(extra));
    }

  RealField trace = r.discrepancy[0];
  RealField var_trace = r.local_variance[0];
  if (d == 2) {
    trace += r.discrepancy[3];
    var_trace += r.local_variance[3];
  }
  r.integral_cancellation = integrate(n * trace);
  r.min_variance = 0.0;
  bool first = true;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!r.mask.valid[k]) continue;
    if (first || var_trace[k] < r.min_variance) r.min_variance = var_trace[k];
    first = false;
  }
  r.variance_negative = r.min_variance < 0.0;
  return r;
}

}  // namespace madelab
