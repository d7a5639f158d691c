#include "madelab/bridge/uncertainty.hpp"

#include <cmath>

#include "madelab/core/spectral.hpp"

namespace madelab {

DensityMask density_mask(const RealField& n, double floor_rel) {
  DensityMask m;
  m.valid.assign(n.size(), 0);
  const double floor = floor_rel * max_abs(n);
  double kept = 0.0, total = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    total += n[i];
    if (n[i] > floor) {
      m.valid[i] = 1;
      kept += n[i];
    } else {
      ++m.masked;
    }
  }
  m.coverage = total > 0.0 ? kept / total : 0.0;
  return m;
}

std::vector<RealField> log_derivative(const RealField& n, const DensityMask& mask) {
  const RealField r = n.map([](double x) { return std::sqrt(std::max(x, 0.0)); });
  std::vector<RealField> out;
  for (int a = 0; a < n.grid().dims(); ++a) {
    const RealField g = spectral::gradient(r, a);
    std::vector<double> v(n.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask.valid[i]) v[i] = 2.0 * g[i] / r[i];
    out.emplace_back(n.grid(), std::move(v));
  }
  return out;
}

SigmaSquared sigma_squared(const RealField& n, const PhysicalParams& params,
                           double floor_rel) {
  params.validate();
  DensityMask mask = density_mask(n, floor_rel);
  const auto L = log_derivative(n, mask);
  const double c = 0.25 * params.hbar * params.hbar;
  const double b2 = params.beta * params.beta;
  std::vector<double> v(n.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!mask.valid[i]) continue;
    double s = b2 * std::cbrt(n[i] * n[i]);
    for (const auto& l : L) s += l[i] * l[i];
    v[i] = c * s;
  }
  return {RealField(n.grid(), std::move(v)), std::move(mask)};
}

RealField MomentTensor::trace() const {
  RealField t = c[0];
  if (dims == 2) t += c[3];
  return t;
}

MomentTensor stochastic_moment_correction(const RealField& n, const PhysicalParams& params,
                                          double floor_rel) {
  params.validate();
  const GridSpec& g = n.grid();
  const DensityMask mask = density_mask(n, floor_rel);
  const auto L = log_derivative(n, mask);
  const double c = 0.25 * params.hbar * params.hbar;
  const double b2 = params.beta * params.beta;
  MomentTensor t;
  t.dims = g.dims();
  for (int i = 0; i < t.dims; ++i)
    for (int j = 0; j < t.dims; ++j) {
      std::vector<double> v(n.size(), 0.0);
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!mask.valid[k]) continue;
        v[k] = L[i][k] * L[j][k];
        if (i == j) v[k] += b2 * std::cbrt(n[k] * n[k]) / 3.0;
        v[k] *= c;
      }
      t.c.emplace_back(g, std::move(v));
    }
  return t;
}

MomentTensor second_moment_tensor(const RealField& n, const ActionField& S_m,
                                  const PhysicalParams& params, double floor_rel) {
  require_same_grid(n.grid(), S_m.grid(), "second_moment_tensor");
  MomentTensor t = stochastic_moment_correction(n, params, floor_rel);
  const auto grad = S_m.gradient();
  for (int i = 0; i < t.dims; ++i)
    for (int j = 0; j < t.dims; ++j) t.c[i * t.dims + j] += grad[i] * grad[j];
  return t;
}

}  // namespace madelab
