#include "madelab/observables/ehrenfest.hpp"

#include <algorithm>
#include <cmath>

#include "madelab/observables/expectation.hpp"

namespace madelab {

namespace {

void require_scalar_only(const PotentialSpec& pot) {
  if (pot.has_vector_potential())
    throw UnsupportedPotential("Ehrenfest check is implemented for A = 0");
}

}  // namespace

EhrenfestSample ehrenfest_sample(const WaveFunction& psi, const PotentialSpec& pot) {
  require_scalar_only(pot);
  const GridSpec& g = psi.grid();
  const RealField rho = abs_squared(psi.field);
  const auto dV = pot.scalar_gradient(g, psi.time);
  EhrenfestSample s;
  s.time = psi.time;
  for (int a = 0; a < g.dims(); ++a) {
    s.q[a] = integrate(rho * coordinate(g, a));
    s.p[a] = expect_quantum(psi, pot, Observable::momentum_mean(a));
    s.velocity[a] = s.p[a] / psi.params.mass;
    s.force[a] = -integrate(rho * dV[a]);
  }
  return s;
}

EhrenfestSample ehrenfest_sample(const QStochasticState& st, const PotentialSpec& pot,
                                 const PhysicalParams& params) {
  require_scalar_only(pot);
  const GridSpec& g = st.grid();
  const auto dV = pot.scalar_gradient(g, st.time);
  EhrenfestSample s;
  s.time = st.time;
  for (int a = 0; a < g.dims(); ++a) {
    s.q[a] = integrate(st.n * coordinate(g, a));
    s.p[a] = integrate(st.n * st.S.gradient(a));
    s.velocity[a] = s.p[a] / params.mass;
    s.force[a] = -integrate(st.n * dV[a]);
  }
  return s;
}

EhrenfestReport ehrenfest_check(const std::vector<EhrenfestSample>& s) {
  if (s.size() < 3) throw InvalidArgument("Ehrenfest check needs at least 3 samples");
  auto spacing = [&](std::size_t k) { return s[k + 1].time - s[k].time; };
  auto same = [&](double a, double b) { return std::abs(a - b) <= 1e-9 * std::abs(a); };
  EhrenfestReport r;
  double scale_q = 1.0, scale_p = 1.0;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double h = spacing(k);
    if (!(h != 0.0) || !same(h, spacing(k - 1))) continue;
    const bool wide = k >= 2 && k + 2 < s.size() && same(h, spacing(k - 2)) && same(h, spacing(k + 1));
    auto derivative = [&](auto get) {
      if (wide)
        return (get(s[k - 2]) - 8 * get(s[k - 1]) + 8 * get(s[k + 1]) - get(s[k + 2])) / (12 * h);
      return (get(s[k + 1]) - get(s[k - 1])) / (2 * h);
    };
    for (int a = 0; a < 2; ++a) {
      const double dq = derivative([a](const EhrenfestSample& x) { return x.q[a]; });
      const double dp = derivative([a](const EhrenfestSample& x) { return x.p[a]; });
      r.position_residual = std::max(r.position_residual, std::abs(dq - s[k].velocity[a]));
      r.momentum_residual = std::max(r.momentum_residual, std::abs(dp - s[k].force[a]));
      scale_q = std::max(scale_q, std::abs(s[k].velocity[a]));
      scale_p = std::max(scale_p, std::abs(s[k].force[a]));
    }
    ++r.checked;
  }
  if (r.checked == 0) throw InvalidArgument("Ehrenfest check found no equally spaced triple");
  r.position_relative = r.position_residual / scale_q;
  r.momentum_relative = r.momentum_residual / scale_p;
  return r;
}

EhrenfestReport ehrenfest_check(const std::vector<WaveFunction>& history, const PotentialSpec& pot) {
  std::vector<EhrenfestSample> s;
  for (const auto& psi : history) s.push_back(ehrenfest_sample(psi, pot));
  EhrenfestReport r = ehrenfest_check(s);
  if (!history.empty()) r.dims = history.front().grid().dims();
  return r;
}

EhrenfestReport ehrenfest_check(const std::vector<QStochasticState>& history,
                                const PotentialSpec& pot, const PhysicalParams& params) {
  std::vector<EhrenfestSample> s;
  for (const auto& st : history) s.push_back(ehrenfest_sample(st, pot, params));
  EhrenfestReport r = ehrenfest_check(s);
  if (!history.empty()) r.dims = history.front().grid().dims();
  return r;
}

}  // namespace madelab
