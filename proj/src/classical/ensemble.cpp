#include "madelab/classical/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "madelab/core/diagnostics.hpp"

namespace madelab {

namespace {

struct Flow {
  const PotentialSpec& pot;
  const PhysicalParams& params;
  int dims;

  // Kinetic momentum p - eA at q.
  Point kinetic(const Point& q, const Point& p, double t) const {
    const Point a = pot.vector_at(q, t);
    Point k{};
    for (int i = 0; i < dims; ++i) k[i] = p[i] - params.charge * a[i];
    return k;
  }

  // (dq/dt, dp/dt) for the minimally coupled Hamiltonian.
  void rate(const Point& q, const Point& p, double t, Point& dq,
            Point& dp) const {
    const Point k = kinetic(q, p, t);
    const Point gv = pot.scalar_gradient_at(q, t);
    dq = {};
    dp = {};
    for (int i = 0; i < dims; ++i) dq[i] = k[i] / params.mass;
    const double h = 1e-6;
    for (int i = 0; i < dims; ++i) {
      Point qp = q, qm = q;
      qp[i] += h;
      qm[i] -= h;
      const Point ap = pot.vector_at(qp, t), am = pot.vector_at(qm, t);
      double s = 0.0;
      for (int j = 0; j < dims; ++j) s += (ap[j] - am[j]) / (2 * h) * k[j];
      dp[i] = params.charge * s / params.mass - gv[i];
    }
  }
};

void leapfrog(Particle& pt, const Flow& f, double t, double dt) {
  Point g = f.pot.scalar_gradient_at(pt.q, t);
  for (int i = 0; i < f.dims; ++i) pt.p[i] -= 0.5 * dt * g[i];
  for (int i = 0; i < f.dims; ++i) pt.q[i] += dt * pt.p[i] / f.params.mass;
  g = f.pot.scalar_gradient_at(pt.q, t + dt);
  for (int i = 0; i < f.dims; ++i) pt.p[i] -= 0.5 * dt * g[i];
}

void implicit_midpoint(Particle& pt, const Flow& f, double t, double dt) {
  Point q1 = pt.q, p1 = pt.p;
  for (int it = 0; it < 100; ++it) {
    Point qm{}, pm{}, dq, dp;
    for (int i = 0; i < f.dims; ++i) {
      qm[i] = 0.5 * (pt.q[i] + q1[i]);
      pm[i] = 0.5 * (pt.p[i] + p1[i]);
    }
    f.rate(qm, pm, t + 0.5 * dt, dq, dp);
    double change = 0.0;
    for (int i = 0; i < f.dims; ++i) {
      const double qn = pt.q[i] + dt * dq[i];
      const double pn = pt.p[i] + dt * dp[i];
      change = std::max({change, std::abs(qn - q1[i]), std::abs(pn - p1[i])});
      q1[i] = qn;
      p1[i] = pn;
    }
    if (change < 1e-15) break;
  }
  pt.q = q1;
  pt.p = p1;
}

bool inside(const GridSpec& box, const Point& q) {
  for (int a = 0; a < box.dims(); ++a)
    if (q[a] < box.origin(a) || q[a] >= box.origin(a) + box.extent(a))
      return false;
  return true;
}

}  // namespace

ParticleEnsemble liouville_evolve_ensemble(const ParticleEnsemble& ens,
                                           const PotentialSpec& pot,
                                           const PhysicalParams& params,
                                           double dt, int steps) {
  params.validate();
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (steps < 0) throw InvalidArgument("steps must be non-negative");
  ParticleEnsemble out = ens;
  const Flow flow{pot, params, ens.dims};
  const bool coupled = pot.has_vector_potential();
  std::vector<char> escaped(out.size(), 0);
  std::size_t first_escape = out.size();
  std::size_t n_escaped = 0;
  for (int s = 0; s < steps; ++s) {
    const double t = ens.time + s * dt;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      Particle& pt = out.points[i];
      if (coupled)
        implicit_midpoint(pt, flow, t, dt);
      else
        leapfrog(pt, flow, t, dt);
      if (out.box && !escaped[i] && !inside(*out.box, pt.q)) {
        escaped[i] = 1;
        ++n_escaped;
        first_escape = std::min(first_escape, i);
      }
    }
  }
  out.time = ens.time + steps * dt;
  if (n_escaped > 0)
    warn("ensemble-escape", std::to_string(n_escaped) +
                                " point(s) left the box, first index " +
                                std::to_string(first_escape));
  return out;
}

ParticleEnsemble sample_ensemble_from_state(const QStochasticState& st,
                                            std::size_t count,
                                            std::uint64_t seed) {
  if (count == 0) throw InvalidArgument("ensemble size must be at least 1");
  st.require_normalized();
  const GridSpec& g = st.grid();
  std::vector<double> cdf(st.n.size());
  double total = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    total += st.n[i];
    cdf[i] = total;
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  const ActionGradientSampler grad(st.S);
  ParticleEnsemble ens;
  ens.dims = g.dims();
  ens.time = st.time;
  ens.box = g;
  ens.points.resize(count);
  const double w = 1.0 / static_cast<double>(count);
  for (auto& pt : ens.points) {
    const double u = uniform() * total;
    std::size_t cell = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    cell = std::min(cell, cdf.size() - 1);
    pt.q = g.node(cell);
    for (int a = 0; a < g.dims(); ++a)
      pt.q[a] += (uniform() - 0.5) * g.spacing(a);
    pt.p = grad(pt.q);
    pt.w = w;
  }
  return ens;
}

double particle_energy(const Particle& pt, int dims, const PotentialSpec& pot,
                       const PhysicalParams& params, double t) {
  const Point k = Flow{pot, params, dims}.kinetic(pt.q, pt.p, t);
  double t2 = 0.0;
  for (int i = 0; i < dims; ++i) t2 += k[i] * k[i];
  return t2 / (2.0 * params.mass) + pot.scalar_at(pt.q, t);
}

}  // namespace madelab
