#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "madelab/classical/ensemble.hpp"
#include "madelab/classical/field_evolution.hpp"
#include "madelab/classical/lagrangian.hpp"
#include "madelab/classical/p_family.hpp"
#include "madelab/core/diagnostics.hpp"

using namespace madelab;
using testing::kPi;

namespace {

ParticleEnsemble single(Point q, Point p) {
  ParticleEnsemble e;
  e.points.push_back({q, p, 1.0});
  return e;
}

}  // namespace

TEST_CASE("free flow moves points in straight lines") {
  const PhysicalParams params{1.0, 2.0, 1.0, 0.0};
  const auto out = liouville_evolve_ensemble(single({1.0, 0}, {0.6, 0}), PotentialSpec::free(), params, 0.01, 500);
  CHECK(out.points[0].q[0] == doctest::Approx(1.0 + 0.6 * 5.0 / 2.0).epsilon(1e-13));
  CHECK(out.points[0].p[0] == 0.6);
  CHECK(out.time == doctest::Approx(5.0));
}

TEST_CASE("harmonic rotation returns after a period with bounded energy error") {
  const double omega = 1.3, T = 2 * kPi / omega, q0 = 0.8;
  const PhysicalParams params;
  const auto pot = PotentialSpec::harmonic(omega);
  auto e = single({q0, 0}, {0, 0});
  const double E0 = particle_energy(e.points[0], 1, pot, params, 0.0);
  double drift = 0.0;
  for (int period = 0; period < 10; ++period) {
    e = liouville_evolve_ensemble(e, pot, params, T / 1000, 1000);
    drift = std::max(drift, std::abs(particle_energy(e.points[0], 1, pot, params, e.time) - E0) / E0);
  }
  CHECK(drift < 1e-6);
  CHECK(std::abs(e.points[0].q[0] - q0) < 10 * (T / 1000) * (T / 1000) * T);
  CHECK(std::abs(e.points[0].p[0]) < 1e-3);
}

TEST_CASE("weights are constant along the flow") {
  ParticleEnsemble e;
  e.points = {{{0.1, 0}, {0.2, 0}, 0.3}, {{-0.4, 0}, {0.0, 0}, 0.7}};
  const auto out = liouville_evolve_ensemble(e, PotentialSpec::harmonic(1.0), {}, 1e-3, 10000);
  CHECK(out.points[0].w == 0.3);
  CHECK(out.points[1].w == 0.7);
  out.validate();
}

TEST_CASE("gauge-equivalent vector potential leaves kinetic momentum free") {
  const double L = 10.0;
  const auto pot = PotentialSpec::free().with_gauge(GaugeFunction::sine(0.2, 0, L), 1.0);
  const PhysicalParams params;
  const Point q0{3.0, 0};
  const double p0 = 0.5;
  auto e = single(q0, {p0 + pot.vector_at(q0, 0)[0], 0});
  e = liouville_evolve_ensemble(e, pot, params, 1e-3, 2000);
  CHECK(e.points[0].q[0] == doctest::Approx(3.0 + p0 * 2.0).epsilon(1e-6));
  CHECK(e.points[0].p[0] - pot.vector_at(e.points[0].q, 0)[0] == doctest::Approx(p0).epsilon(1e-6));
}

TEST_CASE("escaping points raise a warning") {
  auto e = single({9.9, 0}, {1.0, 0});
  e.box = GridSpec::line(10.0, 16);
  WarningCapture cap;
  liouville_evolve_ensemble(e, PotentialSpec::free(), {}, 0.1, 5);
  CHECK(cap.contains("ensemble-escape"));
}

TEST_CASE("sampled momenta follow grad S") {
  const auto g = GridSpec::centered(1, 40.0, 512);
  const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::polynomial(g, 0.0, {0.7, 0}));
  const auto e = sample_ensemble_from_state(st, 2000, 7);
  for (const auto& pt : e.points) CHECK(pt.p[0] == doctest::Approx(0.7).epsilon(1e-14));
  e.validate();
}

TEST_CASE("sampled positions reproduce the Gaussian variance") {
  const double sigma = 1.4;
  const auto g = GridSpec::centered(1, 40.0, 512);
  const QStochasticState st(gaussian_density(g, {0, 0}, sigma), ActionField::zero(g));
  const std::size_t N = 100000;
  const auto e = sample_ensemble_from_state(st, N, 42);
  double m = 0.0, v = 0.0;
  for (const auto& pt : e.points) m += pt.q[0] / N;
  for (const auto& pt : e.points) v += (pt.q[0] - m) * (pt.q[0] - m) / (N - 1);
  const double se = sigma * sigma * std::sqrt(2.0 / N);
  CHECK(std::abs(v - sigma * sigma) < 3 * se);
}

TEST_CASE("sampling is deterministic per seed and validates n") {
  const auto g = GridSpec::centered(2, 20.0, 32);
  const QStochasticState st(gaussian_density(g, {0.5, -1}, 1.5), ActionField::zero(g));
  const auto a = sample_ensemble_from_state(st, 100, 3);
  const auto b = sample_ensemble_from_state(st, 100, 3);
  const auto c = sample_ensemble_from_state(st, 100, 4);
  bool same = true, differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same = same && a.points[i].q == b.points[i].q;
    differs = differs || a.points[i].q != c.points[i].q;
  }
  CHECK(same);
  CHECK(differs);
  const QStochasticState bad(gaussian_density(g, {0, 0}, 1.0) * 2.0, ActionField::zero(g));
  CHECK_THROWS_AS(sample_ensemble_from_state(bad, 10, 1), InvalidArgument);
}

TEST_CASE("uniform static state is a fixed point") {
  const double L = 5.0;
  const auto g = GridSpec::line(L, 64);
  const QStochasticState st(RealField::constant(g, 1 / L), ActionField::zero(g));
  const auto out = evolve_q_state(st, PotentialSpec::free(), {}, 0.01, 200);
  CHECK(max_abs_difference(out.n, st.n) < 1e-15);
  CHECK(max_abs(out.S.values()) < 1e-15);
}

TEST_CASE("free transport matches the method of characteristics") {
  const double L = 40.0, p0 = 1.0, m = 1.0;
  const auto g = GridSpec::centered(1, L, 512);
  const QStochasticState st(gaussian_density(g, {-5, 0}, 1.0), ActionField::polynomial(g, 0.0, {p0, 0}));
  const double t = 0.1 * L * m / p0;
  const auto out = evolve_q_state(st, PotentialSpec::free(), {}, 0.01, 400);
  const auto n_exact = gaussian_density(g, {-5 + p0 * t / m, 0}, 1.0);
  const auto S_exact = RealField::sample(g, [&](const Point& q) { return p0 * q[0] - p0 * p0 * t / (2 * m); });
  CHECK(max_abs_difference(out.n, n_exact) < 1e-6);
  CHECK(max_abs_difference(out.S.values(), S_exact) < 1e-6);
}

TEST_CASE("uniform force accelerates the mean position") {
  const double F = 0.4, m = 1.5, q0 = 2.0;
  const auto g = GridSpec::centered(1, 40.0, 512);
  const QStochasticState st(gaussian_density(g, {q0, 0}, 1.0), ActionField::zero(g));
  const PhysicalParams params{1.0, m, 1.0, 0.0};
  const auto out = evolve_q_state(st, PotentialSpec::uniform_field({F, 0}), params, 0.01, 300);
  const double t = 3.0;
  const double mean = integrate(out.n * coordinate(g, 0));
  CHECK(std::abs(mean - (q0 - F * t * t / (2 * m))) < 1e-6);
}

TEST_CASE("density mass is conserved by the spectral divergence form") {
  const auto g = GridSpec::centered(2, 24.0, 128);
  const auto pot = PotentialSpec::harmonic(0.5);
  const QStochasticState st(gaussian_density(g, {1, -1}, 1.0),
                            ActionField::polynomial(g, 0.0, {0.3, -0.2}).plus_periodic(
                                RealField::sample(g, [](const Point& q) {
                                  return 0.05 * std::sin(q[0]) * std::exp(-(q[0] * q[0] + q[1] * q[1]) / 8);
                                })));
  const auto out = evolve_q_state(st, pot, {}, 1e-3, 500);
  CHECK(std::abs(integrate(out.n) - integrate(st.n)) < 1e-10);
}

TEST_CASE("focusing action trips the caustic policy") {
  const double a = 1.0;
  const auto g = GridSpec::centered(1, 40.0, 256);
  const QStochasticState st(gaussian_density(g, {0, 0}, 2.0), ActionField::polynomial(g, 0.0, {0, 0}, {-a, 0}));
  WarningCapture cap;
  try {
    evolve_q_state(st, PotentialSpec::free(), {}, 1e-3, 3000);
    FAIL("expected a caustic");
  } catch (const CausticError& e) {
    CHECK(e.time() > 0.5);
    CHECK(e.time() <= 1.0 + 1e-9);
  }
}

TEST_CASE("an oversized step warns about the advection bound") {
  const auto g = GridSpec::centered(1, 40.0, 512);
  const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::polynomial(g, 0.0, {5.0, 0}));
  WarningCapture cap;
  evolve_q_state(st, PotentialSpec::free(), {}, 0.01, 1);
  CHECK(cap.contains("cfl"));
}

TEST_CASE("observer sees every step") {
  const auto g = GridSpec::centered(1, 20.0, 64);
  const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::zero(g));
  int calls = 0;
  evolve_q_state(st, PotentialSpec::free(), {}, 0.01, 7, [&](const QStochasticState& s, int k) {
    ++calls;
    CHECK(s.time == doctest::Approx(0.01 * k));
  });
  CHECK(calls == 7);
}

TEST_CASE("lagrangian vanishes on the exact free solution") {
  const double p0 = 0.8, m = 1.0;
  const auto g = GridSpec::centered(1, 40.0, 512);
  const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::polynomial(g, 0.0, {p0, 0}));
  const auto dtS = RealField::constant(g, -p0 * p0 / (2 * m));
  CHECK(max_abs(lagrangian_density(st, PotentialSpec::free(), {}, dtS)) < 1e-8);
  CHECK(max_abs(lagrangian_density(st, PotentialSpec::free(), {}, hj_time_derivative(st, PotentialSpec::free(), {}))) < 1e-14);
}

TEST_CASE("lagrangian grows linearly with an action perturbation") {
  const double p0 = 0.8, L = 40.0;
  const auto g = GridSpec::centered(1, L, 512);
  const auto n = gaussian_density(g, {0, 0}, 2.0);
  const auto dtS = RealField::constant(g, -p0 * p0 / 2);
  auto total = [&](double eps) {
    const auto pert = RealField::sample(g, [&](const Point& q) { return eps * std::sin(2 * kPi * q[0] / L); });
    const QStochasticState st(n, ActionField::polynomial(g, 0.0, {p0, 0}).plus_periodic(pert));
    return integrate(lagrangian_density(st, PotentialSpec::free(), {}, dtS).map([](double v) { return std::abs(v); }));
  };
  const double ratio = total(2e-3) / total(1e-3);
  CHECK(std::abs(ratio - 2.0) < 0.1);
}

TEST_CASE("lagrangian is zero where n is zero") {
  const double L = 10.0;
  const auto g = GridSpec::line(L, 64);
  auto n = RealField::sample(g, [&](const Point& q) {
    const double c = std::cos(2 * kPi * q[0] / L);
    return c > 0 ? c * c : 0.0;
  });
  n *= 1.0 / integrate(n);
  const QStochasticState st(n, ActionField::polynomial(g, 0.0, {1, 0}, {0.3, 0}));
  const auto lag = lagrangian_density(st, PotentialSpec::harmonic(1.0), {}, RealField::constant(g, 0.7));
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] == 0.0) CHECK(lag[i] == 0.0);
}

TEST_CASE("time stencil of an evolved field agrees with the HJ right-hand side") {
  const auto g = GridSpec::centered(1, 40.0, 512);
  const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::polynomial(g, 0.0, {0.5, 0}, {-0.3, 0}));
  std::vector<ActionField> snaps{st.S};
  const double dt = 1e-3;
  QStochasticState mid = st;
  evolve_q_state(st, PotentialSpec::free(), {}, dt, 4, [&](const QStochasticState& s, int k) {
    snaps.push_back(s.S);
    if (k == 2) mid = s;
  });
  const auto dtS = stencil_time_derivative(snaps, dt);
  CHECK(max_abs(lagrangian_density(mid, PotentialSpec::free(), {}, dtS)) < 1e-8);
  CHECK_THROWS_AS(stencil_time_derivative({st.S, st.S}, dt), InvalidArgument);
}

TEST_CASE("action is stationary at second order around a solution") {
  // Free solution n(q - p0 t), S = p0 q - p0^2 t / 2; perturbations vanish at
  // both time ends so the first variation is a pure continuity-equation term.
  const double p0 = 0.6, T = 2.0, L = 40.0;
  const auto g = GridSpec::centered(1, L, 256);
  const int nt = 64;
  auto action = [&](double eps, double del) {
    double total = 0.0;
    for (int k = 0; k <= nt; ++k) {
      const double t = T * k / nt;
      const double env = std::sin(kPi * t / T), denv = kPi / T * std::cos(kPi * t / T);
      const auto eta = RealField::sample(g, [&](const Point& q) { return std::exp(-q[0] * q[0] / 8) * std::cos(q[0]); });
      const auto nu = RealField::sample(g, [&](const Point& q) { return q[0] * std::exp(-q[0] * q[0] / 4); });
      const auto n = gaussian_density(g, {p0 * t, 0}, 1.5) + nu * (del * env);
      const QStochasticState st(n, ActionField::polynomial(g, -p0 * p0 * t / 2, {p0, 0}).plus_periodic(eta * (eps * env)));
      const auto dtS = RealField::constant(g, -p0 * p0 / 2) + eta * (eps * denv);
      const double w = (k == 0 || k == nt) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      total += w * integrate(lagrangian_density(st, PotentialSpec::free(), {}, dtS));
    }
    return total * (T / nt) / 3.0;
  };
  for (auto [e, d] : {std::pair{1e-2, 0.0}, std::pair{1e-2, 1e-2}}) {
    const double a1 = action(e, d), a2 = action(e / 2, d / 2);
    const double odd = 0.5 * (action(e, d) - action(-e, -d));
    CHECK(std::abs(a1 / a2 - 4.0) < 0.05);
    CHECK(std::abs(odd) < 1e-4 * std::abs(a1));
  }
}

TEST_CASE("trajectories through a linear action are straight lines") {
  const auto g = GridSpec::centered(1, 40.0, 256);
  const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::polynomial(g, 0.0, {0.5, 0}));
  const auto b = classical_trajectories(st, {{-1, 0}, {0.5, 0}}, PotentialSpec::free(), {}, 2.0, 0.01);
  REQUIRE(b.trajectories.size() == 2);
  const auto& tr = b.trajectories[1];
  REQUIRE(tr.times.size() == 201);
  CHECK(tr.q.back()[0] == doctest::Approx(0.5 + 0.5 * 2.0).epsilon(1e-12));
  CHECK(tr.p.back()[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("harmonic trajectory family matches point-particle integration") {
  const double omega = 1.0, m = 1.0, p0 = 0.4;
  const auto g = GridSpec::centered(1, 40.0, 256);
  // S0 = p0 q + m omega q^2 / 2: a straight Lagrangian line at 45 degrees.
  const QStochasticState st(gaussian_density(g, {0, 0}, 1.0),
                            ActionField::polynomial(g, 0.0, {p0, 0}, {m * omega, 0}));
  const auto pot = PotentialSpec::harmonic(omega);
  const std::vector<Point> starts{{-1.0, 0}, {0.0, 0}, {0.7, 0}};
  const double T = 1.5, dt = 1e-3;
  const auto b = classical_trajectories(st, starts, pot, {}, T, dt);
  for (std::size_t j = 0; j < starts.size(); ++j) {
    const double q0 = starts[j][0], pq = p0 + m * omega * q0;
    auto point = single(starts[j], {pq, 0});
    point = liouville_evolve_ensemble(point, pot, {}, 1e-4, 15000);
    const auto& tr = b.trajectories[j];
    CHECK(std::abs(tr.q.back()[0] - point.points[0].q[0]) < 1e-6);
    CHECK(std::abs(tr.p.back()[0] - point.points[0].p[0]) < 1e-6);
    const double exact = q0 * std::cos(omega * T) + pq / (m * omega) * std::sin(omega * T);
    CHECK(std::abs(tr.q.back()[0] - exact) < 1e-6);
  }
}

TEST_CASE("distinct trajectories do not cross before the caustic") {
  const auto g = GridSpec::centered(1, 40.0, 256);
  const QStochasticState st(gaussian_density(g, {0, 0}, 2.0), ActionField::polynomial(g, 0.0, {0, 0}, {-0.5, 0}));
  WarningCapture cap;
  const auto b = classical_trajectories(st, {{-1.0, 0}, {1.0, 0}}, PotentialSpec::free(), {}, 1.5, 1e-3);
  for (std::size_t k = 0; k < b.trajectories[0].q.size(); ++k)
    CHECK(b.trajectories[0].q[k][0] < b.trajectories[1].q[k][0]);
}

TEST_CASE("p-family: free particle keeps n and adds p^2 t / 2m to S") {
  const auto g = GridSpec::centered(1, 40.0, 256).momentum_grid(1.0);
  const double q0 = 1.2, m = 2.0, t = 1.5;
  const PStochasticState st(gaussian_density(g, {0.1, 0}, 0.5), ActionField::polynomial(g, 0.0, {q0, 0}));
  CHECK(p_state_mean_position(st) == doctest::Approx(q0).epsilon(1e-12));
  const PhysicalParams params{1.0, m, 1.0, 0.0};
  const auto out = evolve_p_state(st, PotentialSpec::free(), params, 0.01, 150);
  CHECK(max_abs_difference(out.n, st.n) < 1e-8);
  const auto exact = RealField::sample(g, [&](const Point& p) { return q0 * p[0] + p[0] * p[0] * t / (2 * m); });
  CHECK(max_abs_difference(out.S.values(), exact) < 1e-8);
}

TEST_CASE("p-family: uniform force shifts the momentum density") {
  const double F = 0.3, t = 2.0;
  const auto g = GridSpec::centered(1, 40.0, 256).momentum_grid(1.0);
  const PStochasticState st(gaussian_density(g, {0.2, 0}, 0.4), ActionField::zero(g));
  const auto pot = PotentialSpec::uniform_field({F, 0});
  const auto out = evolve_p_state(st, pot, {}, 0.01, 200);
  CHECK(max_abs_difference(out.n, gaussian_density(g, {0.2 - F * t, 0}, 0.4)) < 1e-6);
  // Ensemble oracle: momenta drawn from the nodes, pushed by Hamilton's equations.
  ParticleEnsemble e;
  for (std::size_t i = 0; i < st.n.size(); ++i)
    if (st.n[i] > 0) e.points.push_back({{0, 0}, g.node(i), st.n[i] * g.cell_volume()});
  e = liouville_evolve_ensemble(e, pot, {}, 0.01, 200);
  CHECK(std::abs(p_state_mean_momentum(out) - e.mean_p() ) < 1e-6);
  CHECK(std::abs(p_state_mean_momentum(out) - (0.2 - F * t)) < 1e-6);
}

TEST_CASE("p-family: harmonic rotation of the mean") {
  const double omega = 1.0, q0 = 1.5, t = kPi / 4 / omega * 0.8;
  const auto g = GridSpec::centered(1, 40.0, 256).momentum_grid(1.0);
  const PStochasticState st(gaussian_density(g, {0, 0}, 0.5), ActionField::polynomial(g, 0.0, {q0, 0}));
  const auto pot = PotentialSpec::harmonic(omega);
  const int steps = 400;
  const auto out = evolve_p_state(st, pot, {}, t / steps, steps);
  CHECK(std::abs(p_state_mean_position(out) - q0 * std::cos(omega * t)) < 1e-6);
  CHECK(std::abs(p_state_mean_momentum(out) + q0 * omega * std::sin(omega * t)) < 1e-6);
  CHECK(std::abs(p_state_energy(out, pot, {}) - p_state_energy(st, pot, {})) < 1e-6);
}

TEST_CASE("p-family rejects potentials it cannot close") {
  const auto g = GridSpec::centered(1, 20.0, 64);
  const auto pg = g.momentum_grid(1.0);
  const PStochasticState st(gaussian_density(pg, {0, 0}, 0.5), ActionField::zero(pg));
  CHECK_THROWS_AS(evolve_p_state(st, PotentialSpec::table(RealField::zeros(g)), {}, 0.01, 1), UnsupportedPotential);
  CHECK_THROWS_AS(evolve_p_state(st, PotentialSpec::free().with_gauge(GaugeFunction::constant(1), 1), {}, 0.01, 1),
                  UnsupportedPotential);
}
