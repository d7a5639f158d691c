#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "madelab/bridge/madelung.hpp"
#include "madelab/core/spectral.hpp"
#include "madelab/observables/collapse.hpp"
#include "madelab/observables/ehrenfest.hpp"
#include "madelab/observables/expectation.hpp"
#include "madelab/observables/marginals.hpp"
#include "madelab/observables/mixture.hpp"
#include "madelab/quantum/split_step.hpp"
#include "madelab/quantum/stationary.hpp"

using namespace madelab;
using testing::kPi;

namespace {

const PotentialSpec kFree = PotentialSpec::free();

// Random nodeless 1D pair: a two-bump density and a cubic-free action.
QStochasticState random_pair(const GridSpec& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c1 = u(rng), c2 = 2 + u(rng), w1 = 1 + 0.3 * u(rng), w2 = 1.2 + 0.3 * u(rng), a = 0.5 + 0.4 * u(rng);
  RealField n = RealField::sample(g, [&](const Point& q) {
    return std::exp(-std::pow(q[0] - c1, 2) / (2 * w1 * w1)) + a * std::exp(-std::pow(q[0] - c2, 2) / (2 * w2 * w2));
  });
  n *= 1 / integrate(n);
  const double p0 = u(rng), k = 0.2 * u(rng), e = 0.1 * u(rng);
  const auto S = ActionField::polynomial(g, 0.0, {p0, 0}, {k, 0}).plus_periodic(
      RealField::sample(g, [&](const Point& q) { return e * std::sin(2 * kPi * q[0] / g.extent(0)); }));
  return {n, S};
}

}  // namespace

TEST_CASE("classical expectation examples") {
  const PhysicalParams p{0.9, 1.0, 1.0, 0.0};
  const auto g = GridSpec::centered(1, 30.0, 256);
  const double q0 = 1.2, s = 1.1, p0 = 0.7;
  const RealField n = gaussian_density(g, {q0, 0}, s);
  const QStochasticState wrinkled(n, ActionField::polynomial(g, 0.0, {0.1, 0}, {0.3, 0}));
  CHECK(std::abs(expect_classical(wrinkled, kFree, p, Observable::position_mean()) - q0) < 1e-10);
  const QStochasticState carrier(n, ActionField::polynomial(g, 0.0, {p0, 0}));
  CHECK(expect_classical(carrier, kFree, p, Observable::momentum_mean()) == doctest::Approx(p0).epsilon(1e-14));
  const QStochasticState still(n, ActionField::zero(g));
  CHECK(std::abs(expect_classical(still, kFree, p, Observable::momentum_square()) - p.hbar * p.hbar / (4 * s * s)) < 1e-8);
  CHECK(expect_classical(still, kFree, p, Observable::momentum_square(), false) == 0.0);
}

TEST_CASE("classical form refuses moments above second order") {
  const auto g = GridSpec::centered(1, 20.0, 64);
  const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::zero(g));
  CHECK_THROWS_AS(expect_classical(st, kFree, {}, Observable::momentum_power(0, 4)), UnsupportedObservable);
  CHECK_NOTHROW(expect_classical(st, kFree, {}, Observable::momentum_power(0, 2)));
  const auto psi = madelung_forward(st, {});
  CHECK(expect_quantum(psi, kFree, Observable::momentum_power(0, 4)) == doctest::Approx(3 * std::pow(0.25, 2)).epsilon(1e-9));
}

TEST_CASE("quantum expectation examples") {
  SUBCASE("plane wave momentum") {
    const double L = 12.0, p0 = 2 * kPi / L * 5;
    const auto g = GridSpec::line(L, 64);
    const WaveFunction psi(ComplexField::sample(g, [&](const Point& q) { return std::polar(1 / std::sqrt(L), p0 * q[0]); }), {});
    CHECK(std::abs(expect_quantum(psi, kFree, Observable::momentum_mean()) - p0) < 1e-10);
  }
  SUBCASE("oscillator ground energy") {
    const auto g = GridSpec::centered(1, 20.0, 256);
    const auto pot = PotentialSpec::harmonic(1.3);
    const auto e0 = stationary_state(g, pot, {}, 0);
    CHECK(std::abs(expect_quantum(e0.psi, pot, Observable::energy()) - 0.65) < 1e-6);
  }
  SUBCASE("angular momentum eigenstate") {
    const PhysicalParams p{0.8, 1.0, 1.0, 0.0};
    const auto g = GridSpec::centered(2, 20.0, 96);
    const double s = 1.2;
    const WaveFunction psi = WaveFunction(ComplexField::sample(g, [&](const Point& q) {
                               return cplx(q[0], q[1]) * std::exp(-(q[0] * q[0] + q[1] * q[1]) / (4 * s * s));
                             }), p).normalized();
    CHECK(std::abs(expect_quantum(psi, kFree, Observable::angular_momentum_z()) - p.hbar) < 1e-8);
    CHECK(std::abs(expect_quantum(psi, kFree, Observable::angular_momentum_z_square()) - p.hbar * p.hbar) < 1e-8);
  }
}

TEST_CASE("classical and quantum forms agree on nodeless pairs") {
  std::mt19937_64 rng(11);
  const PhysicalParams p{0.7, 1.3, 1.0, 0.0};
  const auto g = GridSpec::centered(1, 40.0, 512);
  const auto pot = PotentialSpec::harmonic(0.6, p.mass);
  for (int trial = 0; trial < 3; ++trial) {
    const auto st = random_pair(g, rng);
    const auto psi = madelung_forward(st, p);
    const RealField f = RealField::sample(g, [](const Point& q) { return std::cos(q[0]) + 0.1 * q[0] * q[0]; });
    for (const auto& obs : {Observable::position_mean(), Observable::f_of_q(f), Observable::momentum_mean(),
                            Observable::momentum_square(), Observable::energy()}) {
      CAPTURE(obs.name);
      CHECK(std::abs(expect_classical(st, pot, p, obs) - expect_quantum(psi, pot, obs)) < 1e-8);
    }
  }
  SUBCASE("2D angular momentum") {
    const auto g2 = GridSpec::centered(2, 20.0, 96);
    RealField n = RealField::sample(g2, [](const Point& q) {
      return std::exp(-std::pow(q[0] - 0.5, 2) / 2 - q[1] * q[1] / 3) * (1 + 0.2 * std::sin(q[0] + q[1]));
    });
    n *= 1 / integrate(n);
    const QStochasticState st(n, ActionField::polynomial(g2, 0.0, {0.3, -0.4}, {0.1, 0.05}));
    const auto psi = madelung_forward(st, p);
    for (const auto& obs : {Observable::angular_momentum_z(), Observable::angular_momentum_z_square(),
                            Observable::momentum_square(1)}) {
      CAPTURE(obs.name);
      CHECK(std::abs(expect_classical(st, kFree, p, obs) - expect_quantum(psi, kFree, obs)) < 1e-8);
    }
  }
}

TEST_CASE("classical marginals") {
  const PhysicalParams p;
  SUBCASE("a carrier lands in one bin") {
    const auto g = GridSpec::centered(1, 20.0, 128);
    const GridSpec pg = g.momentum_grid(p.hbar);
    const double p0 = pg.coord(0, 70);
    const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::polynomial(g, 0.0, {p0, 0}));
    const auto m = marginals_classical(st, pg);
    CHECK(m.nu[70] * pg.spacing(0) == doctest::Approx(integrate(st.n)).epsilon(1e-14));
    CHECK(integrate(m.nu) == doctest::Approx(integrate(st.n)).epsilon(1e-14));
    CHECK(m.mu.data() == st.n.data());
  }
  SUBCASE("a chirp on a uniform density spreads uniformly") {
    const double L = 16.0;
    const int N = 64;
    const auto g = GridSpec::centered(1, L, N);
    const GridSpec pg = g.momentum_grid(p.hbar);
    const double alpha = pg.spacing(0) / g.spacing(0);
    const QStochasticState st(RealField::constant(g, 1 / L), ActionField::polynomial(g, 0.0, {0, 0}, {alpha, 0}));
    const auto m = marginals_classical(st, pg);
    for (int j = 0; j < N; ++j) CHECK(m.nu[j] == doctest::Approx(1 / (alpha * L)).epsilon(1e-12));
  }
  SUBCASE("momenta off the grid are reported") {
    const auto g = GridSpec::centered(1, 20.0, 64);
    const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::polynomial(g, 0.0, {50.0, 0}));
    try {
      marginals_classical(st, g.momentum_grid(1.0));
      FAIL("expected overflow");
    } catch (const MarginalOverflow& e) {
      CHECK(e.overflow_mass() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  SUBCASE("position marginals coincide under the Madelung map") {
    const auto g = GridSpec::centered(1, 20.0, 128);
    std::mt19937_64 rng(3);
    const auto st = random_pair(g, rng);
    const auto q = marginals_quantum(madelung_forward(st, p));
    CHECK(max_abs_difference(q.mu, st.n) < 1e-15);
  }
}

TEST_CASE("Ehrenfest relations") {
  const PhysicalParams p;
  const auto g = GridSpec::centered(1, 30.0, 256);
  auto history = [&](const WaveFunction& psi, const PotentialSpec& pot, double dt, int steps) {
    std::vector<WaveFunction> h{psi};
    split_step_propagate(psi, pot, dt, steps, [&](const WaveFunction& s, int) { h.push_back(s); });
    return h;
  };
  SUBCASE("free packet") {
    const auto r = ehrenfest_check(history(gaussian_packet(g, p, {-1, 0}, {0.8, 0}, 1.0), kFree, 1e-3, 40), kFree);
    CHECK(r.position_residual < 1e-6);
    CHECK(r.momentum_residual < 1e-6);
  }
  SUBCASE("harmonic coherent state") {
    const auto pot = PotentialSpec::harmonic(1.0);
    const auto r = ehrenfest_check(history(gaussian_packet(g, p, {1.5, 0}, {0, 0}, std::sqrt(0.5)), pot, 1e-3, 40), pot);
    CHECK(r.position_residual < 1e-6);
    CHECK(r.momentum_residual < 1e-6);
  }
  SUBCASE("static eigenstate") {
    const auto pot = PotentialSpec::harmonic(1.0);
    const auto e0 = stationary_state(g, pot, p, 0);
    const auto r = ehrenfest_check(history(e0.psi, pot, 1e-3, 10), pot);
    CHECK(r.position_residual < 1e-8);
    CHECK(r.momentum_residual < 1e-8);
  }
  SUBCASE("classical field history") {
    const auto pot = PotentialSpec::harmonic(1.0);
    std::vector<QStochasticState> hs;
    for (int k = 0; k < 9; ++k) {
      const double t = 0.3 + 1e-3 * k;
      hs.emplace_back(gaussian_density(g, {1.5 * std::cos(t), 0}, 1.0),
                      ActionField::polynomial(g, 0.0, {-1.5 * std::sin(t), 0}), t);
    }
    const auto r = ehrenfest_check(hs, pot, p);
    CHECK(r.position_residual < 1e-6);
    CHECK(r.momentum_residual < 1e-6);
  }
}

TEST_CASE("mixtures") {
  const PhysicalParams p;
  const auto g = GridSpec::centered(1, 20.0, 256);
  const auto pot = PotentialSpec::harmonic(1.0);
  const auto e0 = stationary_state(g, pot, p, 0).psi;
  const auto e1 = stationary_state(g, pot, p, 1).psi;
  const DensityMatrix single{{{1.0, e0}}};
  CHECK(mixture_expectation(single, pot, Observable::energy()) == expect_quantum(e0, pot, Observable::energy()));
  const DensityMatrix mix{{{0.3, e0}, {0.7, e1}}};
  CHECK(std::abs(mixture_expectation(mix, pot, Observable::energy()) - (0.3 * 0.5 + 0.7 * 1.5)) < 1e-6);
  const DensityMatrix swapped{{{0.7, e1}, {0.3, e0}}};
  CHECK(std::abs(mixture_expectation(mix, pot, Observable::energy()) -
                 mixture_expectation(swapped, pot, Observable::energy())) < 1e-15);
  const double L = 10.0, k = 2 * kPi / L * 3;
  const auto lg = GridSpec::line(L, 64);
  auto wave = [&](double p0) {
    return WaveFunction(ComplexField::sample(lg, [&](const Point& q) { return std::polar(1 / std::sqrt(L), p0 * q[0]); }), p);
  };
  const DensityMatrix opposed{{{0.5, wave(k)}, {0.5, wave(-k)}}};
  CHECK(std::abs(mixture_expectation(opposed, kFree, Observable::momentum_mean())) < 1e-12);
  const DensityMatrix bad{{{0.5, e0}, {0.4, e1}}};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("collapse") {
  const PhysicalParams p;
  SUBCASE("uniform state onto half the box") {
    const double L = 8.0;
    const auto g = GridSpec::line(L, 64);
    const WaveFunction psi(ComplexField::constant(g, 1 / std::sqrt(L)), p);
    const auto out = collapse(psi, Window::interval(0.0, L / 2));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double expect = g.node(i)[0] < L / 2 ? std::sqrt(2 / L) : 0.0;
      CHECK(std::abs(out.field[i] - expect) < 1e-15);
    }
  }
  const double L = 20.0;
  const auto g = GridSpec::line(L, 256);
  const double h = g.spacing(0), q0 = L / 2 + h / 2;
  const auto psi = gaussian_packet(g, p, {q0, 0}, {0.4, 0}, 1.0);
  SUBCASE("whole box is the identity") {
    CHECK(max_abs_difference(collapse(psi, Window::interval(0.0, L)).field, psi.field) < 1e-12);
  }
  SUBCASE("half window follows the conditional law") {
    const Window w = Window::interval(q0, L);
    CHECK(captured_probability(psi, w, Basis::Position) == doctest::Approx(0.5).epsilon(1e-12));
    const auto out = collapse(psi, w);
    const RealField rho = abs_squared(psi.field);
    const double captured = captured_probability(psi, w, Basis::Position);
    std::vector<double> expect(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) expect[i] = w.contains(g.node(i), 1) ? rho[i] / captured : 0.0;
    CHECK(max_abs_difference(abs_squared(out.field), RealField(g, expect)) < 1e-10);
    CHECK(max_abs_difference(collapse(out, w).field, out.field) < 1e-12);
  }
  SUBCASE("momentum window") {
    const Window w = Window::interval(0.4, 10.0);
    const auto out = collapse(psi, w, Basis::Momentum);
    const RealField nu = abs_squared(to_momentum_space(psi.field, p.hbar));
    const RealField nu_out = abs_squared(to_momentum_space(out.field, p.hbar));
    const double captured = captured_probability(psi, w, Basis::Momentum);
    double err = 0.0;
    for (std::size_t j = 0; j < nu.size(); ++j) {
      const double expect = w.contains(nu.grid().node(j), 1) ? nu[j] / captured : 0.0;
      err = std::max(err, std::abs(nu_out[j] - expect));
    }
    CHECK(err < 1e-10);
    CHECK(max_abs_difference(collapse(out, w, Basis::Momentum).field, out.field) < 1e-12);
  }
  SUBCASE("empty window") {
    CHECK_THROWS_AS(collapse(psi, Window::interval(-5.0, -1.0)), ZeroProbability);
  }
}

TEST_CASE("Heisenberg product") {
  const PhysicalParams p{0.6, 1.0, 1.0, 0.0};
  const auto g = GridSpec::centered(1, 40.0, 512);
  auto product = [](const WaveFunction& psi) { return position_spread(psi) * momentum_spread(psi); };
  for (double s : {0.5, 1.0, 2.0}) {
    const auto psi = gaussian_packet(g, p, {0.5, 0}, {0.7, 0}, s);
    CHECK(std::abs(product(psi) - p.hbar / 2) < 1e-8);
  }
  const auto e1 = stationary_state(g, PotentialSpec::harmonic(1.0), p, 1).psi;
  CHECK(product(e1) >= p.hbar / 2 * (1 - 1e-6));
  CHECK(product(e1) == doctest::Approx(1.5 * p.hbar).epsilon(1e-6));
}
