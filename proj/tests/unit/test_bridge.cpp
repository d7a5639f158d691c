#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "madelab/bridge/averaged_lagrangian.hpp"
#include "madelab/bridge/gauge.hpp"
#include "madelab/bridge/madelung.hpp"
#include "madelab/bridge/uncertainty.hpp"
#include "madelab/classical/lagrangian.hpp"
#include "madelab/core/spectral.hpp"
#include "madelab/observables/expectation.hpp"
#include "madelab/quantum/stationary.hpp"

using namespace madelab;
using testing::kPi;

namespace {

// Nodeless 1D pair with a carrier, a chirp and a periodic wrinkle.
QStochasticState wrinkled_state(const GridSpec& g) {
  RealField n = RealField::sample(g, [](const Point& q) {
    return std::exp(-std::pow(q[0] - 0.5, 2) / 2.0) * (1.0 + 0.3 * std::sin(q[0]));
  });
  n *= 1.0 / integrate(n);
  const auto S = ActionField::polynomial(g, 0.0, {0.7, 0}, {0.2, 0})
                     .plus_periodic(RealField::sample(g, [&](const Point& q) {
                       return 0.1 * std::cos(2 * kPi * q[0] / g.extent(0));
                     }));
  return {n, S};
}

double bulk_max_error(const RealField& a, const std::function<double(const Point&)>& exact,
                      const RealField& n, double rel = 1e-6) {
  const double floor = rel * max_abs(n);
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (n[i] > floor) e = std::max(e, std::abs(a[i] - exact(a.grid().node(i))));
  return e;
}

}  // namespace

TEST_CASE("madelung_forward of a uniform density is flat") {
  const double L = 8.0;
  const auto g = GridSpec::line(L, 64);
  const auto psi = madelung_forward(RealField::constant(g, 1 / L), ActionField::zero(g), {});
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(psi.field[i] - 1 / std::sqrt(L)) < 1e-15);
}

TEST_CASE("carrier momentum shows up as the momentum-space peak") {
  const PhysicalParams p;
  const auto g = GridSpec::centered(1, 40.0, 256);
  const double p0 = 2 * kPi / 40.0 * 9;
  const auto psi = madelung_forward(gaussian_density(g, {0, 0}, 1.0),
                                    ActionField::polynomial(g, 0.0, {p0, 0}), p);
  const RealField nu = abs_squared(to_momentum_space(psi.field, p.hbar));
  const auto it = std::max_element(nu.data().begin(), nu.data().end());
  CHECK(nu.grid().node(it - nu.data().begin())[0] == doctest::Approx(p0).epsilon(1e-12));
}

TEST_CASE("adding 2 pi hbar to the action leaves psi unchanged") {
  const PhysicalParams p{0.7, 1.0, 1.0, 0.0};
  const auto g = GridSpec::centered(1, 20.0, 128);
  const auto st = wrinkled_state(g);
  const auto a = madelung_forward(st.n, st.S, p);
  const auto b = madelung_forward(st.n, st.S.plus_constant(2 * kPi * p.hbar), p);
  CHECK(max_abs_difference(a.field, b.field) < 1e-14);
}

TEST_CASE("negative density is rejected by madelung_forward") {
  const auto g = GridSpec::line(1.0, 8);
  std::vector<double> v(8, 1.0);
  v[3] = -1e-3;
  CHECK_THROWS_AS(madelung_forward(RealField(g, v), ActionField::zero(g), {}), InvalidArgument);
}

TEST_CASE("madelung_inverse removes a global phase") {
  const double L = 6.0;
  const auto g = GridSpec::line(L, 32);
  const WaveFunction psi(ComplexField::constant(g, std::polar(1 / std::sqrt(L), 1.1)), {});
  const auto r = madelung_inverse(psi);
  CHECK(max_abs_difference(r.n, RealField::constant(g, 1 / L)) < 1e-15);
  CHECK(max_abs(r.S) < 1e-15);
}

TEST_CASE("madelung_inverse recovers a carrier from the density maximum") {
  const PhysicalParams p;
  const auto g = GridSpec::centered(1, 30.0, 256);
  const double p0 = 1.3;
  const auto psi = gaussian_packet(g, p, {0.4, 0}, {p0, 0}, 1.2);
  const auto r = madelung_inverse(psi);
  const double qref = g.node(r.reference_node)[0];
  CHECK(bulk_max_error(r.S, [&](const Point& q) { return p0 * (q[0] - qref); }, r.n) < 1e-8);
}

TEST_CASE("first excited oscillator state has a node") {
  const auto g = GridSpec::centered(1, 16.0, 128);
  const auto e1 = stationary_state(g, PotentialSpec::harmonic(1.0), {}, 1);
  try {
    madelung_inverse(e1.psi);
    FAIL("expected a node error");
  } catch (const NodeError& e) {
    REQUIRE(!e.nodes().empty());
    CHECK(std::abs(e.nodes().front()[0]) < 0.5);
  }
}

TEST_CASE("forward after inverse reproduces psi up to a global phase") {
  const PhysicalParams p{0.5, 1.0, 1.0, 0.0};
  SUBCASE("1D") {
    const auto g = GridSpec::centered(1, 20.0, 256);
    const auto st = wrinkled_state(g);
    const auto psi = madelung_forward(st.n, st.S, p);
    const auto r = madelung_inverse(psi);
    const auto back = madelung_forward(r.n, ActionField(r.S), p);
    const cplx phase = psi.field[r.reference_node] / std::abs(psi.field[r.reference_node]);
    CHECK(max_abs_difference(back.field * phase, psi.field) < 1e-10);
  }
  SUBCASE("2D") {
    const auto g = GridSpec::centered(2, 16.0, 64);
    const auto S = ActionField::polynomial(g, 0.0, {0.4, -0.3}, {0.1, 0.05});
    const auto psi = madelung_forward(gaussian_density(g, {0.5, -0.5}, 1.3), S, p);
    const auto r = madelung_inverse(psi);
    const auto back = madelung_forward(r.n, ActionField(r.S), p);
    const cplx phase = psi.field[r.reference_node] / std::abs(psi.field[r.reference_node]);
    CHECK(max_abs_difference(back.field * phase, psi.field) < 1e-10);
  }
}

TEST_CASE("a phase vortex is rejected in 2D") {
  const auto g = GridSpec::centered(2, 12.0, 48);
  const double c = 0.5 * g.spacing(0);
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point q = g.node(i);
    const double x = q[0] - c, y = q[1] - c;
    v[i] = cplx(x, y) * std::exp(-(x * x + y * y) / 4);
  }
  const WaveFunction psi = WaveFunction(ComplexField(g, v), {}).normalized();
  CHECK_THROWS_AS(madelung_inverse(psi), VortexError);
}

TEST_CASE("sigma squared examples") {
  const double L = 10.0;
  const auto g = GridSpec::centered(1, L, 128);
  const RealField flat = RealField::constant(g, 1 / L);
  CHECK(max_abs(sigma_squared(flat, {}).value) == 0.0);
  const PhysicalParams b1{1.0, 1.0, 1.0, 1.0};
  const double expect = 0.25 * std::pow(L, -2.0 / 3.0);
  CHECK(max_abs_difference(sigma_squared(flat, b1).value, RealField::constant(g, expect)) < 1e-15);

  const PhysicalParams p{0.8, 1.0, 1.0, 0.0};
  const double s = 1.1;
  const auto gw = GridSpec::centered(1, 30.0, 256);
  const RealField n = gaussian_density(gw, {0, 0}, s);
  const auto sig = sigma_squared(n, p);
  CHECK(bulk_max_error(sig.value, [&](const Point& q) {
          return 0.25 * p.hbar * p.hbar * q[0] * q[0] / std::pow(s, 4);
        }, n) < 1e-8);
  CHECK(sig.mask.coverage > 1 - 1e-12);
  CHECK(sig.mask.masked > 0);
}

TEST_CASE("sigma squared is nonnegative") {
  const auto g = GridSpec::centered(2, 10.0, 32);
  const PhysicalParams p{1.0, 1.0, 1.0, 0.6};
  for (int k = 0; k < 4; ++k) {
    RealField n = RealField::sample(g, [k](const Point& q) {
      return std::exp(-q[0] * q[0] / (1 + k) - q[1] * q[1] / 3) * (1.1 + std::sin(k * q[0] + q[1]));
    });
    n *= 1 / integrate(n);
    for (double v : sigma_squared(n, p).value.data()) CHECK(v >= 0.0);
  }
}

TEST_CASE("sigma squared scales as hbar squared") {
  const auto g = GridSpec::centered(1, 20.0, 128);
  const RealField n = gaussian_density(g, {0, 0}, 1.0);
  std::vector<double> x, y;
  for (double h : {1.0, 0.5, 0.25, 0.125}) {
    const PhysicalParams p{h, 1.0, 1.0, 0.0};
    x.push_back(std::log(h));
    y.push_back(std::log(integrate(n * sigma_squared(n, p).value)));
  }
  const double slope = (y.back() - y.front()) / (x.back() - x.front());
  CHECK(slope == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("second moment tensor examples") {
  SUBCASE("carrier on a uniform density") {
    const auto g = GridSpec::centered(2, 6.0, 16);
    const double p0 = 0.9;
    const auto T = second_moment_tensor(RealField::constant(g, 1 / 36.0),
                                        ActionField::polynomial(g, 0.0, {p0, 0}), {});
    CHECK(max_abs_difference(T(0, 0), RealField::constant(g, p0 * p0)) < 1e-14);
    CHECK(max_abs(T(0, 1)) < 1e-14);
    CHECK(max_abs(T(1, 1)) < 1e-14);
  }
  SUBCASE("Gaussian in 1D matches the sigma oracle") {
    const auto g = GridSpec::centered(1, 30.0, 256);
    const RealField n = gaussian_density(g, {0, 0}, 1.0);
    const auto T = second_moment_tensor(n, ActionField::zero(g), {});
    CHECK(bulk_max_error(T(0, 0), [](const Point& q) { return 0.25 * q[0] * q[0]; }, n) < 1e-8);
  }
}

TEST_CASE("moment tensor trace against sigma squared") {
  const auto g = GridSpec::centered(2, 14.0, 48);
  const RealField n = gaussian_density(g, {0.3, 0}, 1.4);
  const auto S = ActionField::polynomial(g, 0.0, {0.2, 0.5}, {0.1, 0});
  const auto grad = S.gradient();
  const RealField g2 = grad[0] * grad[0] + grad[1] * grad[1];
  SUBCASE("beta = 0: exact") {
    const PhysicalParams p;
    const auto T = second_moment_tensor(n, S, p);
    CHECK(max_abs_difference(T.trace() - g2, sigma_squared(n, p).value) < 1e-12);
  }
  SUBCASE("beta > 0: the 1/3 split leaves (1 - dims/3) of the density term out") {
    const PhysicalParams p{1.0, 1.0, 1.0, 0.8};
    const auto T = second_moment_tensor(n, S, p);
    const auto sig = sigma_squared(n, p);
    std::vector<double> gap(g.size(), 0.0);
    for (std::size_t i = 0; i < gap.size(); ++i)
      if (sig.mask.valid[i]) gap[i] = (1 - 2.0 / 3.0) * 0.25 * 0.64 * std::cbrt(n[i] * n[i]);
    CHECK(max_abs_difference(sig.value - (T.trace() - g2), RealField(g, gap)) < 1e-12);
    CHECK(max_abs(RealField(g, gap)) > 1e-3);
  }
}

TEST_CASE("averaged Lagrangian agrees between the (n,S) and psi forms") {
  const PhysicalParams p;
  const auto g = GridSpec::centered(1, 24.0, 256);
  SUBCASE("free Gaussian") {
    const QStochasticState st(gaussian_density(g, {0, 0}, 1.0), ActionField::polynomial(g, 0.0, {0.5, 0}));
    const auto pot = PotentialSpec::free();
    const RealField dtS = hj_time_derivative(st, pot, p);
    const auto psi = madelung_forward(st, p);
    const RealField a = averaged_lagrangian(st.n, st.S, pot, p, dtS);
    const RealField b = averaged_lagrangian_psi(psi, madelung_time_derivative(psi, RealField::zeros(g), dtS), pot);
    CHECK(std::abs(integrate(a) - integrate(b)) < 1e-8);
  }
  SUBCASE("wrinkled state in a gauge vector potential") {
    const auto st = wrinkled_state(g);
    const auto pot = PotentialSpec::harmonic(0.4).with_gauge(GaugeFunction::sine(0.3, 0, 24.0, 2, -12.0), 1.0);
    const RealField dtS = RealField::sample(g, [](const Point& q) { return 0.2 * std::cos(q[0]); });
    const auto psi = madelung_forward(st, p);
    const RealField a = averaged_lagrangian(st.n, st.S, pot, p, dtS);
    const RealField b = averaged_lagrangian_psi(psi, madelung_time_derivative(psi, RealField::zeros(g), dtS), pot);
    CHECK(std::abs(integrate(a) - integrate(b)) < 1e-8);
  }
}

TEST_CASE("plane wave averaged Lagrangian") {
  const double L = 10.0, p0 = 2 * kPi / L * 3, dts = -0.4;
  const PhysicalParams p{1.0, 1.5, 1.0, 0.0};
  const auto g = GridSpec::line(L, 64);
  const RealField n = RealField::constant(g, 1 / L);
  const RealField a = averaged_lagrangian(n, ActionField::polynomial(g, 0.0, {p0, 0}),
                                          PotentialSpec::free(), p, RealField::constant(g, dts));
  CHECK(integrate(a) == doctest::Approx(dts + p0 * p0 / (2 * p.mass)).epsilon(1e-13));
}

TEST_CASE("beta adds the |psi|^(10/3) term to the psi form") {
  const auto g = GridSpec::centered(1, 20.0, 128);
  const PhysicalParams p0;
  const PhysicalParams pb{1.0, 1.0, 1.0, 1.3};
  const auto st = wrinkled_state(g);
  const auto pot = PotentialSpec::free();
  const RealField dtS = RealField::zeros(g);
  const auto a = madelung_forward(st, p0);
  const auto b = madelung_forward(st, pb);
  const ComplexField dt = ComplexField::zeros(g);
  const double extra = integrate(averaged_lagrangian_psi(b, dt, pot)) - integrate(averaged_lagrangian_psi(a, dt, pot));
  const double direct = 1.3 * 1.3 / 8 * integrate(st.n.map([](double x) { return std::pow(x, 5.0 / 3.0); }));
  CHECK(extra == doctest::Approx(direct).epsilon(1e-12));
  CHECK(integrate(averaged_lagrangian(st.n, st.S, pot, pb, dtS)) ==
        doctest::Approx(integrate(averaged_lagrangian_psi(b, dt, pot))).epsilon(1e-8));
}

TEST_CASE("gauge transformations") {
  const PhysicalParams p{1.0, 1.0, 0.7, 0.0};
  const auto g = GridSpec::centered(1, 20.0, 128);
  const auto st = wrinkled_state(g);
  const auto pot = PotentialSpec::harmonic(0.5);
  const RealField dtS = hj_time_derivative(st, pot, p);
  const RealField L0 = averaged_lagrangian(st.n, st.S, pot, p, dtS, st.time);
  auto kinetic = [&](const QStochasticState& s, const PotentialSpec& v) {
    return integrate(s.n * (s.S.gradient(0) - v.vector(g, s.time)[0] * p.charge));
  };

  SUBCASE("constant phi shifts S only") {
    const auto phi = GaugeFunction::constant(2.5);
    const auto out = gauge_transform(st, pot, phi, p);
    CHECK(max_abs(out.pot.vector(g, 0.0)[0]) == 0.0);
    CHECK(max_abs_difference(out.pot.scalar(g, 0.0), pot.scalar(g, 0.0)) == 0.0);
    CHECK(max_abs_difference(out.target.S.values() - st.S.values(), RealField::constant(g, 0.7 * 2.5)) < 1e-13);
    CHECK(std::abs(kinetic(out.target, out.pot) - kinetic(st, pot)) < 1e-14);
  }
  SUBCASE("phi = c t shifts V and d_t S, L_m pointwise unchanged") {
    const auto phi = GaugeFunction::linear_in_time(0.9);
    const auto out = gauge_transform(st, pot, phi, p);
    CHECK(max_abs_difference(out.pot.scalar(g, 0.0), pot.scalar(g, 0.0) - RealField::constant(g, 0.7 * 0.9)) < 1e-14);
    const RealField L1 = averaged_lagrangian(out.target.n, out.target.S, out.pot, p,
                                             gauge_transform_rate(dtS, phi, p, st.time), st.time);
    CHECK(max_abs_difference(L0, L1) < 1e-10);
  }
  SUBCASE("phi = eps sin leaves kinetic momentum and L_m unchanged") {
    const auto phi = GaugeFunction::sine(0.05, 0, 20.0, 1, -10.0);
    const auto out = gauge_transform(st, pot, phi, p);
    CHECK(std::abs(kinetic(out.target, out.pot) - kinetic(st, pot)) < 1e-10);
    const RealField L1 = averaged_lagrangian(out.target.n, out.target.S, out.pot, p,
                                             gauge_transform_rate(dtS, phi, p, st.time), st.time);
    CHECK(max_abs_difference(L0, L1) < 1e-10);
    const auto psi = madelung_forward(st, p);
    const auto gpsi = gauge_transform(psi, pot, phi);
    CHECK(max_abs_difference(abs_squared(gpsi.target.field), abs_squared(psi.field)) < 1e-15);
  }
  SUBCASE("non-periodic phi is rejected") {
    GaugeFunction ramp{[](const Point& q, double) { return 0.1 * q[0]; },
                       [](const Point&, double) { return Point{0.1, 0.0}; },
                       [](const Point&, double) { return 0.0; }, false, "ramp"};
    CHECK_THROWS_AS(gauge_transform(st, pot, ramp, p), InvalidArgument);
  }
}
