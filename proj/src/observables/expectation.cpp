#include "madelab/observables/expectation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "madelab/bridge/uncertainty.hpp"
#include "madelab/core/spectral.hpp"
#include "madelab/quantum/hamiltonian.hpp"

namespace madelab {

Observable Observable::position_mean(int axis) {
  return {ObservableKind::PositionMean, axis, 1, std::nullopt, "q" + std::to_string(axis)};
}
Observable Observable::f_of_q(RealField table, std::string name) {
  return {ObservableKind::FofQ, 0, 1, std::move(table), std::move(name)};
}
Observable Observable::position_square(const GridSpec& grid, int axis) {
  const RealField q = coordinate(grid, axis);
  return f_of_q(q * q, "q" + std::to_string(axis) + "^2");
}
Observable Observable::momentum_mean(int axis) {
  return {ObservableKind::MomentumMean, axis, 1, std::nullopt, "p" + std::to_string(axis)};
}
Observable Observable::momentum_square(int axis) {
  return {ObservableKind::MomentumSquare, axis, 2, std::nullopt, "p" + std::to_string(axis) + "^2"};
}
Observable Observable::momentum_power(int axis, int power) {
  return {ObservableKind::MomentumPower, axis, power, std::nullopt,
          "p" + std::to_string(axis) + "^" + std::to_string(power)};
}
Observable Observable::energy() { return {ObservableKind::Energy, 0, 1, std::nullopt, "H"}; }
Observable Observable::angular_momentum_z() {
  return {ObservableKind::AngularMomentumZ, 0, 1, std::nullopt, "lz"};
}
Observable Observable::angular_momentum_z_square() {
  return {ObservableKind::AngularMomentumZSquare, 0, 2, std::nullopt, "lz^2"};
}

namespace {

void require_axis(const GridSpec& g, int axis) {
  if (axis < 0 || axis >= g.dims())
    throw InvalidArgument("observable axis " + std::to_string(axis) + " outside the grid");
}

void require_plane(const GridSpec& g, const char* what) {
  if (g.dims() != 2) throw UnsupportedObservable(std::string(what) + " needs a 2D grid");
}

const RealField& table_of(const Observable& obs, const GridSpec& g) {
  if (!obs.table) throw InvalidArgument("f(q) observable without a table");
  require_same_grid(g, obs.table->grid(), "f(q) observable");
  return *obs.table;
}

double hermitian(cplx z, const char* what) {
  if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real())))
    throw std::logic_error(std::string("non-Hermitian residue in ") + what + ": " +
                           std::to_string(z.imag()));
  return z.real();
}

}  // namespace

double expect_classical(const QStochasticState& st, const PotentialSpec& pot,
                        const PhysicalParams& params, const Observable& obs,
                        bool use_sigma) {
  const GridSpec& g = st.grid();
  const RealField& n = st.n;
  int power = obs.power;
  ObservableKind kind = obs.kind;
  if (kind == ObservableKind::MomentumPower) {
    if (power < 1 || power > 2)
      throw UnsupportedObservable(
          "p^" + std::to_string(power) +
          " has no classical (n, S) form: only the first two moments of grad S are fixed, "
          "so expectations beyond quadratic order in p need the quantum formula");
    kind = power == 1 ? ObservableKind::MomentumMean : ObservableKind::MomentumSquare;
  }
  switch (kind) {
    case ObservableKind::PositionMean:
      require_axis(g, obs.axis);
      return integrate(n * coordinate(g, obs.axis));
    case ObservableKind::FofQ:
      return integrate(n * table_of(obs, g));
    case ObservableKind::MomentumMean:
      require_axis(g, obs.axis);
      return integrate(n * st.S.gradient(obs.axis));
    case ObservableKind::MomentumSquare: {
      require_axis(g, obs.axis);
      const RealField p = st.S.gradient(obs.axis);
      RealField f = p * p;
      if (use_sigma) f += stochastic_moment_correction(n, params)(obs.axis, obs.axis);
      return integrate(n * f);
    }
    case ObservableKind::Energy: {
      const auto grad = st.S.gradient();
      const auto A = pot.vector(g, st.time);
      const RealField V = pot.scalar(g, st.time);
      std::vector<double> h(g.size());
      for (std::size_t i = 0; i < h.size(); ++i) {
        double k2 = 0.0;
        for (int a = 0; a < g.dims(); ++a) {
          const double k = grad[a][i] - params.charge * A[a][i];
          k2 += k * k;
        }
        h[i] = k2 / (2 * params.mass) + V[i];
      }
      RealField f(g, std::move(h));
      if (use_sigma) f += sigma_squared(n, params).value * (1.0 / (2 * params.mass));
      return integrate(n * f);
    }
    case ObservableKind::AngularMomentumZ:
    case ObservableKind::AngularMomentumZSquare: {
      require_plane(g, "l_z");
      const RealField x = coordinate(g, 0), y = coordinate(g, 1);
      const RealField lz = x * st.S.gradient(1) - y * st.S.gradient(0);
      if (kind == ObservableKind::AngularMomentumZ) return integrate(n * lz);
      RealField f = lz * lz;
      if (use_sigma) {
        const MomentTensor c = stochastic_moment_correction(n, params);
        f += x * x * c(1, 1) + y * y * c(0, 0) - (x * y * c(0, 1)) * 2.0;
      }
      return integrate(n * f);
    }
    case ObservableKind::MomentumPower: break;
  }
  throw InvalidArgument("unknown observable");
}

double expect_quantum(const WaveFunction& psi, const PotentialSpec& pot, const Observable& obs) {
  const GridSpec& g = psi.grid();
  const double hbar = psi.params.hbar;
  const ComplexField& f = psi.field;
  switch (obs.kind) {
    case ObservableKind::PositionMean:
      require_axis(g, obs.axis);
      return integrate(abs_squared(f) * coordinate(g, obs.axis));
    case ObservableKind::FofQ:
      return integrate(abs_squared(f) * table_of(obs, g));
    case ObservableKind::MomentumMean: {
      require_axis(g, obs.axis);
      const ComplexField d = spectral::gradient(f, obs.axis);
      cplx s = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) s += std::conj(f[i]) * d[i];
      return hermitian(cplx(0.0, -hbar) * s * g.cell_volume(), "<p>");
    }
    case ObservableKind::MomentumSquare: {
      require_axis(g, obs.axis);
      return hbar * hbar * integrate(abs_squared(spectral::gradient(f, obs.axis)));
    }
    case ObservableKind::MomentumPower: {
      require_axis(g, obs.axis);
      const ComplexField phat = to_momentum_space(f, hbar);
      const RealField p = coordinate(phat.grid(), obs.axis);
      return integrate(abs_squared(phat) * p.map([&](double x) { return std::pow(x, obs.power); }));
    }
    case ObservableKind::Energy:
      return energy_functional(psi, pot);
    case ObservableKind::AngularMomentumZ:
    case ObservableKind::AngularMomentumZSquare: {
      require_plane(g, "l_z");
      const RealField x = coordinate(g, 0), y = coordinate(g, 1);
      const ComplexField dx = spectral::gradient(f, 0), dy = spectral::gradient(f, 1);
      std::vector<cplx> L(f.size());
      for (std::size_t i = 0; i < L.size(); ++i) L[i] = x[i] * dy[i] - y[i] * dx[i];
      if (obs.kind == ObservableKind::AngularMomentumZSquare) {
        double s = 0.0;
        for (const auto& z : L) s += std::norm(z);
        return hbar * hbar * s * g.cell_volume();
      }
      cplx s = 0.0;
      for (std::size_t i = 0; i < L.size(); ++i) s += std::conj(f[i]) * L[i];
      return hermitian(cplx(0.0, -hbar) * s * g.cell_volume(), "<l_z>");
    }
  }
  throw InvalidArgument("unknown observable");
}

namespace {
double spread(double m1, double m2) { return std::sqrt(std::max(0.0, m2 - m1 * m1)); }
}  // namespace

double position_spread(const WaveFunction& psi, int axis) {
  const PotentialSpec free = PotentialSpec::free();
  return spread(expect_quantum(psi, free, Observable::position_mean(axis)),
                expect_quantum(psi, free, Observable::position_square(psi.grid(), axis)));
}

double momentum_spread(const WaveFunction& psi, int axis) {
  const PotentialSpec free = PotentialSpec::free();
  return spread(expect_quantum(psi, free, Observable::momentum_mean(axis)),
                expect_quantum(psi, free, Observable::momentum_square(axis)));
}

double position_spread(const QStochasticState& st, int axis) {
  const PotentialSpec free = PotentialSpec::free();
  const PhysicalParams p;
  return spread(expect_classical(st, free, p, Observable::position_mean(axis)),
                expect_classical(st, free, p, Observable::position_square(st.grid(), axis)));
}

double momentum_spread(const QStochasticState& st, const PhysicalParams& params, int axis,
                       bool use_sigma) {
  const PotentialSpec free = PotentialSpec::free();
  return spread(expect_classical(st, free, params, Observable::momentum_mean(axis), use_sigma),
                expect_classical(st, free, params, Observable::momentum_square(axis), use_sigma));
}

}  // namespace madelab
