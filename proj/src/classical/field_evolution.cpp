#include "madelab/classical/field_evolution.hpp"

#include <cmath>
#include <string>

#include "madelab/classical/hamilton_jacobi.hpp"
#include "madelab/core/diagnostics.hpp"
#include "madelab/core/interpolation.hpp"
#include "madelab/core/spectral.hpp"

namespace madelab {

namespace {

// Right-hand side of the q-family system in background + residual form.
// With gB = b1 + b2 d and w = grad s - eA:
//   b0' = -|b1|^2/2m - v0,  b1' = -b1 b2/m - v1,  b2' = -b2^2/m - v2
//   s'  = -(gB~.w + |w|^2/2)/m - V_rest   (gB~ uses the tapered offset)
//   n'  = -div(n (gB + w)/m)
class QRhs {
 public:
  QRhs(const GridSpec& g, const PotentialSpec& pot, const PhysicalParams& p)
      : g_(g), pot_(pot), params_(p), dims_(g.dims()) {
    for (int a = 0; a < dims_; ++a) c_[a] = g.center(a);
    qp_ = pot.quadratic_part(c_);
    for (int a = 0; a < dims_; ++a) {
      d_.push_back(hj::tapered_offset(g, a));
      std::vector<double> raw(g.size());
      for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = g.node(i)[a] - c_[a];
      raw_.push_back(std::move(raw));
    }
    static_ = !pot.is_time_dependent();
    if (static_) {
      rest_ = pot.remainder(g, 0.0).data();
      vec_ = vector_data(0.0);
    }
  }

  hj::FieldState operator()(const hj::FieldState& y, double t) const {
    const std::size_t n = g_.size();
    std::vector<double> rest = static_ ? rest_ : pot_.remainder(g_, t).data();
    const std::vector<std::vector<double>> vec = static_ ? vec_ : vector_data(t);
    const RealField s(g_, y.s);
    const auto& bg = y.bg;
    const double m = params_.mass, e = params_.charge;

    hj::FieldState dy;
    dy.s.assign(n, 0.0);
    dy.n.assign(n, 0.0);
    dy.bg.b0 = -qp_.v0;
    for (int a = 0; a < dims_; ++a) {
      dy.bg.b0 -= bg.b1[a] * bg.b1[a] / (2 * m);
      dy.bg.b1[a] = -bg.b1[a] * bg.b2[a] / m - qp_.v1[a];
      dy.bg.b2[a] = -bg.b2[a] * bg.b2[a] / m - qp_.v2[a];
    }

    std::vector<RealField> grad_s;
    for (int a = 0; a < dims_; ++a) {
      grad_s.push_back(spectral::gradient(s, a));
      std::vector<double> flux(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double w = grad_s[a][i] - e * vec[a][i];
        const double gb = bg.b1[a] + bg.b2[a] * d_[a][i];
        dy.s[i] -= (gb * w + 0.5 * w * w) / m;
        flux[i] = y.n[i] * (bg.b1[a] + bg.b2[a] * raw_[a][i] + w) / m;
      }
      const RealField div = spectral::gradient(RealField(g_, std::move(flux)), a);
      for (std::size_t i = 0; i < n; ++i) dy.n[i] -= div[i];
    }
    for (std::size_t i = 0; i < n; ++i) dy.s[i] -= rest[i];

    dy.tracers.resize(y.tracers.size());
    for (std::size_t k = 0; k < y.tracers.size(); ++k) {
      const Point& q = y.tracers[k];
      const Point A = pot_.vector_at(q, t);
      for (int a = 0; a < dims_; ++a)
        dy.tracers[k][a] = (bg.b1[a] + bg.b2[a] * (q[a] - c_[a]) +
                            interpolate(grad_s[a], q) - e * A[a]) / m;
    }
    return dy;
  }

  // Largest |grad S - eA|/m times 1/spacing over the grid.
  double advection_rate(const hj::FieldState& y, double t) const {
    const RealField s(g_, y.s);
    const auto vec = static_ ? vec_ : vector_data(t);
    double rate = 0.0;
    for (int a = 0; a < dims_; ++a) {
      const RealField gs = spectral::gradient(s, a);
      for (std::size_t i = 0; i < g_.size(); ++i) {
        const double u = (y.bg.b1[a] + y.bg.b2[a] * raw_[a][i] + gs[i] -
                          params_.charge * vec[a][i]) / params_.mass;
        rate = std::max(rate, std::abs(u) / g_.spacing(a));
      }
    }
    return rate;
  }

 private:
  std::vector<std::vector<double>> vector_data(double t) const {
    std::vector<std::vector<double>> out;
    for (const auto& f : pot_.vector(g_, t)) out.push_back(f.data());
    return out;
  }

  GridSpec g_;
  const PotentialSpec& pot_;
  PhysicalParams params_;
  int dims_;
  Point c_{};
  QuadraticPart qp_;
  std::vector<std::vector<double>> d_;
  std::vector<std::vector<double>> raw_;
  bool static_ = true;
  std::vector<double> rest_;
  std::vector<std::vector<double>> vec_;
};

constexpr double kCourant = 0.2;

hj::FieldState advance(const GridSpec& g, const QRhs& rhs, hj::FieldState y,
                       double t0, double dt, int steps,
                       const std::function<void(const hj::FieldState&, int)>& each) {
  bool warned = false;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    if (!warned && dt * rhs.advection_rate(y, t) > kCourant) {
      warn("cfl", "dt * max|u| / spacing exceeds " + std::to_string(kCourant) +
                      " at t=" + std::to_string(t));
      warned = true;
    }
    try {
      y = hj::rk4_step(y, t, dt, rhs);
    } catch (const InvalidField&) {
      throw CausticError(t + dt, "field became non-finite");
    }
    hj::check_caustic(g, y, t + dt);
    if (each) each(y, k + 1);
  }
  return y;
}

void check_run(const PhysicalParams& params, double dt, int steps) {
  params.validate();
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (steps < 0) throw InvalidArgument("steps must be non-negative");
}

}  // namespace

QStochasticState evolve_q_state(const QStochasticState& st,
                                const PotentialSpec& pot,
                                const PhysicalParams& params, double dt,
                                int steps, const QStateObserver& observer) {
  check_run(params, dt, steps);
  const GridSpec& g = st.grid();
  const QRhs rhs(g, pot, params);
  std::function<void(const hj::FieldState&, int)> each;
  if (observer)
    each = [&](const hj::FieldState& y, int k) {
      observer(QStochasticState(hj::unpack_density(g, y), hj::unpack_action(g, y),
                                st.time + k * dt),
               k);
    };
  const hj::FieldState y = advance(g, rhs, hj::pack(st.n, st.S), st.time, dt, steps, each);
  return QStochasticState(hj::unpack_density(g, y), hj::unpack_action(g, y),
                          st.time + steps * dt);
}

RealField classical_hamiltonian(const QStochasticState& st,
                                const PotentialSpec& pot,
                                const PhysicalParams& params) {
  const GridSpec& g = st.grid();
  const auto grad = st.S.gradient();
  const auto vec = pot.vector(g, st.time);
  const RealField v = pot.scalar(g, st.time);
  std::vector<double> h(g.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    double k2 = 0.0;
    for (int a = 0; a < g.dims(); ++a) {
      const double k = grad[a][i] - params.charge * vec[a][i];
      k2 += k * k;
    }
    h[i] = k2 / (2 * params.mass) + v[i];
  }
  return RealField(g, std::move(h));
}

TrajectoryBundle classical_trajectories(const QStochasticState& st,
                                        const std::vector<Point>& starts,
                                        const PotentialSpec& pot,
                                        const PhysicalParams& params,
                                        double T, double dt) {
  if (!(T >= 0.0)) throw InvalidArgument("horizon must be non-negative");
  const int steps = static_cast<int>(std::llround(T / dt));
  check_run(params, dt, steps);
  if (std::abs(steps * dt - T) > 1e-9 * std::max(1.0, T))
    throw InvalidArgument("horizon must be a whole number of steps");
  const GridSpec& g = st.grid();
  const QRhs rhs(g, pot, params);
  TrajectoryBundle bundle{{}, st};
  bundle.trajectories.resize(starts.size());

  auto record = [&](const hj::FieldState& y, int k) {
    const ActionGradientSampler grad(hj::unpack_action(g, y));
    for (std::size_t j = 0; j < starts.size(); ++j) {
      auto& tr = bundle.trajectories[j];
      tr.times.push_back(st.time + k * dt);
      tr.q.push_back(y.tracers[j]);
      tr.p.push_back(grad(y.tracers[j]));
    }
  };
  hj::FieldState y0 = hj::pack(st.n, st.S, starts);
  record(y0, 0);
  advance(g, rhs, std::move(y0), st.time, dt, steps, record);
  return bundle;
}

}  // namespace madelab
