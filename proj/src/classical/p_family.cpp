#include "madelab/classical/p_family.hpp"

#include "madelab/classical/hamilton_jacobi.hpp"
#include "madelab/core/spectral.hpp"

namespace madelab {

namespace {

// V = w0 + w1.q + 1/2 sum w2 q^2 in absolute q; pc is the grid centre.
//   b0' = |pc|^2/2m + w0 + w1.b1 + 1/2 w2 b1^2
//   b1' = pc/m + w1 b2 + w2 b1 b2
//   b2' = 1/m + w2 b2^2
//   s'  = (w1 + w2 gB) grad s + 1/2 w2 (grad s)^2
//   n'  = d_p(n (w1 + w2 grad S))
class PRhs {
 public:
  PRhs(const GridSpec& g, const PotentialSpec& pot, const PhysicalParams& p)
      : g_(g), m_(p.mass), dims_(g.dims()) {
    w_ = pot.quadratic_part({0.0, 0.0});
    for (int a = 0; a < dims_; ++a) pc_[a] = g.center(a);
    for (int a = 0; a < dims_; ++a) {
      d_.push_back(hj::tapered_offset(g, a));
      std::vector<double> raw(g.size());
      for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = g.node(i)[a] - pc_[a];
      raw_.push_back(std::move(raw));
    }
  }

  hj::FieldState operator()(const hj::FieldState& y, double) const {
    const std::size_t n = g_.size();
    const auto& bg = y.bg;
    hj::FieldState dy;
    dy.s.assign(n, 0.0);
    dy.n.assign(n, 0.0);
    dy.bg.b0 = w_.v0;
    for (int a = 0; a < dims_; ++a) {
      dy.bg.b0 += pc_[a] * pc_[a] / (2 * m_) + w_.v1[a] * bg.b1[a] +
                  0.5 * w_.v2[a] * bg.b1[a] * bg.b1[a];
      dy.bg.b1[a] = pc_[a] / m_ + w_.v1[a] * bg.b2[a] + w_.v2[a] * bg.b1[a] * bg.b2[a];
      dy.bg.b2[a] = 1.0 / m_ + w_.v2[a] * bg.b2[a] * bg.b2[a];
    }
    const RealField s(g_, y.s);
    for (int a = 0; a < dims_; ++a) {
      const RealField gs = spectral::gradient(s, a);
      std::vector<double> flux(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double gb = bg.b1[a] + bg.b2[a] * d_[a][i];
        dy.s[i] += (w_.v1[a] + w_.v2[a] * gb) * gs[i] + 0.5 * w_.v2[a] * gs[i] * gs[i];
        const double gp = bg.b1[a] + bg.b2[a] * raw_[a][i] + gs[i];
        flux[i] = y.n[i] * (w_.v1[a] + w_.v2[a] * gp);
      }
      const RealField div = spectral::gradient(RealField(g_, std::move(flux)), a);
      for (std::size_t i = 0; i < n; ++i) dy.n[i] += div[i];
    }
    return dy;
  }

 private:
  GridSpec g_;
  double m_;
  int dims_;
  QuadraticPart w_;
  Point pc_{};
  std::vector<std::vector<double>> d_;
  std::vector<std::vector<double>> raw_;
};

}  // namespace

PStochasticState evolve_p_state(const PStochasticState& st,
                                const PotentialSpec& pot,
                                const PhysicalParams& params, double dt,
                                int steps) {
  params.validate();
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (steps < 0) throw InvalidArgument("steps must be non-negative");
  if (pot.kind() == PotentialKind::Table || pot.has_vector_potential())
    throw UnsupportedPotential(
        "p-stochastic evolution closes only for A = 0 and a free, uniform-field "
        "or harmonic potential; got " + pot.describe());
  const GridSpec& g = st.grid();
  const PRhs rhs(g, pot, params);
  hj::FieldState y = hj::pack(st.n, st.S);
  for (int k = 0; k < steps; ++k) {
    const double t = st.time + k * dt;
    try {
      y = hj::rk4_step(y, t, dt, rhs);
    } catch (const InvalidField&) {
      throw CausticError(t + dt, "field became non-finite");
    }
    hj::check_caustic(g, y, t + dt);
  }
  return PStochasticState(hj::unpack_density(g, y), hj::unpack_action(g, y),
                          st.time + steps * dt);
}

double p_state_mean_position(const PStochasticState& st, int axis) {
  return integrate(st.n * st.S.gradient(axis));
}

double p_state_mean_momentum(const PStochasticState& st, int axis) {
  return integrate(st.n * coordinate(st.grid(), axis));
}

double p_state_energy(const PStochasticState& st, const PotentialSpec& pot,
                      const PhysicalParams& params) {
  const GridSpec& g = st.grid();
  const auto q = st.S.gradient();
  std::vector<double> h(g.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Point p = g.node(i);
    Point qi{};
    double k2 = 0.0;
    for (int a = 0; a < g.dims(); ++a) {
      k2 += p[a] * p[a];
      qi[a] = q[a][i];
    }
    h[i] = k2 / (2 * params.mass) + pot.scalar_at(qi, st.time);
  }
  return integrate(st.n * RealField(g, std::move(h)));
}

}  // namespace madelab
