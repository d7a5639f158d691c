#include "madelab/quantum/split_step.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "madelab/bridge/gauge.hpp"
#include "madelab/core/diagnostics.hpp"
#include "madelab/core/fft.hpp"
#include "madelab/core/spectral.hpp"

namespace madelab {

namespace {

// Phi(q, t) with grad Phi = A: a static part fitted to the A table plus the
// stacked gauge terms.
class GaugeFrame {
 public:
  GaugeFrame(const GridSpec& g, const PotentialSpec& pot, double charge) : g_(g) {
    if (const auto& A = pot.static_vector_potential()) {
      RealField phi = spectral::integrate_gradient(*A);
      const auto fit = spectral::gradient(phi);
      double scale = 1.0, err = 0.0;
      for (std::size_t a = 0; a < A->size(); ++a) {
        scale = std::max(scale, max_abs((*A)[a]));
        err = std::max(err, max_abs_difference(fit[a], (*A)[a]));
      }
      if (err > 1e-10 * scale)
        throw UngaugeablePotential(
            "vector potential is not the gradient of a periodic function (mismatch " +
            std::to_string(err) + "); the split-step stepper needs an A = 0 frame");
      static_ = std::move(phi);
    }
    for (const auto& term : pot.gauge_terms()) {
      if (term.charge != charge)
        throw UngaugeablePotential("gauge term " + term.phi.label +
                                   " carries a charge different from the state's");
      require_periodic_gauge(term.phi, g, 0.0);
      terms_.push_back(term.phi);
    }
    active_ = static_.has_value() || !terms_.empty();
  }

  bool active() const { return active_; }

  std::vector<double> values(double t) const {
    std::vector<double> v(g_.size(), 0.0);
    if (static_) v = static_->data();
    for (const auto& phi : terms_)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += phi.value(g_.node(i), t);
    return v;
  }

 private:
  GridSpec g_;
  std::optional<RealField> static_;
  std::vector<GaugeFunction> terms_;
  bool active_ = false;
};

void rotate(std::vector<cplx>& psi, const std::vector<double>& phi, double k) {
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= std::polar(1.0, k * phi[i]);
}

}  // namespace

WaveFunction split_step_propagate(const WaveFunction& psi, const PotentialSpec& pot,
                                  double dt, int steps, const WaveObserver& observer) {
  if (!std::isfinite(dt) || dt == 0.0) throw InvalidArgument("dt must be finite and nonzero");
  if (steps < 0) throw InvalidArgument("steps must be non-negative");
  const GridSpec& g = psi.grid();
  const auto& pr = psi.params;
  const double hbar = pr.hbar, m = pr.mass;
  const GaugeFrame frame(g, pot, pr.charge);
  const PotentialSpec bare = pot.scalar_only();
  const double k_gauge = pr.charge / hbar;

  const std::vector<double> V = bare.scalar(g, 0.0).data();
  const double c_nl = 5.0 * pr.beta * pr.beta * hbar * hbar / (24.0 * m);

  // exp(-i dt hbar |k|^2 / 2m) / N on the FFT layout.
  std::vector<cplx> kinetic(g.size());
  {
    const auto k0 = fft::wavenumbers(g, 0);
    const auto k1 = g.dims() == 2 ? fft::wavenumbers(g, 1) : std::vector<double>{0.0};
    const double inv_n = 1.0 / static_cast<double>(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto [i0, i1] = g.unflatten(i);
      const double k2 = k0[i0] * k0[i0] + k1[i1] * k1[i1];
      kinetic[i] = std::polar(inv_n, -dt * hbar * k2 / (2 * m));
    }
  }

  std::vector<cplx> y(psi.field.data());
  if (frame.active()) rotate(y, frame.values(psi.time), -k_gauge);

  auto potential_half = [&](std::vector<cplx>& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      double v = V[i];
      if (c_nl != 0.0) v += c_nl * std::pow(std::norm(f[i]), 2.0 / 3.0);
      f[i] *= std::polar(1.0, -0.5 * dt * v / hbar);
    }
  };

  {
    double vmax = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      vmax = std::max(vmax, std::abs(V[i] + c_nl * std::pow(std::norm(y[i]), 2.0 / 3.0)));
    if (std::abs(dt) * vmax / hbar > std::numbers::pi / 4)
      warn("dt", "potential phase per step " + std::to_string(std::abs(dt) * vmax / hbar) +
                     " exceeds pi/4");
  }

  auto emit = [&](int k) {
    const double t = psi.time + k * dt;
    std::vector<cplx> out(y);
    if (frame.active()) rotate(out, frame.values(t), k_gauge);
    return WaveFunction(ComplexField(g, std::move(out)), pr, t);
  };

  for (int k = 0; k < steps; ++k) {
    potential_half(y);
    fft::forward(g, y);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= kinetic[i];
    fft::backward(g, y);
    potential_half(y);
    if (observer) observer(emit(k + 1), k + 1);
  }
  return emit(steps);
}

}  // namespace madelab
