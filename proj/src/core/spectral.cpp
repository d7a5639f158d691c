#include "madelab/core/spectral.hpp"

#include <cmath>
#include <numbers>

#include "madelab/core/fft.hpp"

namespace madelab::spectral {

namespace {

using Multiplier = std::function<cplx(int m0, int m1)>;

std::vector<cplx> apply(const GridSpec& g, std::vector<cplx> data,
                        const Multiplier& mult) {
  fft::forward(g, data);
  const double inv = 1.0 / static_cast<double>(g.size());
  for (int m0 = 0; m0 < g.points(0); ++m0)
    for (int m1 = 0; m1 < g.points(1); ++m1) {
      const std::size_t i = g.flatten(m0, m1);
      data[i] *= mult(m0, m1) * inv;
    }
  fft::backward(g, data);
  return data;
}

std::vector<cplx> complexify(const RealField& f) {
  return std::vector<cplx>(f.values().begin(), f.values().end());
}

RealField realify(const GridSpec& g, const std::vector<cplx>& d) {
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].real();
  return RealField(g, std::move(out));
}

bool is_nyquist(int m, int n) { return n % 2 == 0 && m == n / 2; }

Multiplier first_derivative(const GridSpec& g, int axis) {
  auto k = fft::wavenumbers(g, axis);
  const int n = g.points(axis);
  return [k = std::move(k), n, axis](int m0, int m1) {
    const int m = axis == 0 ? m0 : m1;
    if (is_nyquist(m, n)) return cplx(0.0);
    return cplx(0.0, k[m]);
  };
}

Multiplier mixed(const GridSpec& g, int a, int b) {
  if (a == b) {
    auto k = fft::wavenumbers(g, a);
    return [k = std::move(k), a](int m0, int m1) {
      const int m = a == 0 ? m0 : m1;
      return cplx(-k[m] * k[m]);
    };
  }
  auto fa = first_derivative(g, a);
  auto fb = first_derivative(g, b);
  return [fa, fb](int m0, int m1) { return fa(m0, m1) * fb(m0, m1); };
}

void check_axis(const GridSpec& g, int axis) {
  if (axis < 0 || axis >= g.dims())
    throw InvalidArgument("axis " + std::to_string(axis) +
                          " out of range for a " + std::to_string(g.dims()) +
                          "D grid");
}

}  // namespace

RealField gradient(const RealField& f, int axis) {
  check_axis(f.grid(), axis);
  return realify(f.grid(), apply(f.grid(), complexify(f),
                                 first_derivative(f.grid(), axis)));
}

ComplexField gradient(const ComplexField& f, int axis) {
  check_axis(f.grid(), axis);
  return ComplexField(f.grid(), apply(f.grid(), f.data(),
                                      first_derivative(f.grid(), axis)));
}

std::vector<RealField> gradient(const RealField& f) {
  std::vector<RealField> out;
  for (int a = 0; a < f.grid().dims(); ++a) out.push_back(gradient(f, a));
  return out;
}

RealField second_derivative(const RealField& f, int axis) {
  return mixed_derivative(f, axis, axis);
}

ComplexField second_derivative(const ComplexField& f, int axis) {
  return mixed_derivative(f, axis, axis);
}

RealField mixed_derivative(const RealField& f, int a, int b) {
  check_axis(f.grid(), a);
  check_axis(f.grid(), b);
  return realify(f.grid(),
                 apply(f.grid(), complexify(f), mixed(f.grid(), a, b)));
}

ComplexField mixed_derivative(const ComplexField& f, int a, int b) {
  check_axis(f.grid(), a);
  check_axis(f.grid(), b);
  return ComplexField(f.grid(),
                      apply(f.grid(), f.data(), mixed(f.grid(), a, b)));
}

ComplexField laplacian(const ComplexField& f) {
  ComplexField out = second_derivative(f, 0);
  if (f.grid().dims() == 2) out += second_derivative(f, 1);
  return out;
}

ComplexField shift(const ComplexField& f, const Point& offset) {
  const GridSpec& g = f.grid();
  std::array<std::vector<double>, 2> k{fft::wavenumbers(g, 0),
                                       fft::wavenumbers(g, 1)};
  const Multiplier mult = [&](int m0, int m1) {
    cplx r = 1.0;
    const int m[2] = {m0, m1};
    for (int a = 0; a < g.dims(); ++a) {
      const double phase = k[a][m[a]] * offset[a];
      // A real Nyquist mode stays real under a shift.
      r *= is_nyquist(m[a], g.points(a)) ? cplx(std::cos(phase))
                                         : std::polar(1.0, phase);
    }
    return r;
  };
  return ComplexField(g, apply(g, f.data(), mult));
}

RealField integrate_gradient(const std::vector<RealField>& components) {
  if (components.empty()) throw InvalidArgument("integrate_gradient: no input");
  const GridSpec& g = components.front().grid();
  if (static_cast<int>(components.size()) != g.dims())
    throw InvalidArgument("integrate_gradient: need one component per axis");
  std::array<std::vector<double>, 2> k{fft::wavenumbers(g, 0),
                                       fft::wavenumbers(g, 1)};
  std::vector<cplx> acc(g.size(), 0.0);
  std::vector<std::vector<cplx>> hats;
  for (const auto& c : components) {
    require_same_grid(g, c.grid(), "integrate_gradient");
    std::vector<cplx> d = complexify(c);
    fft::forward(g, d);
    hats.push_back(std::move(d));
  }
  // phi_hat = -i (k . A_hat) / |k|^2, the least-squares inverse of i k.
  for (int m0 = 0; m0 < g.points(0); ++m0)
    for (int m1 = 0; m1 < g.points(1); ++m1) {
      const std::size_t i = g.flatten(m0, m1);
      const int m[2] = {m0, m1};
      double k2 = 0.0;
      cplx dot = 0.0;
      for (int a = 0; a < g.dims(); ++a) {
        if (is_nyquist(m[a], g.points(a))) continue;
        k2 += k[a][m[a]] * k[a][m[a]];
        dot += k[a][m[a]] * hats[a][i];
      }
      acc[i] = k2 > 0.0 ? cplx(0.0, -1.0) * dot / k2 : cplx(0.0);
    }
  fft::backward(g, acc);
  const double inv = 1.0 / static_cast<double>(g.size());
  for (auto& v : acc) v *= inv;
  return realify(g, acc);
}

}  // namespace madelab::spectral

namespace madelab {

namespace {

// Phase and scale linking FFT bins to the centred momentum grid.
struct MomentumMap {
  const GridSpec& q;
  GridSpec p;
  double hbar;

  int bin(int axis, int k) const {
    const int n = q.points(axis);
    return ((k - n / 2) % n + n) % n;
  }
  double scale() const {
    double s = q.cell_volume();
    for (int a = 0; a < q.dims(); ++a)
      s /= std::sqrt(2.0 * std::numbers::pi * hbar);
    return s;
  }
  /// exp(-i p.q0/hbar) from the position-grid origin.
  cplx origin_phase(int k0, int k1) const {
    double ph = -p.coord(0, k0) * q.origin(0);
    if (q.dims() == 2) ph -= p.coord(1, k1) * q.origin(1);
    return std::polar(1.0, ph / hbar);
  }
};

}  // namespace

ComplexField to_momentum_space(const ComplexField& psi, double hbar) {
  const GridSpec& g = psi.grid();
  MomentumMap map{g, g.momentum_grid(hbar), hbar};
  std::vector<cplx> d = psi.data();
  fft::forward(g, d);
  std::vector<cplx> out(g.size());
  const double s = map.scale();
  for (int k0 = 0; k0 < g.points(0); ++k0)
    for (int k1 = 0; k1 < g.points(1); ++k1) {
      const int b1 = g.dims() == 2 ? map.bin(1, k1) : 0;
      out[g.flatten(k0, k1)] =
          s * map.origin_phase(k0, k1) * d[g.flatten(map.bin(0, k0), b1)];
    }
  return ComplexField(map.p, std::move(out));
}

ComplexField from_momentum_space(const ComplexField& psi_hat,
                                 const GridSpec& position_grid, double hbar) {
  const GridSpec& g = position_grid;
  MomentumMap map{g, g.momentum_grid(hbar), hbar};
  require_same_grid(map.p, psi_hat.grid(), "from_momentum_space");
  std::vector<cplx> d(g.size());
  const double s = map.scale();
  const double inv = 1.0 / (s * static_cast<double>(g.size()));
  for (int k0 = 0; k0 < g.points(0); ++k0)
    for (int k1 = 0; k1 < g.points(1); ++k1) {
      const int b1 = g.dims() == 2 ? map.bin(1, k1) : 0;
      d[g.flatten(map.bin(0, k0), b1)] =
          inv * std::conj(map.origin_phase(k0, k1)) *
          psi_hat[g.flatten(k0, k1)];
    }
  fft::backward(g, d);
  return ComplexField(g, std::move(d));
}

}  // namespace madelab
