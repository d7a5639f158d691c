#include "madelab/wigner/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "madelab/core/fft.hpp"
#include "madelab/core/spectral.hpp"

namespace madelab {

RealField WignerField::position_marginal() const {
  const int nq = q_grid.points(0), np = p_grid.points(0);
  std::vector<double> v(nq, 0.0);
  for (int i = 0; i < nq; ++i) {
    for (int j = 0; j < np; ++j) v[i] += at(i, j);
    v[i] *= p_grid.spacing(0);
  }
  return RealField(q_grid, std::move(v));
}

RealField WignerField::momentum_marginal() const {
  const int nq = q_grid.points(0), np = p_grid.points(0);
  std::vector<double> v(np, 0.0);
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < np; ++j) v[j] += at(i, j);
  for (auto& x : v) x *= q_grid.spacing(0);
  return RealField(p_grid, std::move(v));
}

double WignerField::total() const { return integrate(position_marginal()); }

double WignerField::min() const { return *std::min_element(values.begin(), values.end()); }

double WignerField::nearest(double q, double p) const {
  auto index = [](const GridSpec& g, double x) {
    const long i = std::lround((x - g.origin(0)) / g.spacing(0));
    return static_cast<int>(((i % g.points(0)) + g.points(0)) % g.points(0));
  };
  return at(index(q_grid, q), index(p_grid, p));
}

WignerField wigner_transform(const WaveFunction& psi) {
  const GridSpec& g = psi.grid();
  if (g.dims() != 1) throw InvalidArgument("wigner_transform is implemented for 1D grids");
  const int n = g.points(0);
  const double h = g.spacing(0), hbar = psi.params.hbar;
  const GridSpec pg = g.momentum_grid(hbar);

  // c[m][i] = conj(psi(q_i + m h/2)) psi(q_i - m h/2), m = -n/2 .. n/2-1.
  std::vector<std::vector<cplx>> c(n);
  for (int m = -n / 2; m < n / 2; ++m) {
    const double s = 0.5 * m * h;
    const ComplexField plus = spectral::shift(psi.field, {s, 0.0});
    const ComplexField minus = spectral::shift(psi.field, {-s, 0.0});
    auto& row = c[(m + n) % n];
    row.resize(n);
    for (int i = 0; i < n; ++i) row[i] = std::conj(plus[i]) * minus[i];
  }

  // Momentum node j carries p = (j - n/2) dp; the kernel exp(i p x / hbar)
  // is exp(2 pi i l m / n) with l = j - n/2.
  WignerField w{g, pg, std::vector<double>(static_cast<std::size_t>(n) * n), psi.params};
  const GridSpec line = GridSpec::line(g.extent(0), n);
  const double scale = h / (2 * std::numbers::pi * hbar);
  std::vector<cplx> buf(n);
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < n; ++m) buf[m] = c[m][i];
    fft::backward(line, buf);
    for (int j = 0; j < n; ++j) {
      const int l = j - n / 2;
      const cplx v = scale * buf[(l + n) % n];
      w.values[static_cast<std::size_t>(i) * n + j] = v.real();
      w.discarded_imaginary = std::max(w.discarded_imaginary, std::abs(v.imag()));
    }
  }
  return w;
}

}  // namespace madelab
