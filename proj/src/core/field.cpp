#include "madelab/core/field.hpp"

#include <cmath>
#include <string>

#include "madelab/core/diagnostics.hpp"

namespace madelab {

namespace {
bool finite(double v) { return std::isfinite(v); }
bool finite(const cplx& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
}  // namespace

template <typename T>
Field<T>::Field(GridSpec grid, std::vector<T> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size())
    throw InvalidField("field has " + std::to_string(samples_.size()) +
                       " samples for a grid of " +
                       std::to_string(grid_.size()) + " nodes");
  for (std::size_t i = 0; i < samples_.size(); ++i)
    if (!finite(samples_[i]))
      throw InvalidField("non-finite sample at node " + std::to_string(i));
}

template <typename T>
Field<T> Field<T>::sample(const GridSpec& grid,
                          const std::function<T(const Point&)>& f) {
  std::vector<T> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.node(i));
  return Field(grid, std::move(out));
}

template <typename T>
Field<T>& Field<T>::operator+=(const Field& o) {
  require_same_grid(grid_, o.grid_, "field addition");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
  return *this;
}

template <typename T>
Field<T>& Field<T>::operator-=(const Field& o) {
  require_same_grid(grid_, o.grid_, "field subtraction");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= o.samples_[i];
  return *this;
}

template <typename T>
Field<T>& Field<T>::operator*=(T s) {
  for (auto& v : samples_) v *= s;
  return *this;
}

template class Field<double>;
template class Field<cplx>;

RealField operator*(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "field product");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return RealField(a.grid(), std::move(out));
}

ComplexField operator*(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a.grid(), b.grid(), "field product");
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return ComplexField(a.grid(), std::move(out));
}

double integrate(const RealField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().cell_volume();
}

cplx integrate(const ComplexField& f) {
  cplx s = 0.0;
  for (const cplx& v : f.values()) s += v;
  return s * f.grid().cell_volume();
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_difference(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "max_abs_difference");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_difference(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a.grid(), b.grid(), "max_abs_difference");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const cplx& v : f.values()) s += std::norm(v);
  return std::sqrt(s * f.grid().cell_volume());
}

double l2_norm(const RealField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.grid().cell_volume());
}

RealField abs_squared(const ComplexField& f) {
  return f.map([](const cplx& v) { return std::norm(v); });
}

RealField real_part(const ComplexField& f) {
  return f.map([](const cplx& v) { return v.real(); });
}

RealField imag_part(const ComplexField& f) {
  return f.map([](const cplx& v) { return v.imag(); });
}

ComplexField to_complex(const RealField& f) {
  return f.map([](const double& v) { return cplx(v, 0.0); });
}

RealField coordinate(const GridSpec& grid, int axis) {
  return RealField::sample(grid, [axis](const Point& q) { return q[axis]; });
}

void check_boundary_tail(const RealField& density, const char* context,
                         double threshold) {
  const GridSpec& g = density.grid();
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const auto idx = g.unflatten(i);
    bool in_strip = false;
    for (int a = 0; a < g.dims(); ++a) {
      const int strip = std::max(1, g.points(a) / 32);
      if (idx[a] < strip || idx[a] >= g.points(a) - strip) in_strip = true;
    }
    const double v = std::abs(density[i]);
    total += v;
    if (in_strip) edge += v;
  }
  if (total > 0.0 && edge / total > threshold)
    warn("boundary-tail", std::string(context) +
                              ": density mass near the box edge is " +
                              std::to_string(edge / total));
}

}  // namespace madelab
