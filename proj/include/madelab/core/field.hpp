#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "madelab/core/grid.hpp"

namespace madelab {

using cplx = std::complex<double>;

/// Samples of a scalar on every node of a grid. Always finite.
template <typename T>
class Field {
 public:
  using value_type = T;

  Field(GridSpec grid, std::vector<T> samples);
  static Field zeros(const GridSpec& grid) {
    return Field(grid, std::vector<T>(grid.size(), T{}));
  }
  static Field constant(const GridSpec& grid, T value) {
    return Field(grid, std::vector<T>(grid.size(), value));
  }
  static Field sample(const GridSpec& grid,
                      const std::function<T(const Point&)>& f);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return samples_.size(); }
  std::span<const T> values() const { return samples_; }
  const std::vector<T>& data() const { return samples_; }
  const T& operator[](std::size_t i) const { return samples_[i]; }

  /// Pointwise map into a new field (validated).
  template <typename F>
  auto map(F&& f) const {
    using R = std::invoke_result_t<F, const T&>;
    std::vector<R> out(samples_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(samples_[i]);
    return Field<R>(grid_, std::move(out));
  }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(T s);

 private:
  GridSpec grid_;
  std::vector<T> samples_;
};

using RealField = Field<double>;
using ComplexField = Field<cplx>;

template <typename T>
Field<T> operator+(Field<T> a, const Field<T>& b) {
  return a += b;
}
template <typename T>
Field<T> operator-(Field<T> a, const Field<T>& b) {
  return a -= b;
}
template <typename T>
Field<T> operator*(Field<T> a, T s) {
  return a *= s;
}
RealField operator*(const RealField& a, const RealField& b);
ComplexField operator*(const ComplexField& a, const ComplexField& b);

/// Periodic rectangle rule: sum of samples times the cell volume.
double integrate(const RealField& f);
cplx integrate(const ComplexField& f);

double max_abs(const RealField& f);
double max_abs(const ComplexField& f);
double max_abs_difference(const RealField& a, const RealField& b);
double max_abs_difference(const ComplexField& a, const ComplexField& b);
/// sqrt(integral |f|^2).
double l2_norm(const ComplexField& f);
double l2_norm(const RealField& f);

RealField abs_squared(const ComplexField& f);
RealField real_part(const ComplexField& f);
RealField imag_part(const ComplexField& f);
ComplexField to_complex(const RealField& f);
/// Coordinate of each node along one axis.
RealField coordinate(const GridSpec& grid, int axis);

/// Warns (code "boundary-tail") when more than `threshold` of the
/// integrated density sits within the outer strip of the box.
void check_boundary_tail(const RealField& density, const char* context,
                         double threshold = 1e-10);

}  // namespace madelab
