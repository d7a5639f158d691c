#pragma once

#include <array>
#include <cstddef>

#include "madelab/core/errors.hpp"

namespace madelab {

/// Uniform periodic grid in one or two dimensions.
///
/// Node `j` on axis `a` sits at `origin[a] + j * spacing(a)`; the box is
/// `[origin, origin + extent)`. Flat indices are row major with axis 0
/// slowest. Unused trailing axes of a 1D grid have one point.
class GridSpec {
 public:
  static GridSpec line(double extent, int points, double origin = 0.0);
  static GridSpec plane(Point extent, std::array<int, 2> points,
                        Point origin = {0.0, 0.0});
  /// Box `[-extent/2, extent/2)` on every axis.
  static GridSpec centered(int dims, double extent, int points);

  int dims() const { return dims_; }
  double extent(int axis) const { return extent_[axis]; }
  int points(int axis) const { return points_[axis]; }
  double origin(int axis) const { return origin_[axis]; }
  double spacing(int axis) const { return extent_[axis] / points_[axis]; }
  /// Midpoint of the box along an axis.
  double center(int axis) const { return origin_[axis] + 0.5 * extent_[axis]; }
  std::size_t size() const;
  double cell_volume() const;
  double volume() const;

  double coord(int axis, int index) const {
    return origin_[axis] + index * spacing(axis);
  }
  std::array<int, 2> unflatten(std::size_t flat) const;
  std::size_t flatten(int i0, int i1 = 0) const {
    return static_cast<std::size_t>(i0) * points_[1] + i1;
  }
  Point node(std::size_t flat) const;

  /// Conjugate momentum grid of the transform with kernel exp(-i p.q / hbar):
  /// spacing 2*pi*hbar/extent, centred so that p = 0 is a node.
  GridSpec momentum_grid(double hbar) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  GridSpec(int dims, Point extent, std::array<int, 2> points, Point origin);

  int dims_;
  Point extent_;
  std::array<int, 2> points_;
  Point origin_;
};

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace madelab
