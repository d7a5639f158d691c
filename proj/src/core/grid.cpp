#include "madelab/core/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace madelab {

GridSpec::GridSpec(int dims, Point extent, std::array<int, 2> points,
                   Point origin)
    : dims_(dims), extent_(extent), points_(points), origin_(origin) {
  if (dims != 1 && dims != 2)
    throw InvalidArgument("grid dims must be 1 or 2, got " +
                          std::to_string(dims));
  for (int a = 0; a < dims; ++a) {
    if (!(extent[a] > 0.0) || !std::isfinite(extent[a]))
      throw InvalidArgument("grid extent must be positive on axis " +
                            std::to_string(a));
    if (points[a] < 2)
      throw InvalidArgument("grid needs at least 2 points on axis " +
                            std::to_string(a));
    if (!std::isfinite(origin[a]))
      throw InvalidArgument("grid origin must be finite");
  }
  if (dims == 1) {
    extent_[1] = 1.0;
    points_[1] = 1;
    origin_[1] = 0.0;
  }
}

GridSpec GridSpec::line(double extent, int points, double origin) {
  return GridSpec(1, {extent, 1.0}, {points, 1}, {origin, 0.0});
}

GridSpec GridSpec::plane(Point extent, std::array<int, 2> points,
                         Point origin) {
  return GridSpec(2, extent, points, origin);
}

GridSpec GridSpec::centered(int dims, double extent, int points) {
  if (dims == 1) return line(extent, points, -0.5 * extent);
  return plane({extent, extent}, {points, points},
               {-0.5 * extent, -0.5 * extent});
}

std::size_t GridSpec::size() const {
  return static_cast<std::size_t>(points_[0]) * points_[1];
}

double GridSpec::cell_volume() const {
  double v = spacing(0);
  if (dims_ == 2) v *= spacing(1);
  return v;
}

double GridSpec::volume() const {
  return dims_ == 2 ? extent_[0] * extent_[1] : extent_[0];
}

std::array<int, 2> GridSpec::unflatten(std::size_t flat) const {
  return {static_cast<int>(flat / points_[1]),
          static_cast<int>(flat % points_[1])};
}

Point GridSpec::node(std::size_t flat) const {
  const auto [i0, i1] = unflatten(flat);
  return {coord(0, i0), dims_ == 2 ? coord(1, i1) : 0.0};
}

GridSpec GridSpec::momentum_grid(double hbar) const {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  Point ext{};
  Point org{};
  for (int a = 0; a < dims_; ++a) {
    const double dp = 2.0 * std::numbers::pi * hbar / extent_[a];
    ext[a] = dp * points_[a];
    org[a] = -dp * (points_[a] / 2);
  }
  return GridSpec(dims_, ext, points_, org);
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) throw InvalidArgument(std::string(what) + ": grid mismatch");
}

}  // namespace madelab
