#pragma once

#include "madelab/core/field.hpp"

namespace madelab {

/// Sixth-order periodic Lagrange interpolation (tensor product in 2D).
/// Points outside the box are wrapped.
double interpolate(const RealField& f, const Point& q);

}  // namespace madelab
