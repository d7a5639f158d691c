#pragma once

#include <cmath>
#include <numbers>

#include "madelab/core/field.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace testing
