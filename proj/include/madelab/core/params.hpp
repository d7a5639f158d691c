#pragma once

#include "madelab/core/errors.hpp"

namespace madelab {

/// Physical constants of a run; natural units by default.
struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double charge = 1.0;
  /// Dimensionless strength of the density term in the uncertainty
  /// functional; 0 gives the linear Schroedinger equation.
  double beta = 0.0;

  void validate() const {
    if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
    if (!(mass > 0.0)) throw InvalidArgument("mass must be positive");
    if (!(beta >= 0.0)) throw InvalidArgument("beta must be non-negative");
  }
};

}  // namespace madelab
