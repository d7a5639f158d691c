#pragma once

#include <optional>
#include <string>

#include "madelab/core/field.hpp"

namespace madelab {

enum class ObservableKind {
  PositionMean,
  FofQ,
  MomentumMean,
  MomentumSquare,
  /// <p_axis^power>; classical form only up to power 2.
  MomentumPower,
  Energy,
  AngularMomentumZ,
  AngularMomentumZSquare,
};

struct Observable {
  ObservableKind kind = ObservableKind::PositionMean;
  int axis = 0;
  int power = 1;
  std::optional<RealField> table;
  std::string name;

  static Observable position_mean(int axis = 0);
  static Observable f_of_q(RealField table, std::string name = "f");
  /// f(q) = q_axis^2 as a table.
  static Observable position_square(const GridSpec& grid, int axis = 0);
  static Observable momentum_mean(int axis = 0);
  static Observable momentum_square(int axis = 0);
  static Observable momentum_power(int axis, int power);
  static Observable energy();
  static Observable angular_momentum_z();
  static Observable angular_momentum_z_square();
};

}  // namespace madelab
