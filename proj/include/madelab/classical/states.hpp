#pragma once

#include <optional>
#include <vector>

#include "madelab/classical/action_field.hpp"

namespace madelab {

/// Family-I state n(q, t) delta(p - grad S(q, t)).
struct QStochasticState {
  RealField n;
  ActionField S;
  double time = 0.0;

  QStochasticState(RealField n_, ActionField S_, double t = 0.0);
  const GridSpec& grid() const { return n.grid(); }
  /// Throws InvalidArgument unless n >= 0 and integrates to 1 within tol.
  void require_normalized(double tol = 1e-8) const;
};

/// Family-II state n(p, t) delta(q - grad_p S(p, t)) on a momentum grid.
struct PStochasticState {
  RealField n;
  ActionField S;
  double time = 0.0;

  PStochasticState(RealField n_, ActionField S_, double t = 0.0);
  const GridSpec& grid() const { return n.grid(); }
  void require_normalized(double tol = 1e-8) const;
};

struct Particle {
  Point q{};
  Point p{};
  double w = 0.0;
};

/// Weighted delta superposition sum_i w_i delta(q - q_i) delta(p - p_i).
struct ParticleEnsemble {
  int dims = 1;
  std::vector<Particle> points;
  double time = 0.0;
  /// Box used for escape warnings, if any.
  std::optional<GridSpec> box;

  std::size_t size() const { return points.size(); }
  /// Positive weights summing to 1 within tol.
  void validate(double tol = 1e-12) const;
  /// Weighted mean of q (or p) along an axis.
  double mean_q(int axis = 0) const;
  double mean_p(int axis = 0) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Point> q;
  std::vector<Point> p;
};

struct TrajectoryBundle {
  std::vector<Trajectory> trajectories;
  /// The (n, S) state that generated the family.
  QStochasticState source;
};

/// Normalised Gaussian density centred on q0, width sigma on every axis.
RealField gaussian_density(const GridSpec& grid, const Point& q0, double sigma);

}  // namespace madelab
