#include "madelab/classical/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace madelab {

namespace {

void check_density(const RealField& n, double tol, const char* what) {
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] < 0.0)
      throw InvalidArgument(std::string(what) + ": negative density at node " +
                            std::to_string(i));
  const double total = integrate(n);
  if (std::abs(total - 1.0) > tol)
    throw InvalidArgument(std::string(what) + ": density integrates to " +
                          std::to_string(total) + ", expected 1");
}

}  // namespace

QStochasticState::QStochasticState(RealField n_, ActionField S_, double t)
    : n(std::move(n_)), S(std::move(S_)), time(t) {
  require_same_grid(n.grid(), S.grid(), "q-stochastic state");
}

void QStochasticState::require_normalized(double tol) const {
  check_density(n, tol, "q-stochastic state");
}

PStochasticState::PStochasticState(RealField n_, ActionField S_, double t)
    : n(std::move(n_)), S(std::move(S_)), time(t) {
  require_same_grid(n.grid(), S.grid(), "p-stochastic state");
}

void PStochasticState::require_normalized(double tol) const {
  check_density(n, tol, "p-stochastic state");
}

void ParticleEnsemble::validate(double tol) const {
  if (points.empty()) throw InvalidArgument("ensemble is empty");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].w > 0.0))
      throw InvalidArgument("non-positive weight at point " + std::to_string(i));
    total += points[i].w;
  }
  if (std::abs(total - 1.0) > tol)
    throw InvalidArgument("ensemble weights sum to " + std::to_string(total));
}

double ParticleEnsemble::mean_q(int axis) const {
  double s = 0.0;
  for (const auto& pt : points) s += pt.w * pt.q[axis];
  return s;
}

double ParticleEnsemble::mean_p(int axis) const {
  double s = 0.0;
  for (const auto& pt : points) s += pt.w * pt.p[axis];
  return s;
}

RealField gaussian_density(const GridSpec& grid, const Point& q0,
                           double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian width must be positive");
  const int d = grid.dims();
  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.5 * d);
  return RealField::sample(grid, [&](const Point& q) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += (q[a] - q0[a]) * (q[a] - q0[a]);
    return norm * std::exp(-r2 / (2.0 * sigma * sigma));
  });
}

}  // namespace madelab
