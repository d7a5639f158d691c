#include "madelab/core/potential.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "madelab/core/interpolation.hpp"
#include "madelab/core/spectral.hpp"

namespace madelab {

GaugeFunction GaugeFunction::constant(double c) {
  return {[c](const Point&, double) { return c; },
          [](const Point&, double) { return Point{}; },
          [](const Point&, double) { return 0.0; }, false,
          "constant(" + std::to_string(c) + ")"};
}

GaugeFunction GaugeFunction::linear_in_time(double c) {
  return {[c](const Point&, double t) { return c * t; },
          [](const Point&, double) { return Point{}; },
          [c](const Point&, double) { return c; }, true,
          "linear_in_time(" + std::to_string(c) + ")"};
}

GaugeFunction GaugeFunction::sine(double amplitude, int axis, double extent,
                                  int mode, double origin) {
  const double k = 2.0 * std::numbers::pi * mode / extent;
  return {[=](const Point& q, double) {
            return amplitude * std::sin(k * (q[axis] - origin));
          },
          [=](const Point& q, double) {
            Point g{};
            g[axis] = amplitude * k * std::cos(k * (q[axis] - origin));
            return g;
          },
          [](const Point&, double) { return 0.0; }, false,
          "sine(" + std::to_string(amplitude) + ")"};
}

GaugeFunction GaugeFunction::from_table(const RealField& phi) {
  auto grad = spectral::gradient(phi);
  return {[phi](const Point& q, double) { return interpolate(phi, q); },
          [grad](const Point& q, double) {
            Point g{};
            for (std::size_t a = 0; a < grad.size(); ++a)
              g[a] = interpolate(grad[a], q);
            return g;
          },
          [](const Point&, double) { return 0.0; }, false, "table"};
}

PotentialSpec PotentialSpec::free() { return PotentialSpec(); }

PotentialSpec PotentialSpec::harmonic(double omega, double mass, Point center) {
  if (!(omega > 0.0) || !(mass > 0.0))
    throw InvalidArgument("harmonic potential needs omega > 0 and mass > 0");
  PotentialSpec p;
  p.kind_ = PotentialKind::Harmonic;
  p.omega_ = omega;
  p.stiffness_ = mass * omega * omega;
  p.center_ = center;
  return p;
}

PotentialSpec PotentialSpec::uniform_field(Point force) {
  PotentialSpec p;
  p.kind_ = PotentialKind::UniformField;
  p.force_ = force;
  return p;
}

PotentialSpec PotentialSpec::table(RealField values) {
  PotentialSpec p;
  p.kind_ = PotentialKind::Table;
  p.table_gradient_ = spectral::gradient(values);
  p.table_ = std::move(values);
  return p;
}

std::string PotentialSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case PotentialKind::Free: os << "free"; break;
    case PotentialKind::Harmonic: os << "harmonic(omega=" << omega_ << ")"; break;
    case PotentialKind::UniformField:
      os << "uniform_field(F=" << force_[0] << "," << force_[1] << ")";
      break;
    case PotentialKind::Table: os << "table"; break;
  }
  for (const auto& g : gauge_) os << " + gauge " << g.phi.label;
  if (vector_table_) os << " + static A";
  return os.str();
}

PotentialSpec PotentialSpec::with_vector_potential(
    std::vector<RealField> components) const {
  if (components.empty()) throw InvalidArgument("vector potential is empty");
  PotentialSpec p = *this;
  if (p.vector_table_) {
    if (p.vector_table_->size() != components.size())
      throw InvalidArgument("vector potential component count mismatch");
    for (std::size_t a = 0; a < components.size(); ++a)
      (*p.vector_table_)[a] += components[a];
  } else {
    p.vector_table_ = std::move(components);
  }
  return p;
}

PotentialSpec PotentialSpec::with_gauge(GaugeFunction phi, double charge) const {
  PotentialSpec p = *this;
  p.gauge_.push_back({std::move(phi), charge});
  return p;
}

PotentialSpec PotentialSpec::scalar_only() const {
  PotentialSpec p = *this;
  p.gauge_.clear();
  p.vector_table_.reset();
  return p;
}

bool PotentialSpec::is_time_dependent() const {
  for (const auto& g : gauge_)
    if (g.phi.time_dependent) return true;
  return false;
}

double PotentialSpec::scalar_at(const Point& q, double t) const {
  double v = 0.0;
  switch (kind_) {
    case PotentialKind::Free: break;
    case PotentialKind::Harmonic: {
      const double d0 = q[0] - center_[0];
      const double d1 = q[1] - center_[1];
      v = 0.5 * stiffness_ * (d0 * d0 + d1 * d1);
      break;
    }
    case PotentialKind::UniformField:
      v = force_[0] * q[0] + force_[1] * q[1];
      break;
    case PotentialKind::Table: v = interpolate(*table_, q); break;
  }
  for (const auto& g : gauge_) v -= g.charge * g.phi.rate(q, t);
  return v;
}

Point PotentialSpec::scalar_gradient_at(const Point& q, double t) const {
  Point grad{};
  switch (kind_) {
    case PotentialKind::Free: break;
    case PotentialKind::Harmonic:
      grad = {stiffness_ * (q[0] - center_[0]), stiffness_ * (q[1] - center_[1])};
      break;
    case PotentialKind::UniformField: grad = force_; break;
    case PotentialKind::Table:
      for (std::size_t a = 0; a < table_gradient_->size(); ++a)
        grad[a] = interpolate((*table_gradient_)[a], q);
      break;
  }
  // d/dq of -e d_t phi by central differences of the rate callable.
  for (const auto& g : gauge_) {
    if (!g.phi.time_dependent) continue;
    for (int a = 0; a < 2; ++a) {
      const double h = 1e-5;
      Point qp = q, qm = q;
      qp[a] += h;
      qm[a] -= h;
      grad[a] -= g.charge * (g.phi.rate(qp, t) - g.phi.rate(qm, t)) / (2 * h);
    }
  }
  return grad;
}

Point PotentialSpec::vector_at(const Point& q, double t) const {
  Point a{};
  if (vector_table_)
    for (std::size_t k = 0; k < vector_table_->size(); ++k)
      a[k] = interpolate((*vector_table_)[k], q);
  for (const auto& g : gauge_) {
    const Point gr = g.phi.gradient(q, t);
    a[0] += gr[0];
    a[1] += gr[1];
  }
  return a;
}

RealField PotentialSpec::scalar(const GridSpec& grid, double t) const {
  if (kind_ == PotentialKind::Table) {
    require_same_grid(grid, table_->grid(), "table potential");
    RealField v = *table_;
    if (!gauge_.empty()) v += remainder(grid, t) - *table_;
    return v;
  }
  return RealField::sample(grid,
                           [&](const Point& q) { return scalar_at(q, t); });
}

std::vector<RealField> PotentialSpec::scalar_gradient(const GridSpec& grid,
                                                      double t) const {
  std::vector<RealField> out;
  for (int a = 0; a < grid.dims(); ++a)
    out.push_back(RealField::sample(
        grid, [&](const Point& q) { return scalar_gradient_at(q, t)[a]; }));
  if (kind_ == PotentialKind::Table) {
    // Use the exact spectral samples on the table's own grid.
    require_same_grid(grid, table_->grid(), "table potential");
    for (int a = 0; a < grid.dims(); ++a) {
      RealField gauge_part = out[a];
      std::vector<double> tmp(grid.size());
      for (std::size_t i = 0; i < tmp.size(); ++i)
        tmp[i] = (*table_gradient_)[a][i] +
                 (gauge_part[i] - interpolate((*table_gradient_)[a],
                                              grid.node(i)));
      out[a] = RealField(grid, std::move(tmp));
    }
  }
  return out;
}

std::vector<RealField> PotentialSpec::vector(const GridSpec& grid,
                                             double t) const {
  std::vector<RealField> out;
  for (int a = 0; a < grid.dims(); ++a) {
    std::vector<double> v(grid.size(), 0.0);
    if (vector_table_) {
      require_same_grid(grid, (*vector_table_)[a].grid(), "vector potential");
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*vector_table_)[a][i];
    }
    for (const auto& g : gauge_)
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] += g.phi.gradient(grid.node(i), t)[a];
    out.emplace_back(grid, std::move(v));
  }
  return out;
}

QuadraticPart PotentialSpec::quadratic_part(const Point& c) const {
  QuadraticPart qp;
  switch (kind_) {
    case PotentialKind::Free:
    case PotentialKind::Table: break;
    case PotentialKind::Harmonic:
      for (int a = 0; a < 2; ++a) {
        const double delta = c[a] - center_[a];
        qp.v0 += 0.5 * stiffness_ * delta * delta;
        qp.v1[a] = stiffness_ * delta;
        qp.v2[a] = stiffness_;
      }
      break;
    case PotentialKind::UniformField:
      qp.v0 = force_[0] * c[0] + force_[1] * c[1];
      qp.v1 = force_;
      break;
  }
  return qp;
}

RealField PotentialSpec::remainder(const GridSpec& grid, double t) const {
  std::vector<double> v(grid.size(), 0.0);
  if (kind_ == PotentialKind::Table) {
    require_same_grid(grid, table_->grid(), "table potential");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*table_)[i];
  }
  for (const auto& g : gauge_)
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] -= g.charge * g.phi.rate(grid.node(i), t);
  return RealField(grid, std::move(v));
}

}  // namespace madelab
