#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "madelab/core/field.hpp"

namespace madelab {

/// Scalar gauge function phi(q, t) with its spatial gradient and time rate.
struct GaugeFunction {
  std::function<double(const Point&, double)> value;
  std::function<Point(const Point&, double)> gradient;
  std::function<double(const Point&, double)> rate;
  bool time_dependent = false;
  std::string label;

  static GaugeFunction constant(double c);
  /// phi = c t, uniform in space.
  static GaugeFunction linear_in_time(double c);
  /// phi = amplitude sin(2 pi mode (q_axis - origin) / extent).
  static GaugeFunction sine(double amplitude, int axis, double extent,
                            int mode = 1, double origin = 0.0);
  /// Static phi from grid samples (interpolated, spectral gradient).
  static GaugeFunction from_table(const RealField& phi);
};

enum class PotentialKind { Free, Harmonic, UniformField, Table };

/// Quadratic Taylor data of the analytic part of V about a centre c:
/// V = v0 + sum_a v1[a] d_a + 1/2 sum_a v2[a] d_a^2, d = q - c.
struct QuadraticPart {
  double v0 = 0.0;
  Point v1{};
  Point v2{};
};

/// Scalar potential V(q, t) and vector potential A(q, t) of
/// H = (p - e A)^2 / 2m + V.
///
/// The analytic kinds carry exact gradients; tables are periodic samples.
/// Gauge transformations are stacked as terms contributing
/// V -> V - e d_t phi and A -> A + grad phi.
class PotentialSpec {
 public:
  struct GaugeTerm {
    GaugeFunction phi;
    double charge;
  };

  static PotentialSpec free();
  /// V = 1/2 m omega^2 |q - center|^2.
  static PotentialSpec harmonic(double omega, double mass = 1.0,
                                Point center = {0.0, 0.0});
  /// V = F . q, i.e. a constant force -F.
  static PotentialSpec uniform_field(Point force);
  static PotentialSpec table(RealField values);

  PotentialKind kind() const { return kind_; }
  double omega() const { return omega_; }
  double stiffness() const { return stiffness_; }
  const Point& center() const { return center_; }
  const Point& force() const { return force_; }
  std::string describe() const;

  /// Static vector potential samples, one field per axis.
  PotentialSpec with_vector_potential(std::vector<RealField> components) const;
  PotentialSpec with_gauge(GaugeFunction phi, double charge) const;
  const std::vector<GaugeTerm>& gauge_terms() const { return gauge_; }
  const std::optional<std::vector<RealField>>& static_vector_potential() const {
    return vector_table_;
  }
  /// Copy without gauge terms or static A.
  PotentialSpec scalar_only() const;

  bool has_vector_potential() const {
    return vector_table_.has_value() || !gauge_.empty();
  }
  /// No table, gauge or A contributions: V is an exact quadratic polynomial.
  bool is_analytic_quadratic() const {
    return kind_ != PotentialKind::Table && !has_vector_potential();
  }
  bool is_time_dependent() const;

  RealField scalar(const GridSpec& grid, double t) const;
  std::vector<RealField> scalar_gradient(const GridSpec& grid, double t) const;
  std::vector<RealField> vector(const GridSpec& grid, double t) const;

  QuadraticPart quadratic_part(const Point& center) const;
  /// V minus its quadratic part: table samples plus gauge contributions.
  RealField remainder(const GridSpec& grid, double t) const;

  double scalar_at(const Point& q, double t) const;
  Point scalar_gradient_at(const Point& q, double t) const;
  Point vector_at(const Point& q, double t) const;

 private:
  PotentialSpec() = default;

  PotentialKind kind_ = PotentialKind::Free;
  double omega_ = 0.0;
  double stiffness_ = 0.0;
  Point center_{};
  Point force_{};
  std::optional<RealField> table_;
  std::optional<std::vector<RealField>> table_gradient_;
  std::optional<std::vector<RealField>> vector_table_;
  std::vector<GaugeTerm> gauge_;
};

}  // namespace madelab
