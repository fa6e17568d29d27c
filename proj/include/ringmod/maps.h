#ifndef RINGMOD_MAPS_H_
#define RINGMOD_MAPS_H_

#include <string>
#include <vector>

#include "ringmod/geometry.h"

namespace ringmod {

enum class MapKind { kIdentity, kRadialStretch, kRotationTwist, kLinear, kComposition };
enum class JacobianMode { kAnalytic, kFiniteDifference };

// Points closer than this to a map's singular set are rejected.
inline constexpr double kMinSingularDistance = 1e-12;

// A test mapping of R^n. Immutable value type; dimension-agnostic except for
// Linear, whose dimension is fixed by its matrix.
//
//   RadialStretch(a)  f(x) = |x|^{a-1} x,                     x != 0
//   RotationTwist     rotate (x1, x2) by log(x1^2 + x2^2),      (x1, x2) != 0
//   Composition       stages applied left to right
class MapSpec {
 public:
  static MapSpec Identity();
  static MapSpec RadialStretch(double a);
  static MapSpec RotationTwist();
  static MapSpec Linear(const Matrix& a);
  static MapSpec Compose(std::vector<MapSpec> stages);

  // Same map with central-difference Jacobians. step <= 0 selects the default
  // h = 1e-6 * max(1, |x|).
  MapSpec with_finite_differences(double step = 0.0) const;
  MapSpec with_analytic_jacobian() const;

  MapKind kind() const { return kind_; }
  JacobianMode jacobian_mode() const { return mode_; }
  double fd_step() const { return fd_step_; }
  double stretch_exponent() const { return a_; }
  const Matrix& matrix() const { return matrix_; }
  const std::vector<MapSpec>& stages() const { return stages_; }

  // Distance from x to the singular set (infinity when there is none). For
  // compositions, the minimum over stages measured at each stage's input.
  double singular_distance(const Vector& x) const;

  std::string to_string() const;

 private:
  MapSpec() = default;

  MapKind kind_ = MapKind::kIdentity;
  JacobianMode mode_ = JacobianMode::kAnalytic;
  double fd_step_ = 0.0;
  double a_ = 1.0;
  Matrix matrix_;
  std::vector<MapSpec> stages_;
};

struct JacobianResult {
  Matrix matrix;
  double det = 0.0;
};

// Throw DomainError at singular points or on dimension mismatch.
Vector eval_map(const MapSpec& map, const Vector& x);
JacobianResult jacobian(const MapSpec& map, const Vector& x);

// Central-difference Jacobian regardless of the map's mode.
JacobianResult finite_difference_jacobian(const MapSpec& map, const Vector& x,
                                          double step = 0.0);

}  // namespace ringmod

#endif  // RINGMOD_MAPS_H_
