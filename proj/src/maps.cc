#include "ringmod/maps.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ringmod/errors.h"

namespace ringmod {

MapSpec MapSpec::Identity() { return MapSpec(); }

MapSpec MapSpec::RadialStretch(double a) {
  if (!(a > 0.0 && std::isfinite(a))) {
    throw std::invalid_argument("radial stretch exponent must be positive");
  }
  MapSpec m;
  m.kind_ = MapKind::kRadialStretch;
  m.a_ = a;
  return m;
}

MapSpec MapSpec::RotationTwist() {
  MapSpec m;
  m.kind_ = MapKind::kRotationTwist;
  return m;
}

MapSpec MapSpec::Linear(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 2) {
    throw std::invalid_argument("linear map needs a square matrix, n >= 2");
  }
  if (!a.allFinite()) throw std::invalid_argument("linear map entries must be finite");
  const double det = a.determinant();
  const double scale = std::pow(a.norm(), static_cast<double>(a.rows()));
  if (det == 0.0 || std::abs(det) <= 1e-14 * scale) {
    throw std::invalid_argument("linear map must be nonsingular");
  }
  MapSpec m;
  m.kind_ = MapKind::kLinear;
  m.matrix_ = a;
  return m;
}

MapSpec MapSpec::Compose(std::vector<MapSpec> stages) {
  if (stages.empty()) throw std::invalid_argument("composition needs a stage");
  MapSpec m;
  m.kind_ = MapKind::kComposition;
  m.stages_ = std::move(stages);
  return m;
}

MapSpec MapSpec::with_finite_differences(double step) const {
  MapSpec m = *this;
  m.mode_ = JacobianMode::kFiniteDifference;
  m.fd_step_ = step;
  return m;
}

MapSpec MapSpec::with_analytic_jacobian() const {
  MapSpec m = *this;
  m.mode_ = JacobianMode::kAnalytic;
  return m;
}

double MapSpec::singular_distance(const Vector& x) const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case MapKind::kIdentity:
    case MapKind::kLinear:
      return kInf;
    case MapKind::kRadialStretch:
      return x.norm();
    case MapKind::kRotationTwist:
      return std::hypot(x(0), x(1));
    case MapKind::kComposition: {
      double d = kInf;
      Vector y = x;
      for (const MapSpec& stage : stages_) {
        d = std::min(d, stage.singular_distance(y));
        if (d < kMinSingularDistance) return d;
        y = eval_map(stage, y);
      }
      return d;
    }
  }
  return kInf;
}

std::string MapSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case MapKind::kIdentity:
      out << "identity";
      break;
    case MapKind::kRadialStretch:
      out << "radial:a=" << a_;
      break;
    case MapKind::kRotationTwist:
      out << "twist";
      break;
    case MapKind::kLinear: {
      out << "linear:";
      for (int i = 0; i < matrix_.rows(); ++i) {
        for (int j = 0; j < matrix_.cols(); ++j) {
          out << (i || j ? "," : "") << matrix_(i, j);
        }
      }
      break;
    }
    case MapKind::kComposition: {
      out << "compose:";
      for (size_t i = 0; i < stages_.size(); ++i) {
        out << (i ? ";" : "") << stages_[i].to_string();
      }
      break;
    }
  }
  if (mode_ == JacobianMode::kFiniteDifference) {
    out << "@fd";
    if (fd_step_ > 0.0) out << "=" << fd_step_;
  }
  return out.str();
}

namespace {

void check_input(const MapSpec& map, const Vector& x) {
  if (x.size() < 2) throw DomainError("map input must have dimension >= 2");
  if (!x.allFinite()) throw DomainError("map input must be finite");
  if (map.kind() == MapKind::kLinear && map.matrix().cols() != x.size()) {
    throw DomainError("linear map dimension mismatch");
  }
  if (map.kind() != MapKind::kComposition &&
      map.singular_distance(x) < kMinSingularDistance) {
    throw DomainError("point is at a singular point of map " + map.to_string());
  }
}

Matrix twist_block(double x1, double x2) {
  const double rho2 = x1 * x1 + x2 * x2;
  const double theta = std::log(rho2);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // d/dx of (x1 c - x2 s, x2 c + x1 s) with d theta = 2 (x1, x2) / rho2.
  const double g1 = 2.0 * x1 / rho2;
  const double g2 = 2.0 * x2 / rho2;
  const double p1 = -x1 * s - x2 * c;
  const double p2 = x1 * c - x2 * s;
  Matrix b(2, 2);
  b << c + p1 * g1, -s + p1 * g2,
       s + p2 * g1,  c + p2 * g2;
  return b;
}

}  // namespace

Vector eval_map(const MapSpec& map, const Vector& x) {
  check_input(map, x);
  switch (map.kind()) {
    case MapKind::kIdentity:
      return x;
    case MapKind::kRadialStretch:
      return std::pow(x.norm(), map.stretch_exponent() - 1.0) * x;
    case MapKind::kRotationTwist: {
      const double theta = std::log(x(0) * x(0) + x(1) * x(1));
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      Vector y = x;
      y(0) = x(0) * c - x(1) * s;
      y(1) = x(1) * c + x(0) * s;
      return y;
    }
    case MapKind::kLinear:
      return map.matrix() * x;
    case MapKind::kComposition: {
      Vector y = x;
      for (const MapSpec& stage : map.stages()) y = eval_map(stage, y);
      return y;
    }
  }
  return x;
}

JacobianResult finite_difference_jacobian(const MapSpec& map, const Vector& x,
                                          double step) {
  check_input(map, x);
  const int n = static_cast<int>(x.size());
  const double h = step > 0.0 ? step : 1e-6 * std::max(1.0, x.norm());
  JacobianResult out;
  out.matrix.resize(n, n);
  for (int j = 0; j < n; ++j) {
    Vector xp = x;
    Vector xm = x;
    xp(j) += h;
    xm(j) -= h;
    out.matrix.col(j) = (eval_map(map, xp) - eval_map(map, xm)) / (2.0 * h);
  }
  out.det = out.matrix.determinant();
  return out;
}

JacobianResult jacobian(const MapSpec& map, const Vector& x) {
  if (map.jacobian_mode() == JacobianMode::kFiniteDifference) {
    return finite_difference_jacobian(map, x, map.fd_step());
  }
  check_input(map, x);
  const int n = static_cast<int>(x.size());
  JacobianResult out;
  switch (map.kind()) {
    case MapKind::kIdentity:
      out.matrix = Matrix::Identity(n, n);
      out.det = 1.0;
      break;
    case MapKind::kRadialStretch: {
      const double a = map.stretch_exponent();
      const double r = x.norm();
      const Vector u = x / r;
      const double scale = std::pow(r, a - 1.0);
      out.matrix = scale * (Matrix::Identity(n, n) + (a - 1.0) * u * u.transpose());
      out.det = a * std::pow(scale, n);
      break;
    }
    case MapKind::kRotationTwist: {
      out.matrix = Matrix::Identity(n, n);
      out.matrix.topLeftCorner(2, 2) = twist_block(x(0), x(1));
      out.det = out.matrix.topLeftCorner(2, 2).determinant();
      break;
    }
    case MapKind::kLinear:
      out.matrix = map.matrix();
      out.det = map.matrix().determinant();
      break;
    case MapKind::kComposition: {
      Vector y = x;
      out.matrix = Matrix::Identity(n, n);
      for (const MapSpec& stage : map.stages()) {
        const JacobianResult step = jacobian(stage, y);
        out.matrix = step.matrix * out.matrix;
        y = eval_map(stage, y);
      }
      out.det = out.matrix.determinant();
      break;
    }
  }
  return out;
}

}  // namespace ringmod
