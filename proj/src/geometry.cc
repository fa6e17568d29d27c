#include "ringmod/geometry.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ringmod {

double sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("sphere_area: n must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n) { return sphere_area(n) / n; }

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kAnnulus:
      return "annulus";
    case ShapeKind::kHalfSemiring:
      return "semiring";
    case ShapeKind::kApollonianSemiring:
      return "apollonian";
  }
  return "unknown";
}

namespace {

void check_radii(double r0, double r1) {
  if (!(std::isfinite(r0) && std::isfinite(r1) && r0 > 0.0 && r1 > r0)) {
    throw std::invalid_argument("shape radii must satisfy 0 < r0 < r1 < inf");
  }
}

void check_point(const Vector& x) {
  if (x.size() < 2) throw std::invalid_argument("dimension must be >= 2");
  if (!x.allFinite()) throw std::invalid_argument("coordinates must be finite");
}

}  // namespace

Shape::Shape(ShapeKind kind, double r0, double r1, Vector center)
    : kind_(kind), r0_(r0), r1_(r1), center_(std::move(center)) {}

Shape Shape::Annulus(int n, double r0, double r1) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  return Annulus(r0, r1, Vector::Zero(n));
}

Shape Shape::Annulus(double r0, double r1, const Vector& center) {
  check_point(center);
  check_radii(r0, r1);
  return Shape(ShapeKind::kAnnulus, r0, r1, center);
}

Shape Shape::HalfSemiring(int n, double r0, double r1) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  return HalfSemiring(r0, r1, Vector::Zero(n));
}

Shape Shape::HalfSemiring(double r0, double r1, const Vector& x0) {
  check_point(x0);
  check_radii(r0, r1);
  if (x0(x0.size() - 1) != 0.0) {
    throw std::invalid_argument("semiring center must lie on x_n = 0");
  }
  return Shape(ShapeKind::kHalfSemiring, r0, r1, x0);
}

Shape Shape::Apollonian(double r0, double r1, const Vector& pole) {
  check_point(pole);
  check_radii(r0, r1);
  if (std::abs(pole.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("Apollonian pole must lie on the unit sphere");
  }
  return Shape(ShapeKind::kApollonianSemiring, r0, r1, pole.normalized());
}

bool Shape::contains(const Vector& x, double slack) const {
  if (x.size() != center_.size()) return false;
  const double lo = r0_ * (1.0 - slack);
  const double hi = r1_ * (1.0 + slack);
  switch (kind_) {
    case ShapeKind::kAnnulus: {
      const double r = (x - center_).norm();
      return r >= lo && r <= hi;
    }
    case ShapeKind::kHalfSemiring: {
      const double r = (x - center_).norm();
      return x(x.size() - 1) >= -slack * r1_ && r >= lo && r <= hi;
    }
    case ShapeKind::kApollonianSemiring: {
      if (x.norm() > 1.0 + slack) return false;
      const double q = (x - center_).norm() / (x + center_).norm();
      return q >= lo && q <= hi;
    }
  }
  return false;
}

std::string Shape::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << ringmod::to_string(kind_) << ":n=" << dim();
  if (kind_ == ShapeKind::kHalfSemiring) {
    out << ",r=" << r0_ << ",R=" << r1_ << ",x0=";
  } else {
    out << ",r0=" << r0_ << ",r1=" << r1_
        << (kind_ == ShapeKind::kAnnulus ? ",c=" : ",xi=");
  }
  for (int i = 0; i < center_.size(); ++i) {
    out << (i ? "," : "") << center_(i);
  }
  return out.str();
}

double exact_modulus(const Shape& shape) {
  return std::log(shape.outer() / shape.inner());
}

double gamma_family_modulus(const Shape& shape) {
  const int n = shape.dim();
  const double full = sphere_area(n) * std::pow(exact_modulus(shape), 1.0 - n);
  return shape.is_semiring() ? 0.5 * full : full;
}

}  // namespace ringmod
