#ifndef RINGMOD_GEOMETRY_H_
#define RINGMOD_GEOMETRY_H_

#include <string>

#include <Eigen/Dense>

namespace ringmod {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Area of the unit (n-1)-sphere in R^n.
double sphere_area(int n);
// Volume of the unit n-ball.
double ball_volume(int n);

enum class ShapeKind { kAnnulus, kHalfSemiring, kApollonianSemiring };

std::string to_string(ShapeKind kind);

// A closed ring or semiring:
//   Annulus             {x : r0 <= |x - c| <= r1}
//   HalfSemiring        {x : x_n >= 0, r0 <= |x - x0| <= r1}, x0 on x_n = 0
//   ApollonianSemiring  {x in B^n : r0 <= |x - xi| / |x + xi| <= r1}, |xi| = 1
// Factories validate and throw std::invalid_argument.
class Shape {
 public:
  static Shape Annulus(int n, double r0, double r1);
  static Shape Annulus(double r0, double r1, const Vector& center);
  static Shape HalfSemiring(int n, double r0, double r1);
  static Shape HalfSemiring(double r0, double r1, const Vector& x0);
  static Shape Apollonian(double r0, double r1, const Vector& pole);

  ShapeKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(center_.size()); }
  // Center for rings and half semirings, the pole xi for Apollonian ones.
  const Vector& center() const { return center_; }
  double inner() const { return r0_; }
  double outer() const { return r1_; }
  bool is_semiring() const { return kind_ != ShapeKind::kAnnulus; }

  // True when x lies in the closed set, up to a relative slack.
  bool contains(const Vector& x, double slack = 1e-12) const;

  std::string to_string() const;

 private:
  Shape(ShapeKind kind, double r0, double r1, Vector center);

  ShapeKind kind_;
  double r0_;
  double r1_;
  Vector center_;
};

// log(r1 / r0) for all three kinds.
double exact_modulus(const Shape& shape);

// Continuum modulus of the family of curves joining the two distinguished
// boundary components: w_{n-1} (log(r1/r0))^{1-n} for rings, half of that for
// semirings.
double gamma_family_modulus(const Shape& shape);

}  // namespace ringmod

#endif  // RINGMOD_GEOMETRY_H_
