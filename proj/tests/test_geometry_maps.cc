#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ringmod/errors.h"
#include "ringmod/geometry.h"
#include "ringmod/maps.h"

namespace ringmod {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector v3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

// Twist written out directly: rotate (x1, x2) by log(x1^2 + x2^2).
Vector twist_oracle(const Vector& x) {
  const double th = std::log(x(0) * x(0) + x(1) * x(1));
  Vector y = x;
  y(0) = std::cos(th) * x(0) - std::sin(th) * x(1);
  y(1) = std::sin(th) * x(0) + std::cos(th) * x(1);
  return y;
}

Matrix central_difference(const MapSpec& map, const Vector& x, double h) {
  const int n = static_cast<int>(x.size());
  Matrix j(n, n);
  for (int k = 0; k < n; ++k) {
    Vector a = x, b = x;
    a(k) += h;
    b(k) -= h;
    j.col(k) = (eval_map(map, a) - eval_map(map, b)) / (2 * h);
  }
  return j;
}

TEST(Constants, SphereAreasAndBallVolumes) {
  EXPECT_DOUBLE_EQ(sphere_area(2), 2 * kPi);
  EXPECT_DOUBLE_EQ(sphere_area(3), 4 * kPi);
  EXPECT_DOUBLE_EQ(ball_volume(2), kPi);
  for (int n = 2; n <= 9; ++n) EXPECT_NEAR(sphere_area(n), n * ball_volume(n), 1e-12 * sphere_area(n));
}

TEST(Shape, Validation) {
  EXPECT_THROW(Shape::HalfSemiring(2, 2.0, 2.0), std::invalid_argument);
  EXPECT_THROW(Shape::Annulus(2, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(Shape::Annulus(1, 1.0, 2.0), std::invalid_argument);
  EXPECT_THROW(Shape::HalfSemiring(1.0, 2.0, v2(0.0, 1.0)), std::invalid_argument);
  EXPECT_THROW(Shape::Apollonian(0.1, 1.0, v2(0.5, 0.0)), std::invalid_argument);
  EXPECT_NO_THROW(Shape::Apollonian(0.1, 1.0, v3(0.0, 0.0, 1.0)));
}

TEST(Shape, Contains) {
  const Shape s = Shape::HalfSemiring(2, 1.0, kE);
  EXPECT_TRUE(s.contains(v2(1.0, 0.0)));
  EXPECT_TRUE(s.contains(v2(0.0, 2.0)));
  EXPECT_FALSE(s.contains(v2(0.0, -2.0)));
  EXPECT_FALSE(s.contains(v2(0.0, 0.5)));
  const Shape a = Shape::Annulus(2, 1.0, 2.0);
  EXPECT_TRUE(a.contains(v2(0.0, -1.5)));
}

TEST(ExactModulus, Examples) {
  EXPECT_DOUBLE_EQ(exact_modulus(Shape::Annulus(2, 1.0, kE)), 1.0);
  EXPECT_NEAR(exact_modulus(Shape::Apollonian(0.1, 1.0, v2(1.0, 0.0))), 2.302585, 1e-6);
  double prev = INFINITY;
  for (double eps : {1e-1, 1e-3, 1e-6, 1e-9}) {
    const double m = exact_modulus(Shape::HalfSemiring(2, 1.0, 1.0 + eps));
    EXPECT_LT(m, prev);
    EXPECT_NEAR(m, std::log1p((1.0 + eps) - 1.0), 1e-15 * eps);
    if (eps >= 1e-6) EXPECT_NEAR(m, eps, eps * eps);
    prev = m;
  }
}

TEST(ExactModulus, TranslationAndScalingInvariance) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5), r(0.1, 3), c(0.1, 10);
  for (int i = 0; i < 200; ++i) {
    const double r0 = r(rng), r1 = r0 * (1.0 + r(rng)), k = c(rng);
    const double base = exact_modulus(Shape::Annulus(3, r0, r1));
    EXPECT_NEAR(exact_modulus(Shape::Annulus(r0, r1, v3(u(rng), u(rng), u(rng)))), base, 1e-14);
    EXPECT_NEAR(exact_modulus(Shape::HalfSemiring(r0, r1, v3(u(rng), u(rng), 0.0))), base, 1e-14);
    EXPECT_NEAR(exact_modulus(Shape::Annulus(3, k * r0, k * r1)), base, 1e-13);
  }
}

TEST(GammaFamilyModulus, Examples) {
  EXPECT_NEAR(gamma_family_modulus(Shape::HalfSemiring(2, 1.0, kE)), kPi, 1e-14);
  EXPECT_NEAR(gamma_family_modulus(Shape::Annulus(2, 1.0, kE)), 2 * kPi, 1e-14);
  EXPECT_NEAR(gamma_family_modulus(Shape::HalfSemiring(3, 1.0, kE)), 2 * kPi, 1e-14);
}

TEST(GammaFamilyModulus, SymmetryPrinciple) {
  for (int n = 2; n <= 5; ++n)
    for (double r1 : {1.5, 3.0, 40.0})
      EXPECT_NEAR(gamma_family_modulus(Shape::HalfSemiring(n, 1.0, r1)),
                  gamma_family_modulus(Shape::Annulus(n, 1.0, r1)) / 2, 1e-13);
}

TEST(EvalMap, Examples) {
  EXPECT_EQ(eval_map(MapSpec::Identity(), v2(1, 2)), v2(1, 2));
  EXPECT_NEAR((eval_map(MapSpec::RadialStretch(0.5), v2(4, 0)) - v2(2, 0)).norm(), 0.0, 1e-15);
  const Vector on_circle = v2(std::cos(0.3), std::sin(0.3));
  EXPECT_NEAR((eval_map(MapSpec::RotationTwist(), on_circle) - on_circle).norm(), 0.0, 1e-15);
}

TEST(EvalMap, TwistMatchesDirectFormula) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 500; ++i) {
    const Vector x = v3(u(rng), u(rng), u(rng));
    EXPECT_NEAR((eval_map(MapSpec::RotationTwist(), x) - twist_oracle(x)).norm(), 0.0, 1e-13);
  }
}

TEST(EvalMap, SingularPoints) {
  EXPECT_THROW(eval_map(MapSpec::RadialStretch(0.5), v2(0, 0)), DomainError);
  EXPECT_THROW(eval_map(MapSpec::RotationTwist(), v3(0, 0, 1)), DomainError);
  EXPECT_THROW(jacobian(MapSpec::RotationTwist(), v2(0, 0)), DomainError);
  Matrix a(3, 3);
  a.setIdentity();
  EXPECT_THROW(eval_map(MapSpec::Linear(a), v2(1, 1)), DomainError);
}

TEST(MapSpec, LinearNeedsInvertibleMatrix) {
  Matrix a(2, 2);
  a << 1, 2, 2, 4;
  EXPECT_THROW(MapSpec::Linear(a), std::invalid_argument);
}

TEST(MapSpec, CompositionAppliesStagesLeftToRight) {
  Matrix a(2, 2);
  a << 2, 0, 0, 1;
  const MapSpec c = MapSpec::Compose({MapSpec::Linear(a), MapSpec::RadialStretch(0.5)});
  const Vector x = v2(1.0, 1.0);
  const Vector y = eval_map(MapSpec::RadialStretch(0.5), eval_map(MapSpec::Linear(a), x));
  EXPECT_NEAR((eval_map(c, x) - y).norm(), 0.0, 1e-15);
}

TEST(Jacobian, Examples) {
  const JacobianResult id = jacobian(MapSpec::Identity(), v2(0.3, 0.4));
  EXPECT_EQ(id.matrix, Matrix::Identity(2, 2));
  EXPECT_EQ(id.det, 1.0);
  for (double a : {0.3, 0.8, 1.7}) {
    const JacobianResult j = jacobian(MapSpec::RadialStretch(a), v3(0.0, 0.6, 0.8));
    Eigen::JacobiSVD<Matrix> svd(j.matrix);
    std::vector<double> s(svd.singularValues().data(), svd.singularValues().data() + 3);
    std::sort(s.begin(), s.end());
    std::vector<double> expect = {a, 1.0, 1.0};
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(s[i], expect[i], 1e-14);
    EXPECT_NEAR(j.det, a, 1e-14);
  }
}

TEST(Jacobian, TwistPreservesNormAndVolume) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4, 4);
  int checked = 0;
  while (checked < 1000) {
    const Vector x = checked % 2 ? v2(u(rng), u(rng)) : v3(u(rng), u(rng), u(rng));
    if (std::hypot(x(0), x(1)) < 1e-6) continue;
    ++checked;
    EXPECT_NEAR(eval_map(MapSpec::RotationTwist(), x).norm(), x.norm(), 1e-10 * x.norm());
    EXPECT_NEAR(jacobian(MapSpec::RotationTwist(), x).det, 1.0, 1e-10);
  }
}

// Analytic Jacobians against central differences written in the test, with
// h = 1e-6 max(1, |x|).
TEST(Jacobian, AnalyticMatchesFiniteDifferences) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> radius(0.3, 5.0), expo(0.2, 2.5);
  for (int i = 0; i < 600; ++i) {
    const int n = 2 + i % 3;
    Matrix a(n, n);
    do {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = g(rng);
    } while (std::abs(a.determinant()) < 0.05);
    MapSpec map = MapSpec::Identity();
    switch (i % 5) {
      case 1:
        map = MapSpec::RadialStretch(expo(rng));
        break;
      case 2:
        map = MapSpec::RotationTwist();
        break;
      case 3:
        map = MapSpec::Linear(a);
        break;
      case 4:
        map = MapSpec::Compose({MapSpec::RotationTwist(), MapSpec::Linear(a),
                                MapSpec::RadialStretch(expo(rng))});
        break;
    }
    Vector x(n);
    for (int k = 0; k < n; ++k) x(k) = g(rng);
    x *= radius(rng) / x.norm();
    if (std::hypot(x(0), x(1)) < 0.05) continue;
    const double h = 1e-6 * std::max(1.0, x.norm());
    const Matrix fd = central_difference(map, x, h);
    const JacobianResult j = jacobian(map, x);
    const double scale = j.matrix.cwiseAbs().maxCoeff();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        EXPECT_NEAR(j.matrix(r, c), fd(r, c), 1e-4 * std::max(std::abs(fd(r, c)), 1e-2 * scale))
            << map.to_string() << " entry " << r << "," << c;
    EXPECT_NEAR(j.det, fd.determinant(), 1e-4 * std::abs(j.det) + 1e-9);
    // the library's finite-difference mode agrees as well
    const Matrix lib = jacobian(map.with_finite_differences(), x).matrix;
    EXPECT_LE((lib - fd).cwiseAbs().maxCoeff(), 1e-6 * std::max(1.0, scale));
  }
}

TEST(Jacobian, FiniteDifferenceStepOption) {
  const MapSpec m = MapSpec::RadialStretch(0.5).with_finite_differences(1e-4);
  EXPECT_EQ(m.jacobian_mode(), JacobianMode::kFiniteDifference);
  EXPECT_EQ(m.fd_step(), 1e-4);
  const Vector x = v2(2.0, 1.0);
  EXPECT_NEAR((jacobian(m, x).matrix - central_difference(MapSpec::RadialStretch(0.5), x, 1e-4))
                  .cwiseAbs()
                  .maxCoeff(),
              0.0, 1e-12);
  EXPECT_EQ(m.with_analytic_jacobian().jacobian_mode(), JacobianMode::kAnalytic);
}

TEST(MapSpec, SingularDistance) {
  EXPECT_TRUE(std::isinf(MapSpec::Identity().singular_distance(v2(0, 0))));
  EXPECT_NEAR(MapSpec::RadialStretch(2).singular_distance(v2(3, 4)), 5.0, 1e-15);
  EXPECT_NEAR(MapSpec::RotationTwist().singular_distance(v3(3, 4, 7)), 5.0, 1e-15);
}

TEST(MapSpec, Determinism) {
  const MapSpec m = MapSpec::Compose({MapSpec::RotationTwist(), MapSpec::RadialStretch(0.7)});
  const Vector x = v3(0.3, -1.2, 0.5);
  EXPECT_EQ(eval_map(m, x), eval_map(m, x));
  EXPECT_EQ(jacobian(m, x).matrix, jacobian(m, x).matrix);
}

}  // namespace
}  // namespace ringmod
