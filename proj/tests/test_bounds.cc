#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ringmod/bounds.h"
#include "ringmod/errors.h"
#include "ringmod/special_functions.h"

namespace ringmod {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

Vector origin(int n) { return Vector::Zero(n); }

Shape semiring(int n, double r, double big_r) { return Shape::HalfSemiring(n, r, big_r); }

// int_{1/n}^m (gamma / (n t + sigma))^{1/(n-1)} dt, by antiderivative.
double linear_bound_oracle(double m, double big_m, double r0, int n, double gamma) {
  const double sigma = std::log(2 * n * big_m / (sphere_area(n) * std::pow(r0, n)));
  const double g = std::pow(gamma, 1.0 / (n - 1));
  if (n == 2) return g / 2 * std::log((2 * m + sigma) / (1 + sigma));
  const double mu = (n - 2.0) / (n - 1.0);
  return g / (n * mu) * (std::pow(n * m + sigma, mu) - std::pow(1 + sigma, mu));
}

TEST(Eq1est, Examples) {
  const BoundReport id = eq1est_bounds(MapSpec::Identity(), semiring(2, 1, kE));
  EXPECT_NEAR(id.left, 1.0, 1e-12);
  EXPECT_NEAR(id.right, 1.0, 1e-10);
  const BoundReport r = eq1est_bounds(MapSpec::RadialStretch(0.8), semiring(2, 1, kE), {},
                                      Reference{0.8, 1e-6});
  EXPECT_NEAR(r.left, 0.8, 1e-10);
  EXPECT_NEAR(r.right, 0.8, 1e-9);
  EXPECT_EQ(r.verdict, Verdict::kHolds);
  const BoundReport t = eq1est_bounds(MapSpec::RotationTwist(), Shape::Annulus(2, 1, kE), {},
                                      Reference{1.0, 1e-6});
  EXPECT_NEAR(t.left, 1.0, 1e-8);
  EXPECT_GE(t.right, 1.0);
  EXPECT_EQ(t.verdict, Verdict::kHolds);
}

TEST(Eq1est, WrongReferenceIsViolated) {
  const BoundReport r = eq1est_bounds(MapSpec::RadialStretch(0.8), semiring(2, 1, kE), {},
                                      Reference{0.9, 1e-4});
  EXPECT_EQ(r.verdict, Verdict::kViolated);
}

TEST(Eq1est, ThreeDimensionalStretch) {
  QuadratureSpec coarse;
  coarse.radial_nodes = 8;
  coarse.spherical_nodes = 8;
  const BoundReport r = eq1est_bounds(MapSpec::RadialStretch(0.7), semiring(3, 1, kE), coarse);
  // D = a^{1-n}, so the lower side is a. Since a^2 < 1/2 the maximizing
  // direction leaves u: L^2 = c(1 - (1 - a^2) c) at c = 1 / (2 (1 - a^2)),
  // and T = (L^3 / a)^{1/2}.
  const double a = 0.7, c = 1 / (2 * (1 - a * a));
  const double lcal = std::sqrt(c * (1 - (1 - a * a) * c));
  EXPECT_NEAR(r.left, a, 1e-9);
  EXPECT_NEAR(r.right, std::sqrt(std::pow(lcal, 3) / a), 1e-8);
}

TEST(Eq2est, Examples) {
  const BoundReport r = eq2est_bounds(MapSpec::RadialStretch(0.8), semiring(2, 1, kE), {},
                                      Reference{0.8, 1e-6});
  EXPECT_NEAR(r.left, 0.2, 1e-6);
  EXPECT_NEAR(r.right, 0.25, 1e-6);
  ASSERT_TRUE(r.middle.has_value());
  EXPECT_NEAR(*r.middle, 0.2, 1e-12);
  EXPECT_EQ(r.left_verdict, Verdict::kHolds);
  EXPECT_EQ(r.right_verdict, Verdict::kHolds);
  const BoundReport id = eq2est_bounds(MapSpec::Identity(), semiring(2, 1, kE));
  EXPECT_NEAR(id.left, 0.0, 1e-12);
  EXPECT_NEAR(id.right, 0.0, 1e-12);
  const BoundReport up = eq2est_bounds(MapSpec::RadialStretch(1.25), semiring(2, 1, kE), {},
                                       Reference{1.25, 1e-6});
  EXPECT_EQ(up.right_verdict, Verdict::kInconclusive);
  EXPECT_EQ(up.left_verdict, Verdict::kHolds);
  EXPECT_NE(up.verdict, Verdict::kViolated);
}

TEST(PsiD, Examples) {
  for (double t : {0.5, 1.0, 7.0}) {
    EXPECT_NEAR(psi_D(MapSpec::Identity(), t, origin(2)).value, 1.0, 1e-12);
    EXPECT_NEAR(psi_D(MapSpec::RadialStretch(0.8), t, origin(2)).value, 1.25, 1e-12);
    EXPECT_NEAR(psi_D(MapSpec::RotationTwist(), t, origin(2), {}, true).value, 1.0, 1e-8);
  }
}

TEST(Modintbound, Examples) {
  EXPECT_NEAR(modintbound(MapSpec::Identity(), semiring(2, 1, kE)).value, 1.0, 1e-9);
  EXPECT_NEAR(modintbound(MapSpec::Identity(), semiring(2, 0.5, 3.0)).value, std::log(6.0), 1e-9);
  EXPECT_NEAR(modintbound(MapSpec::RadialStretch(0.8), semiring(2, 1, kE)).value, 0.8, 1e-9);
  EXPECT_NEAR(modintbound(MapSpec::RotationTwist(), Shape::Annulus(2, 1, kE)).value, 1.0, 1e-8);
  const BoundReport c =
      modintbound_check(MapSpec::RadialStretch(0.8), semiring(2, 1, kE), Reference{0.8, 1e-3});
  EXPECT_EQ(c.verdict, Verdict::kHolds);
}

TEST(DominatingFactor, Classification) {
  EXPECT_EQ(is_divergence_type(DominatingFactor::Linear(2), 3), DivergenceClass::kDivergent);
  const double t0 = std::pow((1 - 0.5) / 0.5, 1 / 0.5);
  EXPECT_EQ(is_divergence_type(DominatingFactor::Power(1, 0.5, t0), 2),
            DivergenceClass::kConvergent);
  EXPECT_EQ(is_divergence_type(DominatingFactor::Power(1, 1), 2), DivergenceClass::kDivergent);
}

TEST(DominatingFactor, PowerGridMatchesCriterion) {
  for (int n = 2; n <= 5; ++n)
    for (double alpha : {0.25, 1.0 / 3, 0.5, 1.0, 1.5}) {
      const double c = 2.0;
      const double t0 = alpha < 1 ? std::pow((1 - alpha) / (c * alpha), 1 / alpha) : 0.0;
      const DominatingFactor h = DominatingFactor::Power(c, alpha, t0);
      const bool divergent = alpha >= 1.0 / (n - 1) - 1e-15;
      EXPECT_EQ(is_divergence_type(h, n),
                divergent ? DivergenceClass::kDivergent : DivergenceClass::kConvergent)
          << "alpha=" << alpha << " n=" << n;
    }
}

TEST(DominatingFactor, Tabulated) {
  std::vector<double> t, lin, log2;
  for (double x = 1; x <= 1e6; x *= 10) {
    t.push_back(x);
    lin.push_back(1e-5 * x);
    log2.push_back(2 * std::log(x) + 1);
  }
  const DominatingFactor a = DominatingFactor::Tabulated(t, lin);
  EXPECT_EQ(is_divergence_type(a, 3), DivergenceClass::kDivergent);
  EXPECT_EQ(is_divergence_type(a, 2), DivergenceClass::kInconclusive);
  EXPECT_EQ(is_divergence_type(DominatingFactor::Tabulated(t, log2), 2),
            DivergenceClass::kConvergent);
  const DominatingFactor short_table = DominatingFactor::Tabulated({1, 10, 100}, {1, 3, 6});
  EXPECT_EQ(is_divergence_type(short_table, 3), DivergenceClass::kInconclusive);
  EXPECT_THROW(DominatingFactor::Tabulated({1, 2, 3}, {1, 3, 3.5}), std::invalid_argument);
  EXPECT_THROW(DominatingFactor::Tabulated({1, 2}, {2, 1}), std::invalid_argument);
}

TEST(DominatingFactor, ShapeOfH) {
  const DominatingFactor p = DominatingFactor::Power(2, 0.5, 1.0);
  EXPECT_EQ(p(0.0), p(1.0));
  EXPECT_GT(p(2.0), p(1.0));
  EXPECT_NEAR(p.inverse(p(3.0)), 3.0, 1e-12);
  EXPECT_THROW(p.inverse(p(1.0) - 0.1), DomainError);
  EXPECT_THROW(DominatingFactor::Power(1, 0.5, 0.1), std::invalid_argument);
  EXPECT_THROW(DominatingFactor::Linear(0), std::invalid_argument);
  EXPECT_THROW(DominatingFactor::Linear(1).inverse(0.0), DomainError);
  EXPECT_NEAR(DominatingFactor::Linear(2).inverse(3.0), 1.5, 1e-15);
}

TEST(DominatedBound, LinearClosedFormGrid) {
  for (int n = 2; n <= 4; ++n)
    for (double gamma : {0.5, 1.0, 2.0})
      for (double m : {1.0, 10.0, 100.0}) {
        const DominatedBound b =
            dominated_modulus_bound(m, kPi, 1.0, n, DominatingFactor::Linear(gamma));
        const double oracle = linear_bound_oracle(m, kPi, 1.0, n, gamma);
        ASSERT_TRUE(b.closed_form.has_value());
        EXPECT_NEAR(b.value, oracle, 1e-8 * oracle) << n << " " << gamma << " " << m;
        EXPECT_NEAR(*b.closed_form, oracle, 1e-12 * oracle);
      }
}

TEST(DominatedBound, DivergesWithM) {
  const DominatingFactor h = DominatingFactor::Linear(1);
  double prev = 0.0;
  for (double m : {10.0, 1e2, 1e3, 1e4}) {
    const double v = dominated_modulus_bound(m, kPi, 1.0, 2, h).value;
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_GT(dominated_modulus_bound(1e4, kPi, 1.0, 2, h).value -
                dominated_modulus_bound(10, kPi, 1.0, 2, h).value,
            1.0);
}

TEST(DominatedBound, ErrorsAndSigma) {
  EXPECT_NEAR(dominated_sigma(kPi, 1.0, 2), std::log(2.0), 1e-15);
  const DominatingFactor h = DominatingFactor::Linear(1);
  EXPECT_THROW(dominated_modulus_bound(0.4, kPi, 1.0, 2, h), std::invalid_argument);
  EXPECT_THROW(dominated_modulus_bound(10, 0.0, 1.0, 2, h), std::invalid_argument);
  EXPECT_THROW(dominated_modulus_bound(10, kPi, 0.0, 2, h), std::invalid_argument);
  // sigma = log(1e-3) < -1
  EXPECT_THROW(dominated_modulus_bound(10, 1e-3 * kPi / 2, 1.0, 2, h), DomainError);
}

TEST(DominatedBound, PowerFactorByQuadrature) {
  const DominatingFactor h = DominatingFactor::Power(1, 2);
  const DominatedBound b = dominated_modulus_bound(10, kPi, 1.0, 2, h);
  EXPECT_FALSE(b.closed_form.has_value());
  // int_{1/2}^{10} dt / sqrt(2t + log 2)
  const double s = std::log(2.0);
  const double oracle = std::sqrt(20 + s) - std::sqrt(1 + s);
  EXPECT_NEAR(b.value, oracle, 1e-8 * oracle);
}

TEST(Separation, Examples) {
  EXPECT_NEAR(separation_bound(10).value, 4 * std::exp(kPi / 2) * std::exp(-5.0), 1e-6);
  EXPECT_NEAR(separation_bound(10).value, 0.12965, 1e-5);
  EXPECT_FALSE(separation_bound(10).conservative);
  EXPECT_TRUE(separation_bound(10, 3).conservative);
  EXPECT_LT(separation_bound(12).value, separation_bound(11).value);
  for (double eps : {1e-1, 1e-3, 1e-5})
    EXPECT_NEAR(boundary_estimate(kPi + eps, 1.0).value, std::exp(-eps), 1e-6);
  EXPECT_LT(boundary_estimate(6, 1).value, boundary_estimate(5, 1).value);
  EXPECT_THROW(boundary_estimate(3.0, 1.0), DomainError);
  EXPECT_THROW(boundary_estimate(5.0, 0.0), std::invalid_argument);
}

TEST(Lipschitz, Examples) {
  const LipschitzConstants c = lipschitz_constants(kPi, 0.0, 1.0, 2);
  EXPECT_NEAR(c.c1, std::exp(kPi), 1e-12);
  EXPECT_NEAR(c.c1, 23.1407, 1e-4);
  EXPECT_EQ(c.c1, c.c2);
  EXPECT_NEAR(c.r0_max, std::exp(-kPi), 1e-15);
  const LipschitzConstants d = lipschitz_constants(kPi, 2.0, 2.0, 2);
  const LipschitzConstants e = lipschitz_constants(kPi, 2.0, 1.0, 2);
  EXPECT_NEAR(d.c1, e.c1 / 2, 1e-12);
  EXPECT_NEAR(d.c2, e.c2 / 2, 1e-12);
  EXPECT_NEAR(e.c1, std::exp(kPi + 2 * 2.0 / (2 * kPi)), 1e-10);
}

TEST(Holder, IdentityChecks) {
  const Vector t = origin(2);
  for (double a : {1.0, 0.8, 0.5}) {
    const MapSpec map = a == 1.0 ? MapSpec::Identity() : MapSpec::RadialStretch(a);
    const double omega = 1 / a - 1;
    EXPECT_NEAR(holder_omega(map, t, 0.7).value, omega, 1e-8);
    const BoundReport r = holder_identity_check(map, t, 0.01, 1.0);
    EXPECT_EQ(r.verdict, Verdict::kHolds) << a;
    EXPECT_NEAR(r.left, omega * std::log(100.0), 1e-7);
    EXPECT_NEAR(r.right, omega * std::log(100.0), 1e-7);
  }
  EXPECT_NEAR(holder_threshold(0.8, 2), 0.25, 1e-15);
  EXPECT_NEAR(holder_threshold(0.5, 3), 3.0, 1e-15);
}

TEST(Continuity, Formulas) {
  const double a2 = compute_a2().value;
  const double l = std::log(0.5 / 1e-3);
  const ContinuityBound b2 = continuity_bounds(2, 1.0, kPi, 0.5, 2.0, 1e-3);
  EXPECT_NEAR(b2.c2, 0.5, 1e-15);
  const double alpha = 2.0 * std::exp(a2 - 0.5 * std::log(2.0));
  EXPECT_NEAR(b2.value, alpha * std::pow(l, -0.5), 1e-12);
  EXPECT_FALSE(b2.log_form);
  const ContinuityBound b3 = continuity_bounds(3, 1.0, kPi, 0.5, 2.0, 1e-3);
  EXPECT_NEAR(b3.mu, 0.5, 1e-15);
  EXPECT_NEAR(b3.c1, 2.0 / 3, 1e-15);
  EXPECT_NEAR(b3.beta, 2.0 / 3 * std::sqrt(3.0), 1e-14);
  EXPECT_TRUE(b3.log_form);
  EXPECT_TRUE(b3.conservative);
  const double sigma = std::log(6 * kPi / (4 * kPi * 0.125));
  const double a3 = constants_for(3).a_value;
  EXPECT_NEAR(b3.value,
              -b3.beta * std::sqrt(l) + a3 + 2.0 / 3 * std::sqrt(1 + sigma) + std::log(2.0),
              1e-12);
  EXPECT_THROW(continuity_bounds(2, 1.0, kPi, 0.5, 2.0, 0.5), std::invalid_argument);
}

TEST(Continuity, DecreasesAsPointsApproach) {
  for (int n : {2, 3}) {
    double prev = INFINITY;
    for (double d = 0.1; d > 1e-12; d /= 10) {
      const double v = continuity_bounds(n, 1.0, kPi, 0.5, 1.0, d).value;
      EXPECT_LT(v, prev);
      prev = v;
    }
  }
}

TEST(Infinity, Examples) {
  const std::vector<double> radii = {1e2, 1e4, 1e8, 1e16};
  const InfinityReport id = infinity_check(MapSpec::Identity(), 2, 0.5, radii);
  for (double v : id.values) EXPECT_LE(std::abs(v), 1e-12);
  EXPECT_EQ(id.verdict, InfinityVerdict::kExtends);
  const InfinityReport r = infinity_check(MapSpec::RadialStretch(0.8), 2, 0.5, radii);
  for (size_t i = 0; i < radii.size(); ++i) {
    const double lr = std::log(radii[i]);
    const double expect = 0.25 * kPi * std::log(radii[i] / 0.5) / (lr * lr);
    EXPECT_NEAR(r.values[i], expect, 1e-6 * expect);
  }
  // decays like 1/log R, so it only drops below the threshold far out
  EXPECT_EQ(r.verdict, InfinityVerdict::kInconclusive);
  const std::vector<double> far = {1e2, 1e4, 1e8, 1e16, 1e32, 1e64};
  EXPECT_EQ(infinity_check(MapSpec::RadialStretch(0.8), 2, 0.5, far).verdict,
            InfinityVerdict::kExtends);
  const InfinityReport s = infinity_check(
      [](const Vector& x) { return 1.0 + std::log(x.norm()); }, 2, 1.0, radii);
  for (size_t i = 0; i < radii.size(); ++i) EXPECT_NEAR(s.values[i], kPi / 2, 1e-6);
  EXPECT_EQ(s.verdict, InfinityVerdict::kInconclusive);
  EXPECT_THROW(infinity_check(MapSpec::Identity(), 2, 0.5, {1e4, 1e2}), std::invalid_argument);
}

TEST(Modintbound, SharpForStretches) {
  for (double a : {0.6, 0.9, 1.3}) {
    const double lower = modintbound(MapSpec::RadialStretch(a), semiring(2, 1, 5)).value;
    EXPECT_NEAR(lower, a * std::log(5.0), 1e-8);
  }
}

}  // namespace
}  // namespace ringmod
