#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <gtest/gtest.h>

#include "ringmod/errors.h"
#include "ringmod/special_functions.h"

namespace ringmod {
namespace {

constexpr double kPi = std::numbers::pi;

// K(k) from its defining integral over [0, pi/2].
double k_by_quadrature(double k) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(
      [k](double t) {
        const double s = std::sin(t);
        return 1.0 / std::sqrt(1.0 - k * k * s * s);
      },
      0.0, kPi / 2, 1e-15);
}

// mu(r) from elliptic integrals evaluated by quadrature.
double mu_oracle(double r) {
  return kPi / 2 * k_by_quadrature(std::sqrt(1 - r * r)) / k_by_quadrature(r);
}

TEST(Agm, Basics) {
  EXPECT_DOUBLE_EQ(agm(2.0, 2.0), 2.0);
  EXPECT_NEAR(agm(1.0, std::sqrt(2.0)), 1.19814023473559220744, 1e-15);
  EXPECT_NEAR(agm(1.0, 3.0), agm(3.0, 1.0), 1e-15);
}

TEST(EllipticK, Examples) {
  EXPECT_NEAR(elliptic_k(0.0), kPi / 2, 1e-15);
  EXPECT_NEAR(elliptic_k(1 / std::sqrt(2.0)), 1.854074677, 1e-9);
  EXPECT_NEAR(elliptic_k(0.5), 1.685750355, 1e-9);
  EXPECT_NEAR(k_by_quadrature(1 / std::sqrt(2.0)), 1.854074677, 1e-9);
  EXPECT_NEAR(k_by_quadrature(0.5), 1.685750355, 1e-9);
  EXPECT_THROW(elliptic_k(1.0), DomainError);
  EXPECT_THROW(elliptic_k(-0.1), DomainError);
}

TEST(EllipticK, MatchesQuadratureAndBoost) {
  for (double k = 0.0; k < 0.995; k += 0.0137) {
    const double v = elliptic_k(k);
    EXPECT_NEAR(v, k_by_quadrature(k), 1e-12) << k;
    EXPECT_NEAR(v, boost::math::ellint_1(k), 1e-12) << k;
  }
}

TEST(GrotzschMu, Examples) {
  EXPECT_NEAR(grotzsch_mu(1 / std::sqrt(2.0)), kPi / 2, 1e-14);
  EXPECT_NEAR(grotzsch_mu(1e-3), std::log(4000.0), 1e-6);
  EXPECT_EQ(grotzsch_mu(1.0), 0.0);
  EXPECT_THROW(grotzsch_mu(0.0), DomainError);
  EXPECT_THROW(grotzsch_mu(-1.0), DomainError);
}

TEST(GrotzschMu, ReciprocityIdentity) {
  for (int i = 1; i <= 9; ++i) {
    const double r = 0.1 * i;
    EXPECT_NEAR(grotzsch_mu(r) * grotzsch_mu(std::sqrt(1 - r * r)), kPi * kPi / 4, 1e-9);
  }
}

TEST(GrotzschMu, MatchesQuadratureOracle) {
  for (double r : {0.01, 0.05, 0.2, 0.5, 0.77, 0.95})
    EXPECT_NEAR(grotzsch_mu(r), mu_oracle(r), 1e-10) << r;
}

TEST(RingModuli, Examples) {
  EXPECT_NEAR(mo_teichmuller2(1.0), kPi, 1e-13);
  for (double t : {0.5, 2.0, 10.0})
    EXPECT_NEAR(mo_teichmuller2(t), 2 * mo_grotzsch2(std::sqrt(t + 1)), 1e-12);
  EXPECT_NEAR(mo_grotzsch2(1e8) - std::log(1e8), std::log(4.0), 1e-6);
  EXPECT_THROW(mo_grotzsch2(1.0), DomainError);
  EXPECT_THROW(mo_teichmuller2(0.0), DomainError);
}

TEST(RingModuli, StrictlyIncreasing) {
  double prev_g = -INFINITY, prev_t = -INFINITY;
  for (double x = 1.001; x < 1e7; x *= 1.37) {
    const double g = mo_grotzsch2(x), t = mo_teichmuller2(x);
    EXPECT_GT(g, prev_g);
    EXPECT_GT(t, prev_t);
    prev_g = g;
    prev_t = t;
  }
}

TEST(RingModuli, ExponentialsAndGrotzschConstant) {
  EXPECT_NEAR(phi2(3.0), std::exp(mo_grotzsch2(3.0)), 1e-12 * phi2(3.0));
  EXPECT_NEAR(psi2(3.0), std::exp(mo_teichmuller2(3.0)), 1e-12 * psi2(3.0));
  EXPECT_NEAR(phi2(1e8) / 1e8, 4.0, 1e-6);
  double prev = 0.0;
  for (double s = 1e4; s <= 1e12; s *= 10) {
    const double q = phi2(s) / s;
    EXPECT_GE(q, 4.0 - 1e-5);
    EXPECT_LE(q, 4.0 + 1e-12);
    EXPECT_GE(q, prev - 1e-12);
    prev = q;
  }
}

TEST(TeichmullerExcess, Examples) {
  EXPECT_NEAR(teichmuller_excess2(1e6), std::log(16.0), 1e-5);
  EXPECT_LT(teichmuller_excess2(1e6), kPi);
  const double ts[] = {1.01, 1.1, 2, 10, 100};
  for (int i = 0; i + 1 < 5; ++i)
    EXPECT_GT(teichmuller_excess2(ts[i]), teichmuller_excess2(ts[i + 1]));
}

TEST(ComputeA2, ValueAndSupProperty) {
  const A2Result a = compute_a2();
  EXPECT_NEAR(a.value, kPi, 1e-6);
  EXPECT_TRUE(a.attained_at_boundary);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1e-6, 6.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = std::pow(10.0, u(rng));
    EXPECT_GE(a.value, teichmuller_excess2(t) - 1e-12) << t;
  }
}

TEST(Constants, PlanarCase) {
  const SpecialConstants c = constants_for(2);
  EXPECT_EQ(c.lambda_lower, 4.0);
  EXPECT_EQ(c.lambda_upper, 4.0);
  EXPECT_NEAR(c.a_value, kPi, 1e-6);
  EXPECT_TRUE(c.a_exact);
  EXPECT_NEAR(c.q_value, 19.2420, 1e-4);
  EXPECT_EQ(c.q_value, 4 * std::exp(c.a_value / 2));
  // the general upper bound evaluated at lambda = 4 still dominates pi
  EXPECT_GE(std::log((3 + 2 * std::sqrt(2.0)) * 16 / 4), kPi);
}

TEST(Constants, HigherDimensions) {
  EXPECT_THROW(constants_for(1), std::invalid_argument);
  for (int n = 3; n <= 8; ++n) {
    const SpecialConstants c = constants_for(n);
    const double lu = std::pow(2.0, n / (n - 1.0)) * std::exp(n * (n - 2.0) / (n - 1.0));
    EXPECT_NEAR(c.lambda_upper, lu, 1e-12 * lu);
    EXPECT_LE(4.0, c.lambda_lower);
    EXPECT_LE(c.lambda_lower, c.lambda_upper);
    EXPECT_FALSE(c.a_exact);
    EXPECT_NEAR(c.a_value, std::log((3 + 2 * std::sqrt(2.0)) * lu * lu / 4), 1e-12);
    EXPECT_GT(c.a_value, 0.0);
    EXPECT_EQ(c.q_value, 4 * std::exp(c.a_value / 2));
  }
  EXPECT_NEAR(constants_for(3).lambda_upper, 2 * std::sqrt(2.0) * std::exp(1.5), 1e-12);
}

}  // namespace
}  // namespace ringmod
