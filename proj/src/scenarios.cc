#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ringmod/bounds.h"
#include "ringmod/dilatation.h"
#include "ringmod/dominating_factor.h"
#include "ringmod/errors.h"
#include "ringmod/geometry.h"
#include "ringmod/graph_modulus.h"
#include "ringmod/harness.h"
#include "ringmod/maps.h"
#include "ringmod/quadrature.h"
#include "ringmod/special_functions.h"

namespace ringmod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
const double kSqrt2 = std::sqrt(2.0);

using P = Provenance;

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector origin(int n) { return Vector::Zero(n); }

// Point in [-2, 2]^n with (x1, x2) at least 1e-3 from the axis.
Vector random_point(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  Vector x(n);
  do {
    for (int i = 0; i < n; ++i) x(i) = box(rng);
  } while (std::hypot(x(0), x(1)) < 1e-3);
  return x;
}

Matrix random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  } while (std::abs(a.determinant()) < 1e-2);
  return a;
}

Vector random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vector u(n);
  do {
    for (int i = 0; i < n; ++i) u(i) = g(rng);
  } while (u.norm() < 1e-6);
  return u / u.norm();
}

// A random built-in map valid in dimension n.
MapSpec random_map(std::mt19937_64& rng, int n, int which) {
  std::uniform_real_distribution<double> expo(0.3, 2.0);
  switch (which % 5) {
    case 0:
      return MapSpec::Identity();
    case 1:
      return MapSpec::RadialStretch(expo(rng));
    case 2:
      return MapSpec::RotationTwist();
    case 3:
      return MapSpec::Linear(random_matrix(rng, n));
    default:
      return MapSpec::Compose({MapSpec::Linear(random_matrix(rng, n)),
                               MapSpec::RadialStretch(expo(rng))});
  }
}

bool le(double a, double b, double tol) { return a <= b + tol * std::max(1.0, std::abs(b)); }

// Minimum of |A h| / |h . u| over unit h by sampling followed by a compass
// search. Used as an oracle for the closed form.
double sampled_ell(const Matrix& a, const Vector& u, std::mt19937_64& rng, int samples) {
  const int n = static_cast<int>(u.size());
  auto ratio = [&](const Vector& h) {
    const double d = std::abs(h.dot(u));
    return d > 0.0 ? (a * h).norm() / d : INFINITY;
  };
  Vector best = u;
  double fbest = ratio(u);
  for (int k = 0; k < samples; ++k) {
    Vector h = random_unit(rng, n);
    const double f = ratio(h);
    if (f < fbest) {
      fbest = f;
      best = h;
    }
  }
  for (double step = 0.05; step > 1e-10;) {
    bool moved = false;
    for (int i = 0; i < n && !moved; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vector h = best;
        h(i) += sgn * step;
        h /= h.norm();
        const double f = ratio(h);
        if (f < fbest) {
          fbest = f;
          best = h;
          moved = true;
          break;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return fbest;
}

// ---- special functions ------------------------------------------------------

void scenario_a2(ScenarioContext& c) {
  c.near("A2", kPi, c.tol(1e-6), P::kPaper, [] { return compute_a2().value; });
  c.holds("A2 attained as t -> 1+", P::kDerived,
          [] { return compute_a2().attained_at_boundary; });
  c.holds("A2 >= g(t) on 1000 random t", P::kDerived, [] {
    const double a = compute_a2().value;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> s(std::log(1e-9), std::log(1e6));
    for (int i = 0; i < 1000; ++i)
      if (teichmuller_excess2(1.0 + std::exp(s(rng))) > a + 1e-12) return false;
    return true;
  });
  c.near("g(1e6) ~ log 16", std::log(16.0), c.tol(1e-4), P::kDerived,
         [] { return teichmuller_excess2(1e6); });
  c.holds("g decreasing on {1.01, 1.1, 2, 10, 100}", P::kDerived, [] {
    const double t[] = {1.01, 1.1, 2.0, 10.0, 100.0};
    for (int i = 0; i + 1 < 5; ++i)
      if (!(teichmuller_excess2(t[i]) > teichmuller_excess2(t[i + 1]))) return false;
    return true;
  });
}

void scenario_lambda2(ScenarioContext& c) {
  c.near("Phi2(1e8)/1e8", 4.0, c.tol(1e-6), P::kPaper, [] { return phi2(1e8) / 1e8; });
  c.near("mo_G(1e8) - log 1e8", std::log(4.0), c.tol(1e-6), P::kPaper,
         [] { return mo_grotzsch2(1e8) - std::log(1e8); });
  c.holds("Phi2(s)/s in [4 - 1e-5, 4], increasing, s >= 1e4", P::kDerived, [] {
    double prev = 0.0;
    for (double s = 1e4; s <= 1e12; s *= 10.0) {
      const double q = phi2(s) / s;
      if (q < 4.0 - 1e-5 || q > 4.0 + 1e-12 || q < prev - 1e-12) return false;
      prev = q;
    }
    return true;
  });
}

void scenario_special_constants(ScenarioContext& c) {
  c.near("K(0)", kPi / 2, 1e-15, P::kTrivial, [] { return elliptic_k(0.0); });
  c.near("K(1/sqrt2)", 1.854074677, c.tol(1e-9), P::kDerived,
         [] { return elliptic_k(1.0 / kSqrt2); });
  c.near("K(0.5)", 1.685750355, c.tol(1e-9), P::kDerived, [] { return elliptic_k(0.5); });
  c.near("mu(1/sqrt2)", kPi / 2, c.tol(1e-12), P::kTrivial,
         [] { return grotzsch_mu(1.0 / kSqrt2); });
  c.near("mu(1e-3) ~ log 4000", std::log(4000.0), c.tol(1e-6), P::kDerived,
         [] { return grotzsch_mu(1e-3); });
  c.near("mu(1)", 0.0, 1e-15, P::kTrivial, [] { return grotzsch_mu(1.0); });
  c.near("mo_T(1)", kPi, c.tol(1e-12), P::kDerived, [] { return mo_teichmuller2(1.0); });
  for (double t : {0.5, 2.0, 10.0})
    c.near("mo_T(t) - 2 mo_G(sqrt(t+1)), t=" + std::to_string(t), 0.0, c.tol(1e-12), P::kPaper,
           [t] { return mo_teichmuller2(t) - 2.0 * mo_grotzsch2(std::sqrt(t + 1.0)); });
  c.holds("mu(r) mu(sqrt(1-r^2)) = pi^2/4, r = 0.1..0.9", P::kDerived, [&c] {
    for (int i = 1; i <= 9; ++i) {
      const double r = 0.1 * i;
      if (std::abs(grotzsch_mu(r) * grotzsch_mu(std::sqrt(1 - r * r)) - kPi * kPi / 4) >
          c.tol(1e-9))
        return false;
    }
    return true;
  });
  c.holds("mo_G, mo_T strictly increasing", P::kPaper, [] {
    double pg = -INFINITY, pt = -INFINITY;
    for (double s = 1.001; s < 1e6; s *= 1.7) {
      const double g = mo_grotzsch2(s), t = mo_teichmuller2(s);
      if (!(g > pg) || !(t > pt)) return false;
      pg = g;
      pt = t;
    }
    return true;
  });
  c.near("Q2 = 4 e^{pi/2}", 4.0 * std::exp(kPi / 2), c.tol(1e-12), P::kPaper,
         [] { return constants_for(2).q_value; });
  c.near("Q2 ~ 19.2420", 19.2420, 1e-4, P::kPaper, [] { return constants_for(2).q_value; });
  c.near("lambda2", 4.0, 0.0, P::kPaper, [] { return constants_for(2).lambda_upper; });
  c.near_rel("A2 upper bound formula at lambda = 4", 3.1492, 1e-4, P::kDerived,
         [] { return std::log((3 + 2 * kSqrt2) * 16 / 4); });
  c.holds("A2 upper bound formula >= pi", P::kDerived,
          [] { return std::log((3 + 2 * kSqrt2) * 16 / 4) >= kPi; });
  c.near("lambda_upper(3)", 2 * kSqrt2 * std::exp(1.5), 1e-12, P::kDerived,
         [] { return constants_for(3).lambda_upper; });
  c.near_rel("lambda_upper(3) ~ 12.6757", 12.6757, 1e-4, P::kDerived,
         [] { return constants_for(3).lambda_upper; });
  c.holds("Q_n = 4 exp(A/2) as stored, n = 2..5", P::kTrivial, [] {
    for (int n = 2; n <= 5; ++n) {
      const SpecialConstants k = constants_for(n);
      if (k.q_value != 4.0 * std::exp(k.a_value / 2.0)) return false;
      if (k.a_exact != (n == 2)) return false;
    }
    return true;
  });
}

// ---- geometry and maps ------------------------------------------------------

void scenario_geometry_maps(ScenarioContext& c) {
  c.near("mo Annulus(1, e)", 1.0, 1e-15, P::kPaper,
         [] { return exact_modulus(Shape::Annulus(2, 1.0, kE)); });
  c.near("mo Apollonian(0.1, 1)", std::log(10.0), 1e-15, P::kPaper,
         [] { return exact_modulus(Shape::Apollonian(0.1, 1.0, vec2(1.0, 0.0))); });
  c.holds("HalfSemiring(2, 2) rejected", P::kTrivial, [] {
    try {
      Shape::HalfSemiring(2, 2.0, 2.0);
    } catch (const std::invalid_argument&) {
      return true;
    }
    return false;
  });
  c.near("mo HalfSemiring(1, 1 + 1e-9)", std::log1p(1e-9), 1e-15, P::kTrivial,
         [] { return exact_modulus(Shape::HalfSemiring(2, 1.0, 1.0 + 1e-9)); });
  c.near("M(Gamma) HalfSemiring n=2", kPi, 1e-14, P::kPaper,
         [] { return gamma_family_modulus(Shape::HalfSemiring(2, 1.0, kE)); });
  c.near("M(Gamma) Annulus n=2", 2 * kPi, 1e-14, P::kDerived,
         [] { return gamma_family_modulus(Shape::Annulus(2, 1.0, kE)); });
  c.near("M(Gamma) HalfSemiring n=3", 2 * kPi, 1e-14, P::kPaper,
         [] { return gamma_family_modulus(Shape::HalfSemiring(3, 1.0, kE)); });
  c.near("mo translation/scaling invariance", 0.0, 1e-14, P::kTrivial, [] {
    Vector c3(3);
    c3 << 0.3, -1.0, 0.0;
    const double a = exact_modulus(Shape::HalfSemiring(0.7, 2.1, c3));
    const double b = exact_modulus(Shape::HalfSemiring(3, 7.0, 21.0));
    return a - b;
  });
  c.near("M(Gamma) semiring / annulus", 0.5, 1e-15, P::kPaper, [] {
    return gamma_family_modulus(Shape::HalfSemiring(3, 1.0, 4.0)) /
           gamma_family_modulus(Shape::Annulus(3, 1.0, 4.0));
  });
  c.near("mo_from_gamma semiring n=2", 1.0, 1e-15, P::kPaper,
         [] { return mo_from_gamma(kPi, ShapeKind::kHalfSemiring, 2); });
  c.near("mo_from_gamma ring n=2", 1.0, 1e-15, P::kPaper,
         [] { return mo_from_gamma(2 * kPi, ShapeKind::kAnnulus, 2); });
  c.near("mo_from_gamma semiring n=3", 1.0, 1e-15, P::kTrivial,
         [] { return mo_from_gamma(2 * kPi, ShapeKind::kHalfSemiring, 3); });
  c.near("radial 0.5 at (4, 0)", 0.0, 1e-15, P::kTrivial, [] {
    return (eval_map(MapSpec::RadialStretch(0.5), vec2(4, 0)) - vec2(2, 0)).norm();
  });
  c.near("twist on the unit circle", 0.0, 1e-15, P::kDerived, [] {
    const Vector x = vec2(0.6, 0.8);
    return (eval_map(MapSpec::RotationTwist(), x) - x).norm();
  });
  c.near("twist |f(x)| = |x| and det = 1, 1000 points", 0.0, c.tol(1e-10), P::kPaper, [] {
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vector x = random_point(rng, 2 + i % 2);
      const MapSpec t = MapSpec::RotationTwist();
      worst = std::max(worst, std::abs(eval_map(t, x).norm() - x.norm()));
      worst = std::max(worst, std::abs(jacobian(t, x).det - 1.0));
    }
    return worst;
  });
  c.holds("radial a: singular values {a, 1}, det a at |x| = 1", P::kDerived, [] {
    const Vector x = vec2(0.6, -0.8);
    for (double a : {0.5, 0.8, 1.25}) {
      const JacobianResult j = jacobian(MapSpec::RadialStretch(a), x);
      Eigen::JacobiSVD<Matrix> svd(j.matrix);
      const Vector s = svd.singularValues();
      if (std::abs(s.maxCoeff() - std::max(a, 1.0)) > 1e-14 ||
          std::abs(s.minCoeff() - std::min(a, 1.0)) > 1e-14 || std::abs(j.det - a) > 1e-14)
        return false;
    }
    return true;
  });
  c.near("analytic vs finite-difference Jacobians (max rel)", 0.0, 1e-4, P::kDerived, [] {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> radius(0.5, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const int n = 2 + i % 3;
      const MapSpec map = random_map(rng, n, i);
      Vector x = random_unit(rng, n) * radius(rng);
      if (std::hypot(x(0), x(1)) < 0.1) continue;
      const Matrix a = jacobian(map, x).matrix;
      const Matrix f = finite_difference_jacobian(map, x).matrix;
      for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k)
          worst = std::max(worst, std::abs(a(r, k) - f(r, k)) / std::max(1.0, std::abs(a(r, k))));
    }
    return worst;
  });
}

// ---- dilatation ----------------------------------------------------------------

void twist_certification(ScenarioContext& c, int n, int count) {
  const double h = std::pow(1.0 + kSqrt2, n);
  const std::string tag = " n=" + std::to_string(n);
  std::mt19937_64 rng(100 + n);
  std::vector<Vector> pts;
  for (int i = 0; i < count; ++i) pts.push_back(random_point(rng, n));
  const MapSpec twist = MapSpec::RotationTwist();
  c.near("max |J - 1|" + tag, 0.0, c.tol(1e-10), P::kPaper, [&] {
    double w = 0.0;
    for (const auto& x : pts) w = std::max(w, std::abs(jacobian(twist, x).det - 1.0));
    return w;
  });
  c.near("max |H_I - (1+sqrt2)^n|" + tag, 0.0, c.tol(1e-6), P::kPaper, [&] {
    double w = 0.0;
    for (const auto& x : pts)
      w = std::max(w, std::abs(matrix_dilatations(jacobian(twist, x).matrix).inner - h));
    return w;
  });
  c.near("max |H_O - (1+sqrt2)^n|" + tag, 0.0, c.tol(1e-6), P::kPaper, [&] {
    double w = 0.0;
    for (const auto& x : pts)
      w = std::max(w, std::abs(matrix_dilatations(jacobian(twist, x).matrix).outer - h));
    return w;
  });
  c.near("max |D(x, 0) - 1|" + tag, 0.0, c.tol(1e-8), n == 2 ? P::kPaper : P::kDerived, [&] {
    double w = 0.0;
    for (const auto& x : pts) w = std::max(w, std::abs(angular_dilatation(twist, x, origin(n)) - 1));
    return w;
  });
}

void scenario_twist_certification(ScenarioContext& c) {
  twist_certification(c, 2, 1000);
  twist_certification(c, 3, 1000);
}

// Counts chain violations over `count` random (map, x, x0) samples.
void dilatation_chains(ScenarioContext& c, int n, int count) {
  const std::string tag = " n=" + std::to_string(n);
  struct Item {
    DilatationSample s;
    double fu;  // |f'(x) u|
  };
  std::vector<Item> items;
  std::string failure;
  try {
    std::mt19937_64 rng(200 + n);
    std::uniform_real_distribution<double> radius(0.3, 3.0);
    while (static_cast<int>(items.size()) < count) {
      const MapSpec map = random_map(rng, n, static_cast<int>(items.size()));
      const Vector x = random_unit(rng, n) * radius(rng);
      const Vector x0 = random_unit(rng, n) * radius(rng);
      if (std::hypot(x(0), x(1)) < 1e-2 || (x - x0).norm() < 1e-3 || x.norm() < 1e-2) continue;
      DilatationSample s = directional_sample(map, x, x0);
      const double fu = (jacobian(map, x).matrix * s.u).norm();
      items.push_back({std::move(s), fu});
    }
  } catch (const std::exception& e) {
    failure = e.what();
  }
  auto count_if = [&](auto pred) {
    if (!failure.empty()) throw std::runtime_error(failure);
    int bad = 0;
    for (const auto& it : items) bad += pred(it) ? 0 : 1;
    return static_cast<double>(bad);
  };
  const double tol = c.tol(1e-9);
  const double nn = n;
  c.near("relat chain violations" + tag, 0.0, 0.0, P::kPaper, [&] {
    return count_if([&](const Item& it) {
      const MatrixDilatations& m = it.s.matrix;
      const double lo = std::min(m.inner, m.outer), hi = std::max(m.inner, m.outer);
      const double mid = std::pow(m.linear, nn / 2);
      return le(m.linear, lo, tol) && le(lo, mid, tol) && le(mid, hi, tol) &&
             le(hi, std::pow(m.linear, nn - 1), tol);
    });
  });
  c.near("1/H_O <= D <= H_I violations" + tag, 0.0, 0.0, P::kPaper, [&] {
    return count_if([&](const Item& it) {
      const DilatationSample& s = it.s;
      return le(1 / s.matrix.outer, s.angular, tol) && le(s.angular, s.matrix.inner, tol);
    });
  });
  c.near("normal chain violations" + tag, 0.0, 0.0, P::kPaper, [&] {
    return count_if([&](const Item& it) {
      const DilatationSample& s = it.s;
      const MatrixDilatations& m = s.matrix;
      const double a = std::pow(m.inner, 1 / (1 - nn)), b = std::pow(m.outer, 1 / (nn - 1));
      return le(1 / m.outer, a, tol) && le(a, s.normal, tol) && le(s.normal, b, tol) &&
             le(b, m.inner, tol);
    });
  });
  c.near("l <= ell <= |f'u| <= Lcal <= |f'| violations" + tag, 0.0, 0.0, P::kPaper, [&] {
    return count_if([&](const Item& it) {
      const DilatationSample& s = it.s;
      const double fu = it.fu;
      return le(s.matrix.small, s.ell, tol) && le(s.ell, fu, tol) && le(fu, s.lcal, tol) &&
             le(s.lcal, s.matrix.norm, tol);
    });
  });
}


void scenario_dilatation_chains(ScenarioContext& c) {
  for (int n : {2, 3, 4}) dilatation_chains(c, n, 1000);
  for (int n : {2, 3}) {
    c.near("max rel |ell closed form - sampled min|, n=" + std::to_string(n), 0.0, c.tol(1e-3),
           P::kDerived, [n] {
             std::mt19937_64 rng(300 + n);
             double worst = 0.0;
             for (int k = 0; k < 100; ++k) {
               const Matrix a = random_matrix(rng, n);
               const Vector u = random_unit(rng, n);
               const double closed = ell_f(a, u);
               const double sampled = sampled_ell(a, u, rng, 2000);
               worst = std::max(worst, std::abs(closed - sampled) / closed);
             }
             return worst;
           });
  }
}

void scenario_dilatation_examples(ScenarioContext& c) {
  Matrix d(2, 2);
  d << 2.0, 0.0, 0.0, 0.5;
  c.near("diag(2, 0.5): H_I", 4.0, 1e-12, P::kTrivial,
         [&] { return matrix_dilatations(d).inner; });
  c.near("diag(2, 0.5): H_O", 4.0, 1e-12, P::kTrivial,
         [&] { return matrix_dilatations(d).outer; });
  c.near("diag(2, 0.5): H", 4.0, 1e-12, P::kTrivial,
         [&] { return matrix_dilatations(d).linear; });
  c.near("identity: ell", 1.0, 1e-14, P::kTrivial,
         [] { return ell_f(Matrix::Identity(3, 3), Vector::Unit(3, 1)); });
  c.near("identity: Lcal", 1.0, 1e-12, P::kTrivial,
         [] { return lcal_f(Matrix::Identity(3, 3), Vector::Unit(3, 1)); });
  const Vector x = vec2(0.6, 0.8);
  c.near("radial 0.8: ell", 0.8, 1e-12, P::kDerived,
         [&] { return directional_sample(MapSpec::RadialStretch(0.8), x, origin(2)).ell; });
  c.near("radial 0.8: Lcal", 0.8, 1e-9, P::kDerived,
         [&] { return directional_sample(MapSpec::RadialStretch(0.8), x, origin(2)).lcal; });
  c.near("radial 0.5: Lcal", std::sqrt(1.0 / 3.0), 1e-9, P::kDerived,
         [&] { return directional_sample(MapSpec::RadialStretch(0.5), x, origin(2)).lcal; });
  c.near("radial 0.8: D", 1.25, 1e-12, P::kDerived,
         [&] { return directional_sample(MapSpec::RadialStretch(0.8), x, origin(2)).angular; });
  c.near("radial 0.8: T", 0.8, 1e-9, P::kDerived,
         [&] { return directional_sample(MapSpec::RadialStretch(0.8), x, origin(2)).normal; });
  c.near("identity: D and T", 0.0, 1e-12, P::kTrivial, [] {
    Vector a(3), b(3);
    a << 0.3, -1.0, 2.0;
    b << 1.0, 1.0, 1.0;
    const DilatationSample s = directional_sample(MapSpec::Identity(), a, b);
    return std::max(std::abs(s.angular - 1), std::abs(s.normal - 1));
  });
  c.near("conformal matrices: max |D - 1|, |T - 1|", 0.0, c.tol(1e-9), P::kPaper, [] {
    std::mt19937_64 rng(400);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const int n = 2 + k % 3;
      Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n));
      const Matrix q = Matrix(qr.householderQ()) * (0.5 + 0.01 * k);
      const Vector u = random_unit(rng, n);
      const DilatationSample s = directional_sample(MapSpec::Linear(q), u, origin(n));
      worst = std::max({worst, std::abs(s.angular - 1), std::abs(s.normal - 1)});
    }
    return worst;
  });
  c.near("rotation invariance A -> QA: max |dD|, |dT|", 0.0, c.tol(1e-10), P::kDerived, [] {
    std::mt19937_64 rng(401);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const int n = 2 + k % 3;
      const Matrix a = random_matrix(rng, n);
      Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n));
      const Matrix q = qr.householderQ();
      const Vector u = random_unit(rng, n);
      const DilatationSample s1 = directional_sample(MapSpec::Linear(a), u, origin(n));
      const DilatationSample s2 = directional_sample(MapSpec::Linear(q * a), u, origin(n));
      worst = std::max({worst, std::abs(s1.angular - s2.angular) / s1.angular,
                        std::abs(s1.normal - s2.normal) / s1.normal});
    }
    return worst;
  });
}

// ---- graph modulus ---------------------------------------------------------------

GridResolution grid(const ScenarioContext& c, int radial, int angular, int stencil = 1) {
  GridResolution r;
  r.radial = c.grid(radial);
  r.angular = c.grid(angular);
  r.stencil = stencil;
  return r;
}

SolverOptions solver(const ScenarioContext& c) {
  SolverOptions o;
  o.tol = c.tol(1e-3);
  return o;
}

void scenario_solver_annulus(ScenarioContext& c) {
  c.near_rel("Annulus(2, 1, e) 64x256: M(Gamma)", 2 * kPi, c.tol(0.02), P::kDerived, [&] {
    return shape_modulus(Shape::Annulus(2, 1.0, kE), grid(c, 64, 256), solver(c)).m_gamma;
  });
  c.near_rel("HalfSemiring(2, 1, e) 64x256: M(Gamma)", kPi, c.tol(0.02), P::kPaper, [&] {
    return shape_modulus(Shape::HalfSemiring(2, 1.0, kE), grid(c, 64, 256), solver(c)).m_gamma;
  });
  c.near_rel("Apollonian(0.1, 1) 64x256: mo", std::log(10.0), c.tol(0.03), P::kPaper, [&] {
    return shape_modulus(Shape::Apollonian(0.1, 1.0, vec2(1, 0)), grid(c, 64, 256), solver(c))
        .mo;
  });
  c.near_rel("HalfSemiring(3, 1, e) 12x16: M(Gamma)", 2 * kPi, c.tol(0.05), P::kPaper, [&] {
    return shape_modulus(Shape::HalfSemiring(3, 1.0, kE), grid(c, 12, 16), solver(c)).m_gamma;
  });
}

void scenario_solver_refinement(ScenarioContext& c) {
  std::vector<ModulusEstimate> est;
  std::string failure;
  try {
    for (int k : {1, 2, 4})
      est.push_back(shape_modulus(Shape::Annulus(2, 1.0, kE), grid(c, 16 * k, 64 * k), solver(c)));
  } catch (const std::exception& e) {
    failure = e.what();
  }
  auto need = [&] {
    if (!failure.empty()) throw std::runtime_error(failure);
  };
  c.holds("relative error vs 2 pi decreasing (16x64, 32x128, 64x256)", P::kDerived, [&] {
    need();
    double prev = INFINITY;
    for (const auto& e : est) {
      const double err = std::abs(e.m_gamma - 2 * kPi) / (2 * kPi);
      if (!(err < prev)) return false;
      prev = err;
    }
    return true;
  });
  c.holds("admissible at termination (gap <= tol)", P::kTrivial, [&] {
    need();
    for (const auto& e : est)
      if (!(e.duality_gap <= solver(c).tol)) return false;
    return true;
  });
  c.holds("dual lower bound <= M(Gamma)", P::kTrivial, [&] {
    need();
    for (const auto& e : est)
      if (!(e.lower_bound <= e.m_gamma * (1 + 1e-12))) return false;
    return true;
  });
}

void scenario_solver_symmetry(ScenarioContext& c) {
  c.near_rel("semiring / annulus at matched grids", 0.5, c.tol(0.03), P::kPaper, [&] {
    const double half =
        shape_modulus(Shape::HalfSemiring(2, 1.0, 3.0), grid(c, 32, 65), solver(c)).m_gamma;
    const double full =
        shape_modulus(Shape::Annulus(2, 1.0, 3.0), grid(c, 32, 128), solver(c)).m_gamma;
    return half / full;
  });
  c.holds("identical runs are bitwise identical", P::kTrivial, [&] {
    const Shape s = Shape::Annulus(2, 1.0, kE);
    const ModulusEstimate a = shape_modulus(s, grid(c, 16, 64), solver(c));
    const ModulusEstimate b = shape_modulus(s, grid(c, 16, 64), solver(c));
    return a.m_gamma == b.m_gamma && a.density == b.density && a.paths == b.paths;
  });
  c.near("single edge graph: M = 1", 1.0, 1e-9, P::kTrivial, [] {
    GridGraph g;
    g.dim = 2;
    g.nodes = {vec2(0, 0), vec2(1, 0)};
    g.edges = {{0, 1, 1.0}};
    g.sources = {0};
    g.sinks = {1};
    g.cell_volume = {1.0};
    return modulus_connect(g).m_gamma;
  });
}

void scenario_twist_image(ScenarioContext& c) {
  const Shape ring = Shape::Annulus(2, 1.0, kE);
  double direct = 0.0, image = 0.0;
  c.near_rel("twist image of Annulus(2, 1, e) 64x256/s5: mo", 1.0, c.tol(0.02), P::kDerived,
             [&] {
               image = image_modulus(MapSpec::RotationTwist(), ring, grid(c, 64, 256, 5),
                                     solver(c))
                           .mo;
               return image;
             });
  c.near_rel("twist image vs direct estimate on matched grids", 1.0, c.tol(0.01), P::kDerived,
             [&] {
               direct = shape_modulus(ring, grid(c, 64, 256, 5), solver(c)).mo;
               if (image == 0.0) throw std::runtime_error("image estimate unavailable");
               return image / direct;
             });
}

void scenario_radial_image(ScenarioContext& c) {
  const Shape s = Shape::HalfSemiring(2, 1.0, kE);
  c.near_rel("identity image of S(0; 1, e): mo", 1.0, c.tol(0.02), P::kTrivial, [&] {
    return image_modulus(MapSpec::Identity(), s, grid(c, 64, 129), solver(c)).mo;
  });
  double ratio = 0.0;
  c.near_rel("radial 0.8 image of S(0; 1, e): mo", 0.8, c.tol(0.02), P::kDerived, [&] {
    ratio = image_modulus(MapSpec::RadialStretch(0.8), s, grid(c, 64, 129), solver(c)).mo;
    return ratio;
  });
  c.bound("eq1est sandwich with solver ratio", P::kDerived, false, [&] {
    if (ratio == 0.0) throw std::runtime_error("image estimate unavailable");
    return eq1est_bounds(MapSpec::RadialStretch(0.8), s, {}, Reference{ratio, 0.02 * ratio});
  });
  c.near_rel("radial 0.5 image of Annulus(2, 1, e): mo", 0.5, c.tol(0.02), P::kDerived, [&] {
    return image_modulus(MapSpec::RadialStretch(0.5), Shape::Annulus(2, 1.0, kE),
                         grid(c, 32, 128), solver(c))
        .mo;
  });
}

// ---- bounds ------------------------------------------------------------------------

Shape semiring_1e(int n = 2) { return Shape::HalfSemiring(n, 1.0, kE); }

QuadratureSpec coarse_spec() {
  QuadratureSpec q;
  q.radial_nodes = 8;
  q.spherical_nodes = 8;
  return q;
}

void scenario_quad_measure(ScenarioContext& c) {
  auto one = [](const Vector&) { return 1.0; };
  c.near("nu(S(0; 1, e)), n=2", kPi, c.tol(1e-6), P::kPaper,
         [&] { return quad_weighted(one, semiring_1e(2)).value; });
  c.near("nu(S(0; 1, e)), n=3", 2 * kPi, c.tol(1e-6), P::kPaper,
         [&] { return quad_weighted(one, semiring_1e(3)).value; });
  c.near("nu(S(0; 1, e^2)), n=3", 4 * kPi, c.tol(1e-6), P::kPaper,
         [&] { return quad_weighted(one, Shape::HalfSemiring(3, 1.0, kE * kE)).value; });
  c.near("g = 0", 0.0, 1e-15, P::kTrivial, [&] {
    return quad_weighted([](const Vector&) { return 0.0; }, semiring_1e(2)).value;
  });
  c.near_rel("nu(S(x0; 0.5, 4)), shifted center, n=3", 2 * kPi * std::log(8.0), c.tol(1e-6),
             P::kPaper, [&] {
               Vector x0(3);
               x0 << 1.0, -2.0, 0.0;
               return quad_weighted(one, Shape::HalfSemiring(0.5, 4.0, x0)).value;
             });
  c.near_rel("nu(Annulus(2, 1, e)) ring variant", 2 * kPi, c.tol(1e-6), P::kDerived,
             [&] { return quad_weighted(one, Shape::Annulus(2, 1.0, kE)).value; });
}

void scenario_radial_sharpness(ScenarioContext& c) {
  const MapSpec f = MapSpec::RadialStretch(0.8);
  BoundReport b;
  c.bound("eq1est with closed-form ratio 0.8", P::kDerived, false, [&] {
    b = eq1est_bounds(f, semiring_1e(), {}, Reference{0.8, 0.0});
    return b;
  });
  c.near("eq1est lower", 0.8, c.tol(1e-3), P::kDerived, [&] { return b.left; });
  c.near("eq1est upper", 0.8, c.tol(1e-3), P::kDerived, [&] { return b.right; });
  c.near("eq1est n=3 lower", 0.8, c.tol(1e-3), P::kDerived,
         [&] { return eq1est_bounds(f, semiring_1e(3), coarse_spec()).left; });
  c.near("eq1est n=3 upper", 0.8, c.tol(1e-3), P::kDerived,
         [&] { return eq1est_bounds(f, semiring_1e(3), coarse_spec()).right; });
  for (double t : {0.5, 1.0, 3.0})
    c.near("psi_D radial 0.8 at t=" + std::to_string(t), 1.25, c.tol(1e-9), P::kDerived,
           [&, t] { return psi_D(f, t, origin(2)).value; });
}

void scenario_eq2est_sandwich(ScenarioContext& c) {
  BoundReport b;
  c.bound("eq2est radial 0.8 with image mo 0.8", P::kDerived, false, [&] {
    b = eq2est_bounds(MapSpec::RadialStretch(0.8), semiring_1e(), {}, Reference{0.8, 0.0});
    return b;
  });
  c.near("eq2est lower", 0.2, c.tol(1e-4), P::kDerived, [&] { return b.left; });
  c.near("eq2est upper", 0.25, c.tol(1e-4), P::kDerived, [&] { return b.right; });
  c.near("true difference mo S - mo f(S)", 0.2, 1e-15, P::kDerived,
         [&] { return b.middle.value(); });
  BoundReport e;
  c.bound("eq2est radial 1.25: upper side not asserted", P::kDerived, true, [&] {
    e = eq2est_bounds(MapSpec::RadialStretch(1.25), semiring_1e(), {}, Reference{1.25, 0.0});
    return e;
  });
  c.holds("eq2est radial 1.25: lower side holds", P::kDerived,
          [&] { return e.left_verdict == Verdict::kHolds; });
  c.holds("eq2est radial 1.25: upper side inconclusive", P::kDerived,
          [&] { return e.right_verdict == Verdict::kInconclusive; });
}

void scenario_identity_all(ScenarioContext& c) {
  const MapSpec id = MapSpec::Identity();
  c.near("eq1est lower", 1.0, 1e-12, P::kTrivial,
         [&] { return eq1est_bounds(id, semiring_1e()).left; });
  c.near("eq1est upper", 1.0, 1e-12, P::kTrivial,
         [&] { return eq1est_bounds(id, semiring_1e()).right; });
  c.near("eq2est lower", 0.0, 1e-12, P::kTrivial,
         [&] { return eq2est_bounds(id, semiring_1e()).left; });
  c.near("eq2est upper", 0.0, 1e-12, P::kTrivial,
         [&] { return eq2est_bounds(id, semiring_1e()).right; });
  c.near("psi_D", 1.0, 1e-12, P::kTrivial, [&] { return psi_D(id, 2.0, origin(2)).value; });
  c.near("modintbound on S(0; 1, e^2)", 2.0, 1e-9, P::kTrivial,
         [&] { return modintbound(id, Shape::HalfSemiring(2, 1.0, kE * kE)).value; });
  c.near("holder LHS", 0.0, 1e-12, P::kTrivial,
         [&] { return holder_identity_check(id, origin(2), 0.01, 1.0).left; });
  c.near("holder RHS", 0.0, 1e-12, P::kTrivial,
         [&] { return holder_identity_check(id, origin(2), 0.01, 1.0).right; });
  c.holds("infinity: all zero, extends", P::kTrivial, [&] {
    const InfinityReport r = infinity_check(id, 2, 1.0, {1e2, 1e4, 1e8});
    for (double v : r.values)
      if (std::abs(v) > 1e-12) return false;
    return r.verdict == InfinityVerdict::kExtends;
  });
}

void scenario_twist_ring_bounds(ScenarioContext& c) {
  const MapSpec t = MapSpec::RotationTwist();
  const Shape ring = Shape::Annulus(2, 1.0, kE);
  BoundReport b;
  c.bound("eq1est ring variant with ratio 1", P::kPaper, false, [&] {
    b = eq1est_bounds(t, ring, {}, Reference{1.0, 0.0});
    return b;
  });
  c.near("eq1est ring lower (sharp)", 1.0, c.tol(1e-8), P::kPaper, [&] { return b.left; });
  c.holds("eq1est ring upper > 1", P::kDerived, [&] { return b.right > 1.0; });
  c.near("psi_D ring variant", 1.0, c.tol(1e-8), P::kPaper,
         [&] { return psi_D(t, 1.5, origin(2), {}, true).value; });
  c.near("modintbound ring variant", 1.0, c.tol(1e-8), P::kDerived,
         [&] { return modintbound(t, ring).value; });
}

void scenario_domfac(ScenarioContext& c) {
  c.holds("Linear(2), n=3 divergent", P::kPaper, [] {
    return is_divergence_type(DominatingFactor::Linear(2.0), 3) == DivergenceClass::kDivergent;
  });
  c.holds("Power(0.5), n=2 convergent", P::kDerived, [] {
    return is_divergence_type(DominatingFactor::Power(1.0, 0.5, 1.0), 2) ==
           DivergenceClass::kConvergent;
  });
  c.holds("Power(1), n=2 divergent", P::kDerived, [] {
    return is_divergence_type(DominatingFactor::Power(1.0, 1.0), 2) ==
           DivergenceClass::kDivergent;
  });
  c.holds("Power classification on a 20-point grid", P::kDerived, [] {
    const double alphas[] = {0.2, 0.3, 0.5, 0.6, 0.75, 0.9, 1.0, 1.2, 2.0, 3.0};
    for (int n : {2, 3}) {
      for (double a : alphas) {
        const double t0 = a < 1 ? std::pow((1 - a) / a, 1 / a) : 0.0;
        // int_1^inf t^{a - n/(n-1)} dt diverges iff the exponent is >= -1
        const bool divergent = a - n / (n - 1.0) >= -1.0;
        const DivergenceClass k = is_divergence_type(DominatingFactor::Power(1.0, a, t0), n);
        if (k != (divergent ? DivergenceClass::kDivergent : DivergenceClass::kConvergent))
          return false;
      }
    }
    return true;
  });
  c.near("max rel |quadrature - closed form| on 27 cases", 0.0, c.tol(1e-8), P::kPaper, [] {
    double worst = 0.0;
    for (int n : {2, 3, 4})
      for (double g : {0.5, 1.0, 2.0})
        for (double m : {1.0, 10.0, 100.0}) {
          const DominatedBound d =
              dominated_modulus_bound(m, kPi, 1.0, n, DominatingFactor::Linear(g));
          worst = std::max(worst, std::abs(d.value - *d.closed_form) / std::abs(*d.closed_form));
        }
    return worst;
  });
  c.near("n=2, gamma=1, M=pi, m=10: closed form", 0.5 * std::log((20 + std::log(2.0)) /
                                                                   (1 + std::log(2.0))),
         c.tol(1e-8), P::kPaper, [] {
           return dominated_modulus_bound(10, kPi, 1, 2, DominatingFactor::Linear(1)).value;
         });
  c.holds("bound strictly increasing in m", P::kPaper, [] {
    double prev = -INFINITY;
    for (double m : {10.0, 1e2, 1e3, 1e4}) {
      const double v = dominated_modulus_bound(m, kPi, 1, 2, DominatingFactor::Linear(1)).value;
      if (!(v > prev)) return false;
      prev = v;
    }
    return true;
  });
  c.holds("bound(1e4) - bound(10) > 1", P::kPaper, [] {
    const auto h = DominatingFactor::Linear(1);
    return dominated_modulus_bound(1e4, kPi, 1, 2, h).value -
               dominated_modulus_bound(10, kPi, 1, 2, h).value >
           1.0;
  });
  c.near("n=3, gamma=1: closed form with mu=1/2, C1=2/3", 0.0, 1e-12, P::kDerived, [] {
    const DominatedBound d = dominated_modulus_bound(10, kPi, 1, 3, DominatingFactor::Linear(1));
    const double s = d.sigma;
    return *d.closed_form - 2.0 / 3.0 * (std::sqrt(30 + s) - std::sqrt(1 + s));
  });
}

void scenario_holder_identity(ScenarioContext& c) {
  const Vector t = origin(2);
  c.bound("identity on S(0; 0.01, 1)", P::kTrivial, false,
          [&] { return holder_identity_check(MapSpec::Identity(), t, 0.01, 1.0); });
  for (double a : {0.5, 0.8})
    c.bound("radial " + std::to_string(a).substr(0, 3) + " on S(0; 0.01, 1)", P::kDerived, false,
            [&, a] { return holder_identity_check(MapSpec::RadialStretch(a), t, 0.01, 1.0); });
  c.near("omega(radial 0.8; R = 0.5)", 0.25, c.tol(1e-8), P::kDerived,
         [&] { return holder_omega(MapSpec::RadialStretch(0.8), t, 0.5).value; });
  c.near("threshold 1/alpha^{n-1} - 1, alpha=0.8", 0.25, 1e-15, P::kDerived,
         [] { return holder_threshold(0.8, 2); });
}

void scenario_infinity(ScenarioContext& c) {
  const std::vector<double> radii = {1e2, 1e4, 1e8, 1e16, 1e32, 1e64};
  InfinityReport r;
  c.holds("radial 0.8 extends", P::kDerived, [&] {
    r = infinity_check(MapSpec::RadialStretch(0.8), 2, 1.0, radii);
    return r.verdict == InfinityVerdict::kExtends;
  });
  c.near("radial 0.8: max rel deviation from closed form", 0.0, c.tol(1e-6), P::kDerived, [&] {
    if (r.values.size() != radii.size()) throw std::runtime_error("no values");
    double worst = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double closed = 0.25 * kPi / std::log(radii[i]);
      worst = std::max(worst, std::abs(r.values[i] - closed) / closed);
    }
    return worst;
  });
  InfinityReport s;
  c.holds("D = 1 + log|x| inconclusive", P::kDerived, [&] {
    s = infinity_check([](const Vector& x) { return 1.0 + std::log(x.norm()); }, 2, 1.0, radii);
    return s.verdict == InfinityVerdict::kInconclusive;
  });
  c.near_rel("D = 1 + log|x| trend", kPi / 2, c.tol(0.05), P::kDerived, [&] {
    if (s.values.empty()) throw std::runtime_error("no values");
    return s.values.back();
  });
}

void scenario_separation_lipschitz(ScenarioContext& c) {
  c.near("Q2 e^{-5}", 0.12965, 1e-5, P::kDerived, [] { return separation_bound(10.0).value; });
  c.holds("separation bound decreasing in mo", P::kTrivial,
          [] { return separation_bound(11.0).value < separation_bound(10.0).value; });
  c.near("boundary estimate at mo = pi + 1e-9", 1.0, 1e-8, P::kTrivial,
         [] { return boundary_estimate(kPi + 1e-9, 1.0).value; });
  c.holds("boundary estimate rejects mo <= A2", P::kPaper, [] {
    try {
      boundary_estimate(3.0, 1.0);
    } catch (const DomainError&) {
      return true;
    }
    return false;
  });
  c.holds("n=3 constants flagged conservative", P::kTrivial, [] {
    return separation_bound(10.0, 3).conservative && !separation_bound(10.0, 2).conservative;
  });
  c.near("C1 = C2 = e^pi at M=0, R=1", 0.0, 1e-12, P::kDerived, [] {
    const LipschitzConstants l = lipschitz_constants(kPi, 0.0, 1.0, 2);
    return std::max(std::abs(l.c1 - std::exp(kPi)), std::abs(l.c2 - std::exp(kPi)));
  });
  c.near("doubling R halves both constants", 0.0, 1e-14, P::kTrivial, [] {
    const LipschitzConstants a = lipschitz_constants(kPi, 1.0, 1.0, 2);
    const LipschitzConstants b = lipschitz_constants(kPi, 1.0, 2.0, 2);
    return std::max(std::abs(b.c1 / a.c1 - 0.5), std::abs(b.c2 / a.c2 - 0.5));
  });
}

void scenario_continuity(ScenarioContext& c) {
  c.near("n=2, gamma=1: exponent C2", 0.5, 1e-15, P::kPaper,
         [] { return continuity_bounds(2, 1.0, kPi, 0.1, 1.0, 1e-3).c2; });
  c.near("n=3, gamma=1: mu", 0.5, 1e-15, P::kDerived,
         [] { return continuity_bounds(3, 1.0, kPi, 0.1, 1.0, 1e-3).mu; });
  c.near("n=3, gamma=1: C1", 2.0 / 3.0, 1e-15, P::kDerived,
         [] { return continuity_bounds(3, 1.0, kPi, 0.1, 1.0, 1e-3).c1; });
  c.near("n=3, gamma=1: beta = C1 sqrt 3", 2.0 / 3.0 * std::sqrt(3.0), 1e-14, P::kDerived,
         [] { return continuity_bounds(3, 1.0, kPi, 0.1, 1.0, 1e-3).beta; });
  for (int n : {2, 3})
    c.holds("bound decreasing as |x1 - x0| -> 0, n=" + std::to_string(n), P::kTrivial, [n] {
      double prev = INFINITY;
      for (double d = 0.09; d > 1e-300; d *= 1e-3) {
        const double v = continuity_bounds(n, 1.0, kPi, 0.1, 1.0, d).value;
        if (!(v < prev)) return false;
        prev = v;
      }
      return true;
    });
  c.holds("rejects |x1 - x0| >= r0", P::kTrivial, [] {
    try {
      continuity_bounds(2, 1.0, kPi, 0.1, 1.0, 0.1);
    } catch (const std::invalid_argument&) {
      return true;
    }
    return false;
  });
}

// Image moduli of S(0; 1, e) under several maps, measured by the solver and
// compared against every bound that applies.
void scenario_sandwich_property(ScenarioContext& c) {
  Matrix stretch(2, 2);
  stretch << 1.2, 0.0, 0.0, 0.9;
  Matrix shear(2, 2);
  shear << 1.1, 0.0, 0.0, 0.95;
  struct Case {
    std::string name;
    MapSpec map;
    int stencil;
  };
  const std::vector<Case> cases = {
      {"identity", MapSpec::Identity(), 1},
      {"radial 0.8", MapSpec::RadialStretch(0.8), 1},
      {"radial 1.25", MapSpec::RadialStretch(1.25), 1},
      {"linear diag(1.2, 0.9)", MapSpec::Linear(stretch), 3},
      {"linear then radial 0.9",
       MapSpec::Compose({MapSpec::Linear(shear), MapSpec::RadialStretch(0.9)}), 3},
  };
  const Shape s = semiring_1e();
  // the solver reference carries a 2% error; the quadrature need not be tighter than this
  QuadratureSpec q;
  q.rel_tol = 1e-6;
  for (const auto& k : cases) {
    double mo = 0.0;
    std::string failure;
    try {
      mo = image_modulus(k.map, s, grid(c, 48, 97, k.stencil), solver(c)).mo;
    } catch (const std::exception& e) {
      failure = e.what();
    }
    auto need = [&] {
      if (!failure.empty()) throw std::runtime_error(failure);
    };
    const Reference ref{mo, 0.02 * mo};
    c.bound("eq1est sandwich: " + k.name, P::kPaper, false, [&] {
      need();
      return eq1est_bounds(k.map, s, q, ref);
    });
    c.bound("modintbound <= mo f(S): " + k.name, P::kPaper, false, [&] {
      need();
      return modintbound_check(k.map, s, ref, q);
    });
    c.bound("eq2est: " + k.name, P::kPaper, true, [&] {
      need();
      return eq2est_bounds(k.map, s, q, ref);
    });
  }
}

void scenario_modintbound_lower(ScenarioContext& c) {
  c.near("radial 0.8 on S(0; 1, e)", 0.8, c.tol(1e-8), P::kDerived,
         [] { return modintbound(MapSpec::RadialStretch(0.8), semiring_1e()).value; });
  c.near("identity on S(0; 2, 5)", std::log(2.5), 1e-9, P::kTrivial,
         [] { return modintbound(MapSpec::Identity(), Shape::HalfSemiring(2, 2.0, 5.0)).value; });
  c.bound("radial 1.25 below the solver estimate", P::kPaper, false, [&] {
    const double mo = image_modulus(MapSpec::RadialStretch(1.25), semiring_1e(),
                                    grid(c, 32, 65), solver(c))
                          .mo;
    return modintbound_check(MapSpec::RadialStretch(1.25), semiring_1e(),
                             Reference{mo, 0.02 * mo});
  });
}

std::vector<Scenario> build_registry() {
  std::vector<Scenario> r = {
      {"a2", {"fast", "special"}, "A_2 = pi and the shape of g", scenario_a2},
      {"lambda2", {"fast", "special"}, "Grotzsch constant in the plane", scenario_lambda2},
      {"special-constants", {"fast", "special"}, "elliptic and ring-function values",
       scenario_special_constants},
      {"geometry-maps", {"fast", "geometry"}, "shapes, moduli and map Jacobians",
       scenario_geometry_maps},
      {"twist-certification", {"fast", "dilatation"}, "rotation twist dilatations",
       scenario_twist_certification},
      {"dilatation-chains", {"fast", "dilatation"}, "dilatation inequality chains",
       scenario_dilatation_chains},
      {"dilatation-examples", {"fast", "dilatation"}, "closed-form dilatations",
       scenario_dilatation_examples},
      {"solver-annulus", {"solver"}, "solver against closed-form moduli",
       scenario_solver_annulus},
      {"solver-refinement", {"solver"}, "grid refinement convergence",
       scenario_solver_refinement},
      {"solver-symmetry", {"solver"}, "symmetry principle and determinism",
       scenario_solver_symmetry},
      {"twist-image", {"solver"}, "modulus of the twisted annulus", scenario_twist_image},
      {"radial-image", {"solver", "bounds"}, "moduli of radial images", scenario_radial_image},
      {"quad-measure", {"fast", "bounds"}, "quadrature of the measure nu",
       scenario_quad_measure},
      {"radial-sharpness", {"fast", "bounds"}, "eq1est equalities for a radial stretch",
       scenario_radial_sharpness},
      {"eq2est-sandwich", {"fast", "bounds"}, "eq2est bracket", scenario_eq2est_sandwich},
      {"identity-all", {"fast", "bounds"}, "every bound at the identity", scenario_identity_all},
      {"twist-ring-bounds", {"bounds"}, "ring-variant bounds for the twist",
       scenario_twist_ring_bounds},
      {"domfac", {"fast", "bounds"}, "dominating factors", scenario_domfac},
      {"holder-identity", {"fast", "bounds"}, "Holder identity", scenario_holder_identity},
      {"infinity", {"fast", "bounds"}, "behavior at infinity", scenario_infinity},
      {"separation-lipschitz", {"fast", "bounds"}, "separation and Lipschitz constants",
       scenario_separation_lipschitz},
      {"continuity", {"fast", "bounds"}, "modulus of continuity", scenario_continuity},
      {"sandwich-property", {"solver", "bounds"}, "bounds against solver image moduli",
       scenario_sandwich_property},
      {"modintbound-lower", {"solver", "bounds"}, "modintbound as a lower bound",
       scenario_modintbound_lower},
  };
  std::sort(r.begin(), r.end(), [](const Scenario& a, const Scenario& b) { return a.id < b.id; });
  return r;
}

}  // namespace

const std::vector<Scenario>& scenario_registry() {
  static const std::vector<Scenario> registry = build_registry();
  return registry;
}

}  // namespace ringmod
