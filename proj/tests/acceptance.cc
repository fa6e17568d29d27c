// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "ringmod/bounds.h"
#include "ringmod/dilatation.h"
#include "ringmod/graph_modulus.h"
#include "ringmod/harness.h"
#include "ringmod/special_functions.h"

namespace {

using namespace ringmod;

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[200];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    detail += (detail.empty() ? "" : "; ") + std::string(buf);
  }
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

GridResolution grid(int r, int a, int s = 1) {
  GridResolution g;
  g.radial = r;
  g.angular = a;
  g.stencil = s;
  return g;
}

Outcome a2_recovery() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const A2Result a = compute_a2();
  const double secs = elapsed(t0);
  o.note("A2=%.12f err=%.2e time=%.3fs", a.value, std::abs(a.value - kPi), secs);
  o.require(std::abs(a.value - kPi) <= 1e-6, "A2 within 1e-6 of pi");
  o.require(secs < 1.0, "runtime < 1 s");
  return o;
}

Outcome lambda2_recovery() {
  Outcome o;
  const double q = phi2(1e8) / 1e8;
  o.note("Phi2(1e8)/1e8=%.12f", q);
  o.require(std::abs(q - 4.0) <= 1e-6, "ratio within 1e-6 of 4");
  return o;
}

Outcome solver_closed_forms() {
  Outcome o;
  auto timed = [&](const Shape& s, const GridResolution& g) {
    const auto t0 = std::chrono::steady_clock::now();
    ModulusEstimate e = shape_modulus(s, g);
    const double secs = elapsed(t0);
    o.require(secs < 60.0, "run < 60 s");
    return std::pair{e, secs};
  };
  const auto [ann, t1] = timed(Shape::Annulus(2, 1.0, kE), grid(64, 256));
  o.note("annulus M=%.6f rel=%.2e (%.2fs)", ann.m_gamma, std::abs(ann.m_gamma / (2 * kPi) - 1), t1);
  o.require(std::abs(ann.m_gamma / (2 * kPi) - 1) <= 0.02, "annulus within 2% of 2 pi");
  const auto [semi, t2] = timed(Shape::HalfSemiring(2, 1.0, kE), grid(64, 129));
  o.note("semiring M=%.6f rel=%.2e (%.2fs)", semi.m_gamma, std::abs(semi.m_gamma / kPi - 1), t2);
  o.require(std::abs(semi.m_gamma / kPi - 1) <= 0.02, "semiring within 2% of pi");
  const auto [apo, t3] = timed(Shape::Apollonian(0.1, 1.0, vec2(1, 0)), grid(64, 256));
  const double l10 = std::log(10.0);
  o.note("apollonian mo=%.6f rel=%.2e (%.2fs)", apo.mo, std::abs(apo.mo / l10 - 1), t3);
  o.require(std::abs(apo.mo / l10 - 1) <= 0.03, "apollonian mo within 3% of log 10");
  return o;
}

Outcome twist_certification() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n : {2, 3}) {
    const double k = std::pow(1 + std::sqrt(2.0), n);
    double max_j = 0, max_h = 0, max_d = 0;
    int count = 0;
    while (count < 1000) {
      Vector x(n);
      for (int i = 0; i < n; ++i) x(i) = u(rng);
      if (std::hypot(x(0), x(1)) < 1e-3) continue;
      ++count;
      const DilatationSample s = directional_sample(MapSpec::RotationTwist(), x, Vector::Zero(n));
      max_j = std::max(max_j, std::abs(s.jacobian_det - 1));
      max_h = std::max({max_h, std::abs(s.matrix.inner - k), std::abs(s.matrix.outer - k)});
      max_d = std::max(max_d, std::abs(s.angular - 1));
    }
    o.note(n == 2 ? "n=2 |J-1|=%.1e |H-K|=%.1e |D-1|=%.1e" : "n=3 |J-1|=%.1e |H-K|=%.1e |D-1|=%.1e",
           max_j, max_h, max_d);
    o.require(max_j <= 1e-10, "J = 1 within 1e-10");
    o.require(max_h <= 1e-6, "H_I = H_O = (1+sqrt2)^n within 1e-6");
    o.require(max_d <= 1e-8, "D(x,0) = 1 within 1e-8");
  }
  return o;
}

Outcome eq1est_sharpness() {
  Outcome o;
  const Shape shape = Shape::HalfSemiring(2, 1.0, kE);
  const MapSpec map = MapSpec::RadialStretch(0.8);
  const ModulusEstimate img = image_modulus(map, shape, grid(64, 129));
  const ModulusEstimate direct = shape_modulus(shape, grid(64, 129));
  const double ratio = img.mo / direct.mo;
  const BoundReport b = eq1est_bounds(map, shape, {}, Reference{0.8, 1e-6});
  o.note("lower=%.9f upper=%.9f solver ratio=%.6f", b.left, b.right, ratio);
  o.require(std::abs(b.left - 0.8) <= 1e-3, "lower = 0.8 within 1e-3");
  o.require(std::abs(b.right - 0.8) <= 1e-3, "upper = 0.8 within 1e-3");
  o.require(b.verdict == Verdict::kHolds, "closed-form ratio bracketed");
  o.require(std::abs(ratio / 0.8 - 1) <= 0.02, "solver ratio within 2% of 0.8");
  o.require(std::abs(img.mo / 0.8 - 1) <= 0.02, "solver image mo within 2% of 0.8");
  return o;
}

Outcome eq2est_sandwich() {
  Outcome o;
  const BoundReport b = eq2est_bounds(MapSpec::RadialStretch(0.8), Shape::HalfSemiring(2, 1.0, kE),
                                      {}, Reference{0.8, 1e-9});
  const double diff = b.middle.value_or(NAN);
  o.note("lower=%.9f difference=%.9f upper=%.9f", b.left, diff, b.right);
  o.require(std::abs(b.left - 0.2) <= 1e-4, "lower = 0.2");
  o.require(std::abs(b.right - 0.25) <= 1e-4, "upper = 0.25");
  o.require(b.left <= diff + 1e-4 && diff <= b.right + 1e-4, "bracket holds");
  o.require(b.verdict == Verdict::kHolds, "verdict holds");
  return o;
}

Outcome measure_self_test() {
  Outcome o;
  auto one = [](const Vector&) { return 1.0; };
  const double v2 = quad_weighted(one, Shape::HalfSemiring(2, 1.0, kE)).value;
  const double v3 = quad_weighted(one, Shape::HalfSemiring(3, 1.0, kE)).value;
  o.note("n=2: %.12f  n=3: %.12f", v2, v3);
  o.require(std::abs(v2 - kPi) <= 1e-6, "n=2 equals pi");
  o.require(std::abs(v3 - sphere_area(3) / 2) <= 1e-6, "n=3 equals w_2 / 2");
  return o;
}

Outcome dilatation_chains() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  auto matrix = [&](int n) {
    Matrix a(n, n);
    do {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = g(rng);
    } while (std::abs(a.determinant()) < 1e-2);
    return a;
  };
  auto unit = [&](int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    return Vector(v / v.norm());
  };
  const double tol = 1e-9;
  auto le = [&](double a, double b) { return a <= b + tol * std::max(1.0, std::abs(b)); };
  int violations = 0;
  for (int n = 2; n <= 4; ++n)
    for (int i = 0; i < 1000; ++i) {
      const Matrix a = matrix(n);
      const Vector x = unit(n), x0 = 0.5 * unit(n);
      const DilatationSample s = directional_sample(MapSpec::Linear(a), x, x0);
      const MatrixDilatations& m = s.matrix;
      const double lo = std::min(m.inner, m.outer), hi = std::max(m.inner, m.outer);
      const bool ok = le(m.linear, lo) && le(lo, std::pow(m.linear, n / 2.0)) &&
                      le(std::pow(m.linear, n / 2.0), hi) && le(hi, std::pow(m.linear, n - 1)) &&
                      le(1 / m.outer, s.angular) && le(s.angular, m.inner) &&
                      le(1 / m.outer, std::pow(m.inner, 1.0 / (1 - n))) &&
                      le(std::pow(m.inner, 1.0 / (1 - n)), s.normal) &&
                      le(s.normal, std::pow(m.outer, 1.0 / (n - 1))) &&
                      le(std::pow(m.outer, 1.0 / (n - 1)), m.inner);
      violations += ok ? 0 : 1;
    }
  o.note("chain violations over 3000 samples: %.0f", violations);
  o.require(violations == 0, "all chains hold");
  // closed-form ell against the minimum over 1e5 equally spaced planar directions
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const Matrix a = matrix(2);
    const Vector u = unit(2);
    double sampled = INFINITY;
    for (int k = 0; k < 100000; ++k) {
      const double t = kPi * k / 100000;
      const Vector h = vec2(std::cos(t), std::sin(t));
      const double d = std::abs(h.dot(u));
      if (d > 0) sampled = std::min(sampled, (a * h).norm() / d);
    }
    worst = std::max(worst, std::abs(ell_f(a, u) / sampled - 1));
  }
  o.note("ell closed form vs sampling: worst rel %.2e", worst);
  o.require(worst <= 1e-3, "ell within 1e-3 relative on 100 matrices");
  return o;
}

Outcome dominating_factor() {
  Outcome o;
  o.require(is_divergence_type(DominatingFactor::Linear(1.0), 2) == DivergenceClass::kDivergent,
            "Linear divergent");
  double worst = 0;
  for (int n = 2; n <= 4; ++n)
    for (double gamma : {0.5, 1.0, 2.0})
      for (double m : {1.0, 10.0, 100.0}) {
        const DominatedBound b =
            dominated_modulus_bound(m, kPi, 1.0, n, DominatingFactor::Linear(gamma));
        worst = std::max(worst, std::abs(b.value / b.closed_form.value() - 1));
      }
  const DominatingFactor h = DominatingFactor::Linear(1.0);
  const double growth = dominated_modulus_bound(1e4, kPi, 1.0, 2, h).value -
                        dominated_modulus_bound(10, kPi, 1.0, 2, h).value;
  o.note("27-case worst rel %.2e; bound(1e4) - bound(10) = %.4f", worst, growth);
  o.require(worst <= 1e-8, "quadrature matches closed form within 1e-8");
  o.require(growth > 1.0, "bound grows by more than 1");
  return o;
}

Outcome holder_identity() {
  Outcome o;
  const Vector t = Vector::Zero(2);
  for (double a : {1.0, 0.5, 0.8}) {
    const MapSpec map = a == 1.0 ? MapSpec::Identity() : MapSpec::RadialStretch(a);
    const BoundReport b = holder_identity_check(map, t, 0.01, 1.0);
    o.note("a=%.1f |lhs-rhs|=%.2e err=%.2e", a, std::abs(b.left - b.right), b.error);
    // quadrature error estimates can be exactly zero, so allow double rounding
    const double rounding = 1e-12 * (1 + std::abs(b.left) + std::abs(b.right));
    o.require(b.verdict == Verdict::kHolds && std::abs(b.left - b.right) <= b.error + rounding,
              "sides agree within combined error");
  }
  return o;
}

Outcome infinity_check_criterion() {
  Outcome o;
  const std::vector<double> radii = {1e2, 1e4, 1e8, 1e16, 1e32, 1e64};
  const InfinityReport r = infinity_check(MapSpec::RadialStretch(0.8), 2, 0.5, radii);
  o.note("radial 0.8: last value %.3e", r.values.back());
  o.require(r.verdict == InfinityVerdict::kExtends, "radial 0.8 extends");
  const InfinityReport s =
      infinity_check([](const Vector& x) { return 1.0 + std::log(x.norm()); }, 2, 1.0, radii);
  const double target = sphere_area(2) / 4;
  o.note("synthetic: last value %.6f target %.6f", s.values.back(), target);
  o.require(std::abs(s.values.back() / target - 1) <= 0.05, "synthetic trend within 5% of w_1/4");
  o.require(s.verdict == InfinityVerdict::kInconclusive, "synthetic inconclusive");
  return o;
}

Outcome determinism() {
  Outcome o;
  static const std::regex wall("\"wall_time\": [^,\\n]*");
  const auto t0 = std::chrono::steady_clock::now();
  const AggregateReport first = run_all();
  const double secs = elapsed(t0);
  const AggregateReport second = run_all();
  const std::string a = std::regex_replace(report_json(first), wall, "");
  const std::string b = std::regex_replace(report_json(second), wall, "");
  o.note("suite %.1fs, %.0f scenarios", secs, static_cast<double>(first.reports.size()));
  o.require(a == b, "byte-identical reports modulo wall time");
  o.require(first.passed(), "full suite passes");
  o.require(secs < 600.0, "full suite < 10 min");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"A2 recovery", a2_recovery},
      {"lambda2 recovery", lambda2_recovery},
      {"solver vs closed form", solver_closed_forms},
      {"rotation-twist certification", twist_certification},
      {"eq1est sharpness", eq1est_sharpness},
      {"eq2est sandwich", eq2est_sandwich},
      {"measure self-test", measure_self_test},
      {"dilatation chains", dilatation_chains},
      {"dominating factor", dominating_factor},
      {"Holder identity", holder_identity},
      {"infinity check", infinity_check_criterion},
      {"determinism", determinism},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail += std::string("error: ") + e.what();
    }
    failed += o.ok ? 0 : 1;
    std::printf("%s %2zu %-30s %7.2fs  %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                elapsed(t0), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
