#include "ringmod/special_functions.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ringmod/errors.h"

namespace ringmod {

using std::numbers::pi;

double agm(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("agm: arguments must be positive");
  for (int k = 0; k < 60; ++k) {
    if (std::abs(a - b) < 1e-15 * a) break;
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return a;
}

double elliptic_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("elliptic_k: need 0 <= k < 1");
  return 0.5 * pi / agm(1.0, std::sqrt((1.0 - k) * (1.0 + k)));
}

double grotzsch_mu(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("grotzsch_mu: need 0 < r <= 1");
  if (r == 1.0) return 0.0;
  const double rc = std::sqrt((1.0 - r) * (1.0 + r));
  return 0.5 * pi * agm(1.0, rc) / agm(1.0, r);
}

double mo_grotzsch2(double s) {
  if (!(s > 1.0)) throw DomainError("mo_grotzsch2: need s > 1");
  return grotzsch_mu(1.0 / s);
}

double mo_teichmuller2(double t) {
  if (!(t > 0.0)) throw DomainError("mo_teichmuller2: need t > 0");
  return 2.0 * grotzsch_mu(1.0 / std::sqrt(t + 1.0));
}

double phi2(double s) { return std::exp(mo_grotzsch2(s)); }
double psi2(double t) { return std::exp(mo_teichmuller2(t)); }

double teichmuller_excess2(double t) { return mo_teichmuller2(t) - std::log(t); }

namespace {

// g as a function of s = log(t - 1).
double excess_in_log_gap(double s) {
  const double gap = std::exp(s);
  return mo_teichmuller2(1.0 + gap) - std::log1p(gap);
}

}  // namespace

A2Result compute_a2() {
  constexpr double kLo = -40.0;
  constexpr double kHi = 40.0;
  constexpr int kCoarse = 321;
  const double step = (kHi - kLo) / (kCoarse - 1);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kCoarse; ++i) {
    const double v = excess_in_log_gap(kLo + i * step);
    // g is flat to rounding as t -> 1+; ties go to the smaller t.
    const double margin = 16 * std::numeric_limits<double>::epsilon() * std::abs(best_value);
    if (i == 0 || v > best_value + margin) {
      best_value = v;
      best = i;
    }
  }

  A2Result result;
  if (best == 0) {
    // Maximum sits at the t -> 1+ end; g is continuous there.
    result.value = best_value;
    result.argmax_t = 1.0 + std::exp(kLo);
    result.attained_at_boundary = true;
    return result;
  }

  double a = kLo + (best - 1) * step;
  double b = kLo + std::min(best + 1, kCoarse - 1) * step;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = excess_in_log_gap(c);
  double fd = excess_in_log_gap(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = excess_in_log_gap(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = excess_in_log_gap(d);
    }
  }
  const double s = 0.5 * (a + b);
  result.value = std::max(best_value, excess_in_log_gap(s));
  result.argmax_t = 1.0 + std::exp(s);
  result.attained_at_boundary = best == kCoarse - 1;
  return result;
}

SpecialConstants constants_for(int n) {
  if (n < 2) throw std::invalid_argument("constants_for: n must be >= 2");
  SpecialConstants c;
  c.n = n;
  if (n == 2) {
    c.lambda_lower = 4.0;
    c.lambda_upper = 4.0;
    c.a_value = pi;
    c.a_exact = true;
  } else {
    const double m = n;
    c.lambda_lower = 4.0;
    c.lambda_upper = std::pow(2.0, m / (m - 1.0)) * std::exp(m * (m - 2.0) / (m - 1.0));
    c.a_value = std::log((3.0 + 2.0 * std::sqrt(2.0)) * c.lambda_upper * c.lambda_upper / 4.0);
    c.a_exact = false;
  }
  c.q_value = 4.0 * std::exp(c.a_value / 2.0);
  return c;
}

}  // namespace ringmod
