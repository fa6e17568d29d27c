#include "ringmod/bounds.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ringmod/dilatation.h"
#include "ringmod/errors.h"
#include "ringmod/special_functions.h"

namespace ringmod {

namespace {

// The guard sample in lcal_f only protects the multi-start ascent; inside
// quadratures a short guard keeps the cost per node low.
constexpr LcalOptions kQuadratureLcal{128, 500};

constexpr double kHolderFloor = 1e-9;

// Slack for rounding in comparisons of exactly equal sides.
double roundoff(double a, double b, double c = 0.0) {
  return 1e-11 * (1.0 + std::abs(a) + std::abs(b) + std::abs(c));
}

template <typename Fn>
auto with_retry(const QuadratureSpec& spec, Fn fn) {
  try {
    return fn(spec);
  } catch (const DomainError&) {
    QuadratureSpec moved = spec;
    moved.jitter = 0.3183098861837907;
    return fn(moved);
  }
}

void require_quadrature_shape(const Shape& shape) {
  if (shape.kind() == ShapeKind::kApollonianSemiring) {
    throw std::invalid_argument("bounds need a half semiring or an annulus");
  }
}

// Normalizing constant c with nu(S) = mo S / c.
double nu_factor(const Shape& shape) {
  const double area = sphere_area(shape.dim());
  return shape.is_semiring() ? 2.0 / area : 1.0 / area;
}

struct DilatationIntegrals {
  QuadResult d;
  QuadResult t;
};

DilatationIntegrals integrate_dilatations(const MapSpec& map, const Shape& shape,
                                          const QuadratureSpec& spec, bool need_t) {
  require_quadrature_shape(shape);
  const Vector& x0 = shape.center();
  const int outputs = need_t ? 2 : 1;
  auto run = [&](const QuadratureSpec& s) {
    return polar_quadrature(
        shape.dim(), shape.is_semiring(), std::log(shape.inner()), std::log(shape.outer()),
        outputs,
        [&](const Vector& z, double lr, double* out) {
          const Vector x = x0 + std::exp(lr) * z;
          if (need_t) {
            const DilatationSample d = directional_sample(map, x, x0, kQuadratureLcal);
            out[0] = d.angular;
            out[1] = d.normal;
          } else {
            out[0] = angular_dilatation(map, x, x0);
          }
        },
        s);
  };
  const std::vector<QuadResult> r = with_retry(spec, run);
  DilatationIntegrals out;
  out.d = r[0];
  if (need_t) out.t = r[1];
  return out;
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::kViolated || b == Verdict::kViolated) return Verdict::kViolated;
  if (a == Verdict::kInconclusive || b == Verdict::kInconclusive) return Verdict::kInconclusive;
  return Verdict::kHolds;
}

Verdict check_le(double a, double b, double slack) {
  return a <= b + slack ? Verdict::kHolds : Verdict::kViolated;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kViolated:
      return "violated";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(InfinityVerdict v) {
  return v == InfinityVerdict::kExtends ? "extends" : "inconclusive";
}

BoundReport eq1est_bounds(const MapSpec& map, const Shape& shape, const QuadratureSpec& spec,
                          std::optional<Reference> ratio) {
  const int n = shape.dim();
  const DilatationIntegrals in = integrate_dilatations(map, shape, spec, true);
  const double nu = exact_modulus(shape) / nu_factor(shape);
  const double avg_d = in.d.value / nu;
  const double avg_t = in.t.value / nu;
  BoundReport rep;
  rep.id = shape.is_semiring() ? "eq1est" : "eq1est-ring";
  rep.left = std::pow(avg_d, 1.0 / (1.0 - n));
  rep.right = avg_t;
  const double err_left = rep.left / ((n - 1) * avg_d) * in.d.error / nu;
  const double err_right = in.t.error / nu;
  rep.error = err_left + err_right;
  if (ratio) {
    rep.middle = ratio->value;
    const double slack = roundoff(rep.left, rep.right, ratio->value) + ratio->error;
    rep.left_verdict = check_le(rep.left, ratio->value, err_left + slack);
    rep.right_verdict = check_le(ratio->value, rep.right, err_right + slack);
    rep.error += ratio->error;
  } else {
    rep.left_verdict = rep.right_verdict =
        check_le(rep.left, rep.right, rep.error + roundoff(rep.left, rep.right));
    rep.note = "no reference ratio; checked lower <= upper";
  }
  rep.verdict = combine(rep.left_verdict, rep.right_verdict);
  return rep;
}

BoundReport eq2est_bounds(const MapSpec& map, const Shape& shape, const QuadratureSpec& spec,
                          std::optional<Reference> image_mo) {
  const DilatationIntegrals in = integrate_dilatations(map, shape, spec, true);
  const double c = nu_factor(shape);
  const double nu = exact_modulus(shape) / c;
  BoundReport rep;
  rep.id = shape.is_semiring() ? "eq2est" : "eq2est-ring";
  rep.left = -c * (in.t.value - nu);
  rep.right = c * (in.d.value - nu);
  const double err_left = c * in.t.error;
  const double err_right = c * in.d.error;
  rep.error = err_left + err_right;
  if (!image_mo) {
    rep.note = "no reference modulus; nothing to check";
    return rep;
  }
  const double mo = exact_modulus(shape);
  const double diff = mo - image_mo->value;
  rep.middle = diff;
  rep.error += image_mo->error;
  const double slack = roundoff(rep.left, rep.right, diff) + image_mo->error;
  rep.left_verdict = check_le(rep.left, diff, err_left + slack);
  if (mo >= image_mo->value) {
    rep.right_verdict = check_le(diff, rep.right, err_right + slack);
  } else {
    rep.right_verdict = Verdict::kInconclusive;
    rep.note = "mo S < mo f(S): upper inequality not asserted";
  }
  rep.verdict = combine(rep.left_verdict, rep.right_verdict);
  return rep;
}

QuadResult psi_D(const MapSpec& map, double t, const Vector& x0, const QuadratureSpec& spec,
                 bool ring) {
  if (!(t > 0.0)) throw std::invalid_argument("psi_D: need t > 0");
  const int n = static_cast<int>(x0.size());
  const double area = sphere_area(n) * (ring ? 1.0 : 0.5);
  auto run = [&](const QuadratureSpec& s) {
    return sphere_quadrature(
        n, !ring, 1,
        [&](const Vector& z, double* out) { out[0] = angular_dilatation(map, x0 + t * z, x0); },
        s)[0];
  };
  QuadResult r = with_retry(spec, run);
  r.value /= area;
  r.error /= area;
  return r;
}

QuadResult modintbound(const MapSpec& map, const Shape& shape, const QuadratureSpec& spec) {
  require_quadrature_shape(shape);
  spec.validate();
  const int n = shape.dim();
  const bool ring = !shape.is_semiring();
  const double lo = std::log(shape.inner());
  const double hi = std::log(shape.outer());
  auto level = [&](int k, double* psi_error, long* evaluations) {
    std::vector<double> nodes, weights;
    gauss_legendre_panels(lo, hi, std::max(1, spec.radial_nodes / 8) << k, &nodes, &weights);
    double sum = 0.0;
    *psi_error = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) {
      const QuadResult psi = psi_D(map, std::exp(nodes[i]), shape.center(), spec, ring);
      *evaluations += psi.evaluations;
      const double term = std::pow(psi.value, -1.0 / (n - 1));
      sum += weights[i] * term;
      *psi_error += weights[i] * term * psi.error / ((n - 1) * psi.value);
    }
    return sum;
  };
  QuadResult out;
  double psi_error = 0.0;
  double prev = level(0, &psi_error, &out.evaluations);
  for (int k = 1; k <= spec.max_refinements; ++k) {
    const double cur = level(k, &psi_error, &out.evaluations);
    out.value = cur;
    out.error = std::abs(cur - prev) + psi_error;
    if (std::abs(cur - prev) <= spec.rel_tol * std::abs(cur)) break;
    prev = cur;
  }
  return out;
}

BoundReport modintbound_check(const MapSpec& map, const Shape& shape, const Reference& image_mo,
                              const QuadratureSpec& spec) {
  const QuadResult q = modintbound(map, shape, spec);
  BoundReport rep;
  rep.id = shape.is_semiring() ? "modintbound" : "modintbound-ring";
  rep.left = q.value;
  rep.right = image_mo.value;
  rep.middle = image_mo.value;
  rep.error = q.error + image_mo.error;
  rep.left_verdict = check_le(q.value, image_mo.value, rep.error + roundoff(q.value, image_mo.value));
  rep.right_verdict = rep.left_verdict;
  rep.verdict = rep.left_verdict;
  return rep;
}

double dominated_sigma(double big_m, double r0, int n) {
  if (!(big_m > 0.0)) throw std::invalid_argument("need M > 0");
  if (!(r0 > 0.0)) throw std::invalid_argument("need r0 > 0");
  if (n < 2) throw std::invalid_argument("need n >= 2");
  return std::log(2.0 * n * big_m / (sphere_area(n) * std::pow(r0, n)));
}

DominatedBound dominated_modulus_bound(double m, double big_m, double r0, int n,
                                       const DominatingFactor& h) {
  if (!(m > 1.0 / n)) throw std::invalid_argument("dominated bound: need m > 1/n");
  DominatedBound out;
  out.sigma = dominated_sigma(big_m, r0, n);
  const double start = 1.0 + out.sigma;
  if (!(start > h.floor_value())) {
    throw DomainError("dominated bound: 1 + sigma lies outside the range of H");
  }
  const double p = 1.0 / (n - 1);
  const QuadResult q = integrate_1d(
      [&](double t) { return std::pow(h.inverse(n * t + out.sigma), -p); }, 1.0 / n, m, 1e-13);
  out.value = q.value;
  out.error = q.error;
  if (h.family() == FactorFamily::kLinear) {
    const double g = std::pow(h.gamma(), p);
    if (n == 2) {
      out.closed_form = g / n * std::log((n * m + out.sigma) / start);
    } else {
      const double mu = (n - 2.0) / (n - 1.0);
      const double c1 = (n - 1.0) * g / (n * (n - 2.0));
      out.closed_form = c1 * (std::pow(n * m + out.sigma, mu) - std::pow(start, mu));
    }
  }
  return out;
}

BoundValue separation_bound(double mo, int n) {
  const SpecialConstants k = constants_for(n);
  return {k.q_value * std::exp(-0.5 * mo), !k.a_exact};
}

BoundValue boundary_estimate(double mo, double dist, int n) {
  const SpecialConstants k = constants_for(n);
  if (!(mo > k.a_value)) throw DomainError("boundary_estimate: need mo > A_n");
  if (!(dist > 0.0)) throw std::invalid_argument("boundary_estimate: need dist > 0");
  return {std::exp(k.a_value) * dist * std::exp(-mo), !k.a_exact};
}

LipschitzConstants lipschitz_constants(double a_n, double big_m, double radius, int n) {
  if (!(radius > 0.0)) throw std::invalid_argument("lipschitz_constants: need R > 0");
  if (!(big_m >= 0.0)) throw std::invalid_argument("lipschitz_constants: need M >= 0");
  const double shift = 2.0 * big_m / sphere_area(n);
  LipschitzConstants c;
  c.c1 = std::exp(a_n + shift) / radius;
  c.c2 = std::exp(a_n) / radius;
  c.r0_max = radius * std::exp(-a_n - shift);
  return c;
}

QuadResult holder_omega(const MapSpec& map, const Vector& t, double radius,
                        const QuadratureSpec& spec) {
  if (!(radius > 0.0)) throw std::invalid_argument("holder_omega: need R > 0");
  const int n = static_cast<int>(t.size());
  const double top = std::log(radius);
  // The weight e^{n(u - top)} is below e^{-50} past the truncation; the
  // floor keeps nodes clear of a singular point at t.
  const double bottom = std::max(top - 50.0 / n, std::log(kHolderFloor));
  if (!(bottom < top)) throw std::invalid_argument("holder_omega: R too small");
  // (D - 1) vanishes identically for conformal maps; accept roundoff-level
  // errors relative to the integral of the weight alone.
  QuadratureSpec base = spec;
  base.abs_tol = std::max(spec.abs_tol, 1e-14 * sphere_area(n) / (2.0 * n));
  auto run = [&](const QuadratureSpec& s) {
    return polar_quadrature(
        n, true, bottom, top, 1,
        [&](const Vector& z, double u, double* out) {
          const double d = angular_dilatation(map, t + std::exp(u) * z, t);
          out[0] = std::exp(n * (u - top)) * (d - 1.0);
        },
        s)[0];
  };
  QuadResult r = with_retry(base, run);
  const double c = 2.0 / ball_volume(n);
  r.value *= c;
  r.error *= c;
  return r;
}

BoundReport holder_identity_check(const MapSpec& map, const Vector& t, double r, double radius,
                                  const QuadratureSpec& spec) {
  if (!(0.0 < r && r < radius)) throw std::invalid_argument("holder check: need 0 < r < R");
  const int n = static_cast<int>(t.size());
  if (t(n - 1) != 0.0) throw std::invalid_argument("holder check: t must lie on the boundary");
  const Shape shape = Shape::HalfSemiring(r, radius, t);
  const DilatationIntegrals in = integrate_dilatations(map, shape, spec, false);
  const double c = nu_factor(shape);
  const double nu = exact_modulus(shape) / c;

  BoundReport rep;
  rep.id = "holder-identity";
  rep.left = c * (in.d.value - nu);
  const double err_left = c * in.d.error;

  const QuadResult w_big = holder_omega(map, t, radius, spec);
  const QuadResult w_small = holder_omega(map, t, r, spec);
  const double lo = std::log(r);
  const double hi = std::log(radius);
  auto level = [&](int k, double* inner_error) {
    std::vector<double> nodes, weights;
    gauss_legendre_panels(lo, hi, std::max(1, spec.radial_nodes / 8) << k, &nodes, &weights);
    double sum = 0.0;
    *inner_error = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) {
      const QuadResult w = holder_omega(map, t, std::exp(nodes[i]), spec);
      sum += weights[i] * w.value;
      *inner_error += weights[i] * w.error;
    }
    return sum;
  };
  double inner_error = 0.0;
  double prev = level(0, &inner_error);
  double integral = prev;
  double outer_error = 0.0;
  for (int k = 1; k <= spec.max_refinements; ++k) {
    integral = level(k, &inner_error);
    outer_error = std::abs(integral - prev);
    if (outer_error <= std::max(spec.rel_tol * std::abs(integral), 1e-13 * (hi - lo))) break;
    prev = integral;
  }
  rep.right = (w_big.value - w_small.value) / n + integral;
  const double err_right = (w_big.error + w_small.error) / n + outer_error + inner_error;
  rep.error = err_left + err_right;
  const double gap = std::abs(rep.left - rep.right);
  rep.verdict = gap <= rep.error + roundoff(rep.left, rep.right) ? Verdict::kHolds
                                                                  : Verdict::kViolated;
  rep.left_verdict = rep.right_verdict = rep.verdict;
  return rep;
}

double holder_threshold(double alpha, int n) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("need 0 < alpha <= 1");
  return 1.0 / std::pow(alpha, n - 1) - 1.0;
}

ContinuityBound continuity_bounds(int n, double gamma, double big_m, double r0, double dist,
                                  double distance) {
  if (n < 2) throw std::invalid_argument("continuity_bounds: need n >= 2");
  if (!(gamma > 0.0)) throw std::invalid_argument("continuity_bounds: need gamma > 0");
  if (!(dist > 0.0)) throw std::invalid_argument("continuity_bounds: need dist > 0");
  if (!(distance > 0.0 && distance < r0)) {
    throw std::invalid_argument("continuity_bounds: need 0 < |x1 - x0| < r0");
  }
  const SpecialConstants k = constants_for(n);
  ContinuityBound b;
  b.conservative = !k.a_exact;
  b.sigma = dominated_sigma(big_m, r0, n);
  if (!(1.0 + b.sigma > 0.0)) throw DomainError("continuity_bounds: 1 + sigma <= 0");
  const double g = std::pow(gamma, 1.0 / (n - 1));
  b.mu = (n - 2.0) / (n - 1.0);
  b.c2 = g / n;
  b.c1 = n > 2 ? (n - 1.0) * g / (n * (n - 2.0)) : 0.0;
  b.alpha = dist * std::exp(k.a_value - b.c2 * std::log(n));
  b.beta = b.c1 * std::pow(n, b.mu);
  b.delta = k.a_value + b.c1 * std::pow(1.0 + b.sigma, b.mu) + std::log(dist);
  const double l = std::log(r0 / distance);
  if (n == 2) {
    b.value = b.alpha * std::pow(l, -b.c2);
  } else {
    b.log_form = true;
    b.value = -b.beta * std::pow(l, b.mu) + b.delta;
  }
  return b;
}

InfinityReport infinity_check(const std::function<double(const Vector&)>& d_field, int n,
                              double r0, const std::vector<double>& radii,
                              const QuadratureSpec& spec) {
  if (!(r0 > 0.0)) throw std::invalid_argument("infinity_check: need r0 > 0");
  if (radii.empty()) throw std::invalid_argument("infinity_check: empty radius list");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > std::max(1.0, r0)) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw std::invalid_argument("infinity_check: radii must increase and exceed max(1, r0)");
    }
  }
  InfinityReport rep;
  rep.radii = radii;
  for (double big_r : radii) {
    auto run = [&](const QuadratureSpec& s) {
      return polar_quadrature(
          n, true, std::log(r0), std::log(big_r), 1,
          [&](const Vector& z, double u, double* out) { out[0] = d_field(std::exp(u) * z) - 1.0; },
          s)[0];
    };
    const QuadResult q = with_retry(spec, run);
    const double scale = 1.0 / (std::log(big_r) * std::log(big_r));
    rep.values.push_back(q.value * scale);
    rep.errors.push_back(q.error * scale);
  }
  bool monotone = true;
  for (size_t i = 1; i < rep.values.size(); ++i) {
    if (rep.values[i] > rep.values[i - 1] + rep.errors[i] + rep.errors[i - 1] +
                            roundoff(rep.values[i], rep.values[i - 1])) {
      monotone = false;
    }
  }
  rep.verdict = monotone && rep.values.back() < 1e-2 ? InfinityVerdict::kExtends
                                                     : InfinityVerdict::kInconclusive;
  return rep;
}

InfinityReport infinity_check(const MapSpec& map, int n, double r0,
                              const std::vector<double>& radii, const QuadratureSpec& spec) {
  const Vector origin = Vector::Zero(n);
  return infinity_check([&](const Vector& x) { return angular_dilatation(map, x, origin); }, n,
                        r0, radii, spec);
}

}  // namespace ringmod
