#include "ringmod/quadrature.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ringmod/errors.h"

namespace ringmod {

using std::numbers::pi;

void QuadratureSpec::validate() const {
  if (radial_nodes < 8 || spherical_nodes < 8) {
    throw std::invalid_argument("quadrature node counts must be >= 8");
  }
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
    throw std::invalid_argument("quadrature tolerance must lie in (0, 1e-2]");
  }
  if (!(abs_tol >= 0.0)) throw std::invalid_argument("absolute tolerance must be >= 0");
  if (max_refinements < 1 || max_refinements > 8) {
    throw std::invalid_argument("quadrature refinement cap must lie in [1, 8]");
  }
  if (monte_carlo_points < 1000) {
    throw std::invalid_argument("at least 1000 Monte Carlo points are required");
  }
}

void gauss_legendre_panels(double a, double b, int panels, std::vector<double>* nodes,
                           std::vector<double>* weights) {
  using Rule = boost::math::quadrature::gauss<double, 8>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  nodes->clear();
  weights->clear();
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (size_t i = 0; i < x.size(); ++i) {
      for (int sign : {-1, 1}) {
        nodes->push_back(mid + sign * 0.5 * h * x[i]);
        weights->push_back(0.5 * h * w[i]);
      }
    }
  }
}

namespace {

int panels_for(int count, int level) { return std::max(1, count / 8) << level; }

// Gauss-Legendre panels on [a, b], optionally squeezed by a tiny relative
// amount so that every node moves.
void interval_rule(double a, double b, int panels, double jitter, std::vector<double>* nodes,
                   std::vector<double>* weights) {
  gauss_legendre_panels(a, b, panels, nodes, weights);
  if (jitter == 0.0) return;
  const double delta = 1e-3 * jitter / (8.0 * panels);
  for (size_t i = 0; i < nodes->size(); ++i) {
    (*nodes)[i] = a + ((*nodes)[i] - a) * (1.0 - 2.0 * delta) + delta * (b - a);
    (*weights)[i] *= 1.0 - 2.0 * delta;
  }
}

}  // namespace

SphereRule sphere_rule(int n, bool half, const QuadratureSpec& spec, int level) {
  SphereRule rule;
  const int m = spec.spherical_nodes << level;
  std::vector<double> t, w;
  if (n == 2) {
    if (half) {
      interval_rule(0.0, pi, panels_for(spec.spherical_nodes, level), spec.jitter, &t, &w);
      for (size_t i = 0; i < t.size(); ++i) {
        Vector z(2);
        z << std::cos(t[i]), std::sin(t[i]);
        rule.points.push_back(z);
        rule.weights.push_back(w[i]);
      }
    } else {
      const int count = 2 * m;
      const double dphi = 2.0 * pi / count;
      for (int j = 0; j < count; ++j) {
        const double phi = (j + spec.jitter) * dphi;
        Vector z(2);
        z << std::cos(phi), std::sin(phi);
        rule.points.push_back(z);
        rule.weights.push_back(dphi);
      }
    }
    return rule;
  }
  if (n == 3) {
    const int polar_panels = panels_for(spec.spherical_nodes, level) * (half ? 1 : 2);
    interval_rule(half ? 0.0 : -1.0, 1.0, polar_panels, spec.jitter, &t, &w);
    const int count = 2 * m;
    const double dphi = 2.0 * pi / count;
    for (size_t i = 0; i < t.size(); ++i) {
      const double c = t[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int j = 0; j < count; ++j) {
        const double phi = (j + spec.jitter) * dphi;
        Vector z(3);
        z << s * std::cos(phi), s * std::sin(phi), c;
        rule.points.push_back(z);
        rule.weights.push_back(w[i] * dphi);
      }
    }
    return rule;
  }
  // Monte Carlo for n >= 4; the sample does not change with the level.
  const double area = sphere_area(n) * (half ? 0.5 : 1.0);
  const int count = spec.monte_carlo_points;
  std::mt19937_64 rng(spec.seed + static_cast<std::uint64_t>(std::llround(spec.jitter * 1e6)));
  std::normal_distribution<double> normal;
  for (int k = 0; k < count; ++k) {
    Vector z(n);
    for (int i = 0; i < n; ++i) z(i) = normal(rng);
    z /= z.norm();
    if (half) z(n - 1) = std::abs(z(n - 1));
    rule.points.push_back(z);
    rule.weights.push_back(area / count);
  }
  rule.monte_carlo = true;
  rule.mc_sigma_scale = area / std::sqrt(static_cast<double>(count));
  return rule;
}

namespace {

struct LevelSums {
  std::vector<double> value;
  std::vector<double> magnitude;
  std::vector<double> mc_error;
};

LevelSums polar_level(int n, bool half, double s_lo, double s_hi, int outputs,
                      const PolarIntegrand& f, const QuadratureSpec& spec, int level,
                      long* evaluations) {
  const SphereRule sphere = sphere_rule(n, half, spec, level);
  std::vector<double> s_nodes, s_weights;
  gauss_legendre_panels(s_lo, s_hi, panels_for(spec.radial_nodes, level), &s_nodes, &s_weights);
  LevelSums sums{std::vector<double>(outputs, 0.0), std::vector<double>(outputs, 0.0),
                 std::vector<double>(outputs, 0.0)};
  std::vector<double> out(outputs), radial(outputs), sq(outputs, 0.0), mean(outputs, 0.0);
  for (size_t k = 0; k < sphere.points.size(); ++k) {
    std::fill(radial.begin(), radial.end(), 0.0);
    for (size_t i = 0; i < s_nodes.size(); ++i) {
      f(sphere.points[k], s_nodes[i], out.data());
      ++*evaluations;
      for (int q = 0; q < outputs; ++q) {
        if (!std::isfinite(out[q])) throw DomainError("non-finite integrand sample");
        radial[q] += s_weights[i] * out[q];
        sums.magnitude[q] += sphere.weights[k] * s_weights[i] * std::abs(out[q]);
      }
    }
    for (int q = 0; q < outputs; ++q) {
      sums.value[q] += sphere.weights[k] * radial[q];
      mean[q] += radial[q];
      sq[q] += radial[q] * radial[q];
    }
  }
  if (sphere.monte_carlo) {
    const double count = static_cast<double>(sphere.points.size());
    for (int q = 0; q < outputs; ++q) {
      const double m = mean[q] / count;
      const double var = std::max(0.0, sq[q] / count - m * m);
      sums.mc_error[q] = 3.0 * sphere.mc_sigma_scale * std::sqrt(var);
    }
  }
  return sums;
}

template <typename LevelFn>
std::vector<QuadResult> refine(int outputs, const QuadratureSpec& spec, LevelFn level_fn) {
  spec.validate();
  long evaluations = 0;
  LevelSums prev = level_fn(0, &evaluations);
  std::vector<QuadResult> result(outputs);
  for (int level = 1; level <= spec.max_refinements; ++level) {
    LevelSums cur = level_fn(level, &evaluations);
    bool done = true;
    for (int q = 0; q < outputs; ++q) {
      result[q].value = cur.value[q];
      result[q].error = std::abs(cur.value[q] - prev.value[q]) + cur.mc_error[q];
      const double target = std::max({spec.rel_tol * std::abs(cur.value[q]),
                                      1e-13 * cur.magnitude[q], spec.abs_tol});
      if (std::abs(cur.value[q] - prev.value[q]) > target) done = false;
    }
    prev = std::move(cur);
    if (done) break;
  }
  for (QuadResult& r : result) r.evaluations = evaluations;
  return result;
}

}  // namespace

std::vector<QuadResult> polar_quadrature(int n, bool half, double s_lo, double s_hi,
                                         int outputs, const PolarIntegrand& f,
                                         const QuadratureSpec& spec) {
  if (n < 2) throw std::invalid_argument("polar_quadrature: need n >= 2");
  if (!(s_lo < s_hi)) throw std::invalid_argument("polar_quadrature: empty radial range");
  return refine(outputs, spec, [&](int level, long* evaluations) {
    return polar_level(n, half, s_lo, s_hi, outputs, f, spec, level, evaluations);
  });
}

std::vector<QuadResult> sphere_quadrature(int n, bool half, int outputs,
                                          const std::function<void(const Vector&, double*)>& f,
                                          const QuadratureSpec& spec) {
  if (n < 2) throw std::invalid_argument("sphere_quadrature: need n >= 2");
  return refine(outputs, spec, [&](int level, long* evaluations) {
    const SphereRule sphere = sphere_rule(n, half, spec, level);
    LevelSums sums{std::vector<double>(outputs, 0.0), std::vector<double>(outputs, 0.0),
                   std::vector<double>(outputs, 0.0)};
    std::vector<double> out(outputs), sq(outputs, 0.0), mean(outputs, 0.0);
    for (size_t k = 0; k < sphere.points.size(); ++k) {
      f(sphere.points[k], out.data());
      ++*evaluations;
      for (int q = 0; q < outputs; ++q) {
        if (!std::isfinite(out[q])) throw DomainError("non-finite integrand sample");
        sums.value[q] += sphere.weights[k] * out[q];
        sums.magnitude[q] += sphere.weights[k] * std::abs(out[q]);
        mean[q] += out[q];
        sq[q] += out[q] * out[q];
      }
    }
    if (sphere.monte_carlo) {
      const double count = static_cast<double>(sphere.points.size());
      for (int q = 0; q < outputs; ++q) {
        const double m = mean[q] / count;
        sums.mc_error[q] = 3.0 * sphere.mc_sigma_scale * std::sqrt(std::max(0.0, sq[q] / count - m * m));
      }
    }
    return sums;
  });
}

QuadResult quad_weighted(const std::function<double(const Vector&)>& g, const Shape& shape,
                         const QuadratureSpec& spec) {
  if (shape.kind() == ShapeKind::kApollonianSemiring) {
    throw std::invalid_argument("quad_weighted: shape must be a half semiring or an annulus");
  }
  const Vector& x0 = shape.center();
  return polar_quadrature(
      shape.dim(), shape.is_semiring(), std::log(shape.inner()), std::log(shape.outer()), 1,
      [&](const Vector& z, double s, double* out) { out[0] = g(x0 + std::exp(s) * z); }, spec)[0];
}

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
  if (!(a < b)) throw std::invalid_argument("integrate_1d: need a < b");
  QuadResult r;
  double error = 0.0;
  long count = 0;
  auto counted = [&](double x) {
    ++count;
    const double v = f(x);
    if (!std::isfinite(v)) throw DomainError("non-finite integrand sample");
    return v;
  };
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(counted, a, b, 15,
                                                                          rel_tol, &error);
  r.error = error;
  r.evaluations = count;
  return r;
}

}  // namespace ringmod
