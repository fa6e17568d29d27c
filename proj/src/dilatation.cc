#include "ringmod/dilatation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ringmod/errors.h"

namespace ringmod {

namespace {

double regular_det(const Matrix& a) {
  const double det = a.determinant();
  const double norm = a.operatorNorm();
  if (!std::isfinite(det) || std::abs(det) <= 1e-14 * std::pow(norm, a.rows()) ||
      det == 0.0) {
    throw DomainError("irregular point: Jacobian determinant vanishes");
  }
  return det;
}

// G(h) = (h' B h) (h . u)^2, so that Lcal = sqrt(max G).
double objective(const Matrix& b, const Vector& u, const Vector& h) {
  const double c = h.dot(u);
  return h.dot(b * h) * c * c;
}

// Riemannian Newton ascent on the unit sphere with an Armijo gradient step
// as fallback whenever the Newton direction is not an ascent direction.
double ascend(const Matrix& b, const Vector& u, Vector h, int max_iterations) {
  const int n = static_cast<int>(h.size());
  h.normalize();
  double value = objective(b, u, h);
  double step = 1.0 / std::max(1e-300, b.norm());
  const double scale = std::max(b.norm(), 1e-300);
  const Matrix eye = Matrix::Identity(n, n);
  for (int it = 0; it < max_iterations; ++it) {
    const double c = h.dot(u);
    const Vector bh = b * h;
    const double q = h.dot(bh);
    const Vector egrad = 2.0 * c * c * bh + 2.0 * q * c * u;
    const double radial = egrad.dot(h);
    const Vector grad = egrad - radial * h;
    const double gnorm = grad.norm();
    if (gnorm <= 1e-14 * scale) break;

    const Matrix p = eye - h * h.transpose();
    const Matrix ehess = 2.0 * c * c * b + 4.0 * c * (bh * u.transpose() + u * bh.transpose()) +
                         2.0 * q * u * u.transpose();
    const Matrix rhess = p * ehess * p - radial * p - h * h.transpose();
    const Vector xi = rhess.partialPivLu().solve(-grad);
    if (xi.allFinite() && xi.dot(grad) > 0.0) {
      const Vector trial = (h + xi).normalized();
      const double tv = objective(b, u, trial);
      if (tv >= value) {
        const double gain = tv - value;
        h = trial;
        value = tv;
        if (gain <= 1e-16 * value) break;
        continue;
      }
    }
    bool improved = false;
    for (int tries = 0; tries < 60; ++tries) {
      const Vector trial = (h + step * grad).normalized();
      const double tv = objective(b, u, trial);
      if (tv >= value + 1e-4 * step * gnorm * gnorm) {
        h = trial;
        value = tv;
        step *= 2.0;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return value;
}

// Root of x^{m+1} = x + 1, cached for small m.
double generalized_golden_ratio(int m) {
  auto solve = [](int d) {
    double phi = 2.0;
    for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
    return phi;
  };
  static const std::vector<double> table = [&] {
    std::vector<double> t(33);
    for (int d = 1; d < 33; ++d) t[d] = solve(d);
    return t;
  }();
  return m < 33 ? table[m] : solve(m);
}

// The first `count` quasi-random directions in dimension n, flattened.
// Cached per thread.
const std::vector<double>& guard_directions(int n, int count) {
  thread_local std::map<std::pair<int, int>, std::vector<double>> cache;
  auto [it, inserted] = cache.try_emplace({n, count});
  if (inserted) {
    it->second.reserve(static_cast<std::size_t>(n) * count);
    for (int k = 0; k < count; ++k) {
      const Vector h = quasi_random_direction(n, k);
      it->second.insert(it->second.end(), h.data(), h.data() + n);
    }
  }
  return it->second;
}

}  // namespace

MatrixDilatations matrix_dilatations(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 2) {
    throw std::invalid_argument("matrix_dilatations: need a square matrix, n >= 2");
  }
  const double det = regular_det(a);
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  const int n = static_cast<int>(a.rows());
  MatrixDilatations d;
  d.norm = sv(0);
  d.small = sv(n - 1);
  d.det = det;
  d.inner = std::abs(det) / std::pow(d.small, n);
  d.outer = std::pow(d.norm, n) / std::abs(det);
  d.linear = d.norm / d.small;
  return d;
}

double ell_f(const Matrix& a, const Vector& u) {
  regular_det(a);
  const Vector w = a.transpose().partialPivLu().solve(u);
  return 1.0 / w.norm();
}

Vector quasi_random_direction(int n, int k) {
  Vector h(n);
  if (n == 2) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double t = golden * (k + 0.5);
    h << std::cos(t), std::sin(t);
    return h;
  }
  // Kronecker sequence with the generalized golden ratio in 2*ceil(n/2) dims.
  const int m = 2 * ((n + 1) / 2);
  const double phi = generalized_golden_ratio(m);
  std::vector<double> v(m);
  double alpha = 1.0;
  for (int i = 0; i < m; ++i) {
    alpha /= phi;
    const double x = 0.5 + alpha * (k + 1);
    v[i] = x - std::floor(x);
  }
  for (int i = 0; i < n; ++i) {
    const double u1 = std::max(v[2 * (i / 2)], 1e-300);
    const double u2 = v[2 * (i / 2) + 1];
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    h(i) = (i % 2 == 0) ? radius * std::cos(angle) : radius * std::sin(angle);
  }
  const double norm = h.norm();
  if (norm == 0.0) {
    h.setZero();
    h(0) = 1.0;
    return h;
  }
  return h / norm;
}

double lcal_f(const Matrix& a, const Vector& u, const LcalOptions& options) {
  const int n = static_cast<int>(a.rows());
  if (u.size() != n) throw std::invalid_argument("lcal_f: dimension mismatch");
  const Matrix b = a.transpose() * a;

  std::vector<Vector> starts;
  for (int i = 0; i < n; ++i) starts.push_back(Vector::Unit(n, i));
  starts.push_back(u);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  for (int i = 0; i < n; ++i) starts.push_back(svd.matrixV().col(i));

  double best = 0.0;
  for (const Vector& s : starts) {
    if (s.norm() == 0.0) continue;
    best = std::max(best, ascend(b, u, s, options.max_iterations));
  }

  double guard = 0.0;
  int guard_index = -1;
  const std::vector<double>& dirs = guard_directions(n, options.guard_samples);
  for (int k = 0; k < options.guard_samples; ++k) {
    const double* h = dirs.data() + static_cast<std::size_t>(k) * n;
    double c = 0.0, q = 0.0;
    for (int i = 0; i < n; ++i) {
      c += h[i] * u(i);
      double bh = 0.0;
      for (int j = 0; j < n; ++j) bh += b(i, j) * h[j];
      q += h[i] * bh;
    }
    const double v = q * c * c;
    if (v > guard) {
      guard = v;
      guard_index = k;
    }
  }
  if (guard > best && guard_index >= 0) {
    best = std::max(guard, ascend(b, u, quasi_random_direction(n, guard_index),
                                  options.max_iterations));
  }
  return std::sqrt(best);
}

DilatationSample directional_sample(const MapSpec& map, const Vector& x, const Vector& x0,
                                    const LcalOptions& options) {
  if (x.size() != x0.size()) throw std::invalid_argument("x and x0 dimensions differ");
  const double dist = (x - x0).norm();
  if (dist == 0.0) throw std::invalid_argument("directional dilatation needs x != x0");
  const JacobianResult jac = jacobian(map, x);
  const int n = static_cast<int>(x.size());

  DilatationSample s;
  s.x = x;
  s.x0 = x0;
  s.u = (x - x0) / dist;
  s.matrix = matrix_dilatations(jac.matrix);
  s.jacobian_det = jac.det;
  const double j = std::abs(jac.det);
  s.ell = ell_f(jac.matrix, s.u);
  s.lcal = lcal_f(jac.matrix, s.u, options);
  s.angular = j / std::pow(s.ell, n);
  s.normal = std::pow(std::pow(s.lcal, n) / j, 1.0 / (n - 1));
  return s;
}

double angular_dilatation(const MapSpec& map, const Vector& x, const Vector& x0) {
  const double dist = (x - x0).norm();
  if (dist == 0.0) throw std::invalid_argument("directional dilatation needs x != x0");
  const JacobianResult jac = jacobian(map, x);
  const Vector u = (x - x0) / dist;
  return std::abs(jac.det) / std::pow(ell_f(jac.matrix, u), static_cast<double>(x.size()));
}

}  // namespace ringmod
