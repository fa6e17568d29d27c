#ifndef RINGMOD_QUADRATURE_H_
#define RINGMOD_QUADRATURE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "ringmod/geometry.h"

namespace ringmod {

struct QuadratureSpec {
  // Gauss-Legendre nodes in s = log r (8-point panels).
  int radial_nodes = 32;
  // Nodes per angular direction; n >= 4 uses Monte Carlo instead.
  int spherical_nodes = 32;
  double rel_tol = 1e-8;
  // Absolute error accepted whatever the relative error; for integrands
  // that are differences of O(1) quantities and may vanish identically.
  double abs_tol = 0.0;
  // Number of doublings allowed after the base rule.
  int max_refinements = 3;
  int monte_carlo_points = 100000;
  std::uint64_t seed = 20240601;
  // Nonzero values perturb the angular nodes (used to step off irregular
  // points); 0 gives the plain rule.
  double jitter = 0.0;

  // Throws std::invalid_argument unless counts >= 8, rel_tol in (0, 1e-2]
  // and abs_tol >= 0.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

// Fixed angular rule on the unit sphere S^{n-1} (half = the hemisphere
// z_n >= 0). Weights sum to the surface measure of the region.
struct SphereRule {
  std::vector<Vector> points;
  std::vector<double> weights;
  // Monte Carlo rules carry a standard-error factor: the error of the
  // integral of g is about mc_sigma_scale * stddev(g).
  bool monte_carlo = false;
  double mc_sigma_scale = 0.0;
};

// level k doubles the node counts k times.
SphereRule sphere_rule(int n, bool half, const QuadratureSpec& spec, int level);

// Composite Gauss-Legendre nodes and weights on [a, b] with the given panel
// count (8 nodes per panel).
void gauss_legendre_panels(double a, double b, int panels, std::vector<double>* nodes,
                           std::vector<double>* weights);

// Integrand receives the unit direction z and the log-radius s and writes
// `outputs` values.
using PolarIntegrand = std::function<void(const Vector& z, double s, double* out)>;

// Integrals of every output over [s_lo, s_hi] x (hemi)sphere with respect
// to ds dsigma(z). Refines until each output meets rel_tol (or an absolute
// floor of 1e-14 times the region size) or the cap is hit; error is the
// difference between the last two levels plus any Monte Carlo error.
// Throws DomainError if a sample is not finite.
std::vector<QuadResult> polar_quadrature(int n, bool half, double s_lo, double s_hi,
                                         int outputs, const PolarIntegrand& f,
                                         const QuadratureSpec& spec);

// Angular part only: integrals over the (hemi)sphere.
std::vector<QuadResult> sphere_quadrature(int n, bool half, int outputs,
                                          const std::function<void(const Vector&, double*)>& f,
                                          const QuadratureSpec& spec);

// int g(x) |x - x0|^{-n} dm over a HalfSemiring or an Annulus; the weight
// makes the measure nu, uniform in log r.
QuadResult quad_weighted(const std::function<double(const Vector&)>& g, const Shape& shape,
                         const QuadratureSpec& spec = {});

// Adaptive Gauss-Kronrod on a finite interval.
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10);

}  // namespace ringmod

#endif  // RINGMOD_QUADRATURE_H_
