#ifndef RINGMOD_DILATATION_H_
#define RINGMOD_DILATATION_H_

#include "ringmod/geometry.h"
#include "ringmod/maps.h"

namespace ringmod {

// Classical dilatation coefficients of an invertible matrix A:
//   norm = |A|, small = l(A), inner = |det A| / l^n, outer = |A|^n / |det A|,
//   linear = |A| / l(A).
struct MatrixDilatations {
  double norm = 1.0;
  double small = 1.0;
  double det = 1.0;
  double inner = 1.0;
  double outer = 1.0;
  double linear = 1.0;
};

// Throws DomainError for singular matrices.
MatrixDilatations matrix_dilatations(const Matrix& a);

// min over unit h of |A h| / |h . u|, via the identity 1 / |A^{-T} u|.
double ell_f(const Matrix& a, const Vector& u);

struct LcalOptions {
  // Quasi-random directions used as a lower-bound guard on the ascent result.
  int guard_samples = 10000;
  int max_iterations = 500;
};

// max over unit h of |A h| |h . u|. Multi-start Riemannian gradient ascent
// from e_1..e_n, u and the right singular vectors of A; the result is never
// below the best guard sample.
double lcal_f(const Matrix& a, const Vector& u, const LcalOptions& options = {});

// Unit direction number k of a deterministic quasi-random sequence on
// S^{n-1} (golden-angle circle for n = 2, Kronecker sequence pushed through
// Box-Muller otherwise).
Vector quasi_random_direction(int n, int k);

// Directional dilatations of a map at x with respect to x0:
//   angular D = J / ell^n,  normal T = (Lcal^n / J)^{1/(n-1)}.
struct DilatationSample {
  Vector x;
  Vector x0;
  Vector u;
  double ell = 1.0;
  double lcal = 1.0;
  double angular = 1.0;
  double normal = 1.0;
  double jacobian_det = 1.0;
  MatrixDilatations matrix;
};

// Throws std::invalid_argument for x == x0 and DomainError("irregular
// point") where the Jacobian vanishes.
DilatationSample directional_sample(const MapSpec& map, const Vector& x, const Vector& x0,
                                    const LcalOptions& options = {});

// D_f(x, x0) alone; skips the normal-dilatation optimization.
double angular_dilatation(const MapSpec& map, const Vector& x, const Vector& x0);

}  // namespace ringmod

#endif  // RINGMOD_DILATATION_H_
