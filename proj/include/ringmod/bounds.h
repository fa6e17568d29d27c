#ifndef RINGMOD_BOUNDS_H_
#define RINGMOD_BOUNDS_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ringmod/dominating_factor.h"
#include "ringmod/geometry.h"
#include "ringmod/maps.h"
#include "ringmod/quadrature.h"

namespace ringmod {

enum class Verdict { kHolds, kViolated, kInconclusive };

std::string to_string(Verdict v);

// Evaluated sides of an inequality or identity.
//   left/right  lower and upper side (or LHS and RHS of an identity)
//   middle      the quantity being bracketed, when a reference was given
//   error       combined error estimate of the compared quantities
struct BoundReport {
  std::string id;
  double left = 0.0;
  double right = 0.0;
  std::optional<double> middle;
  double error = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  // Per-side verdicts for two-sided checks.
  Verdict left_verdict = Verdict::kInconclusive;
  Verdict right_verdict = Verdict::kInconclusive;
  bool conservative = false;
  std::string note;
};

// A measured or closed-form value with its uncertainty.
struct Reference {
  double value = 0.0;
  double error = 0.0;
};

// The quadrature routines below integrate over a HalfSemiring, or over an
// Annulus for the ring variant (full spheres, w_{n-1} in place of
// w_{n-1}/2). Directional dilatations are taken about the shape center.

// Bounds on mo f(S) / mo S: left = (nu-average of D)^{1/(1-n)}, right =
// nu-average of T. With a reference ratio the verdict checks
// left <= ratio <= right; without one it checks left <= right.
BoundReport eq1est_bounds(const MapSpec& map, const Shape& shape, const QuadratureSpec& spec = {},
                          std::optional<Reference> ratio = std::nullopt);

// Bounds on mo S - mo f(S): left = -c int (T - 1) dnu, right = c int (D - 1)
// dnu, c = 2 / w_{n-1} (1 / w_{n-1} for rings). The reference is mo f(S).
// The lower side is always checked; the upper side only when
// mo S >= mo f(S), otherwise it is reported inconclusive.
BoundReport eq2est_bounds(const MapSpec& map, const Shape& shape, const QuadratureSpec& spec = {},
                          std::optional<Reference> image_mo = std::nullopt);

// Average of D_f(x0 + t z, x0) over the unit hemisphere z_n >= 0 (the whole
// sphere when `ring`). Retries once with perturbed nodes if a node is an
// irregular point.
QuadResult psi_D(const MapSpec& map, double t, const Vector& x0, const QuadratureSpec& spec = {},
                 bool ring = false);

// int_r^R dt / (t Psi_D(t)^{1/(n-1)}), a lower bound for mo f(S).
QuadResult modintbound(const MapSpec& map, const Shape& shape, const QuadratureSpec& spec = {});

// modintbound against a reference mo f(S): left = bound, middle = reference.
BoundReport modintbound_check(const MapSpec& map, const Shape& shape, const Reference& image_mo,
                              const QuadratureSpec& spec = {});

struct DominatedBound {
  double value = 0.0;
  double error = 0.0;
  double sigma = 0.0;
  // Closed form for Linear factors.
  std::optional<double> closed_form;
};

double dominated_sigma(double big_m, double r0, int n);

// int_{1/n}^m dt / [H^{-1}(n t + sigma)]^{1/(n-1)} with
// sigma = log(2 n M / (w_{n-1} r0^n)). Throws std::invalid_argument for
// m <= 1/n, M <= 0, r0 <= 0; DomainError when 1 + sigma is outside the
// range of H (1 + sigma <= 0 for Linear).
DominatedBound dominated_modulus_bound(double m, double big_m, double r0, int n,
                                       const DominatingFactor& h);

struct BoundValue {
  double value = 0.0;
  // True when A_n was replaced by its upper bound (n >= 3).
  bool conservative = false;
};

// Q_n exp(-mo / 2).
BoundValue separation_bound(double mo, int n = 2);

// exp(A_n) dist exp(-mo); throws DomainError unless mo > A_n and dist > 0.
BoundValue boundary_estimate(double mo, double dist, int n = 2);

struct LipschitzConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  // Semirings with inner radius below r0_max have mo f(S) > A_n.
  double r0_max = 0.0;
};

// C1 = e^{A + 2M/w}/R, C2 = e^{A}/R, r0 < R e^{-A - 2M/w}.
LipschitzConstants lipschitz_constants(double a_n, double big_m, double radius, int n);

// omega(t; R) = 2 / (Omega_n R^n) int over the half ball S(t; 0, R) of
// (D - 1) dm, computed in log-radius truncated 50/n below log R (and never
// below radius 1e-9).
QuadResult holder_omega(const MapSpec& map, const Vector& t, double radius,
                        const QuadratureSpec& spec = {});

// Both sides of (P_f - 1) log(R/r) = (omega(R) - omega(r))/n + int_r^R omega(s)/s ds.
BoundReport holder_identity_check(const MapSpec& map, const Vector& t, double r, double radius,
                                  const QuadratureSpec& spec = {});

// 1/alpha^{n-1} - 1.
double holder_threshold(double alpha, int n);

struct ContinuityBound {
  // n = 2: bound on |f(x1) - f(x0)|; n >= 3: bound on log|f(x1) - f(x0)|.
  double value = 0.0;
  bool log_form = false;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  bool conservative = false;
};

// Modulus-of-continuity bound for a Linear(gamma) dominating factor.
// Throws std::invalid_argument unless 0 < distance < r0, and DomainError
// when 1 + sigma <= 0.
ContinuityBound continuity_bounds(int n, double gamma, double big_m, double r0, double dist,
                                  double distance);

enum class InfinityVerdict { kExtends, kInconclusive };

std::string to_string(InfinityVerdict v);

struct InfinityReport {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> errors;
  InfinityVerdict verdict = InfinityVerdict::kInconclusive;
};

// (log R)^{-2} int over S(0; r0, R) of (D - 1) |x|^{-n} dm for each R.
// Verdict kExtends when the values do not increase and the last is below
// 1e-2. Radii must be increasing and greater than max(1, r0).
InfinityReport infinity_check(const std::function<double(const Vector&)>& d_field, int n,
                              double r0, const std::vector<double>& radii,
                              const QuadratureSpec& spec = {});
InfinityReport infinity_check(const MapSpec& map, int n, double r0,
                              const std::vector<double>& radii, const QuadratureSpec& spec = {});

}  // namespace ringmod

#endif  // RINGMOD_BOUNDS_H_
