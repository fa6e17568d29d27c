#ifndef RINGMOD_SPECIAL_FUNCTIONS_H_
#define RINGMOD_SPECIAL_FUNCTIONS_H_

namespace ringmod {

// Arithmetic-geometric mean of a, b > 0. Stops when |a_k - b_k| < 1e-15 a_k
// or after 60 iterations.
double agm(double a, double b);

// Complete elliptic integral of the first kind, modulus k in [0, 1).
double elliptic_k(double k);

// Planar Grotzsch ring function mu(r) = (pi/2) K(sqrt(1-r^2)) / K(r),
// 0 < r <= 1. Evaluated as (pi/2) agm(1, r') / agm(1, r) so that the small-r
// end keeps full relative accuracy.
double grotzsch_mu(double r);

// Moduli of the planar Grotzsch ring R_G(s), s > 1, and Teichmuller ring
// R_T(t), t > 0.
double mo_grotzsch2(double s);
double mo_teichmuller2(double t);

// exp of the moduli above.
double phi2(double s);
double psi2(double t);

// g(t) = mo R_T(t) - log t, the quantity maximized in the definition of A_n.
double teichmuller_excess2(double t);

struct A2Result {
  double value = 0.0;
  double argmax_t = 0.0;
  // The supremum over the open interval is approached as t -> 1+.
  bool attained_at_boundary = false;
};

// sup_{t > 1} g(t) by a coarse grid in s = log(t - 1) on [-40, 40] followed
// by golden-section refinement.
A2Result compute_a2();

struct SpecialConstants {
  int n = 2;
  double lambda_lower = 4.0;
  double lambda_upper = 4.0;
  // Exact A_2 for n = 2, the upper bound log((3 + 2 sqrt 2) lambda_upper^2 / 4)
  // for n >= 3.
  double a_value = 0.0;
  bool a_exact = true;
  // Q_n = 4 exp(A / 2) computed from a_value.
  double q_value = 0.0;
};

SpecialConstants constants_for(int n);

}  // namespace ringmod

#endif  // RINGMOD_SPECIAL_FUNCTIONS_H_
