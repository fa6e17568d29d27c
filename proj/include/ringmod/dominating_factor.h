#ifndef RINGMOD_DOMINATING_FACTOR_H_
#define RINGMOD_DOMINATING_FACTOR_H_

#include <string>
#include <vector>

namespace ringmod {

enum class FactorFamily { kLinear, kPower, kTabulated };

enum class DivergenceClass { kDivergent, kConvergent, kInconclusive };

std::string to_string(DivergenceClass c);

// H : [0, inf) -> R, constant on [0, t0] and strictly increasing after, with
// exp(H) convex.
//   Linear(gamma)       H(t) = gamma t, t0 = 0
//   Power(c, alpha, t0) H(t) = c max(t, t0)^alpha
//   Tabulated           piecewise linear through (t_i, H_i), t0 = t_0,
//                       continued with the last slope
class DominatingFactor {
 public:
  static DominatingFactor Linear(double gamma);
  // alpha < 1 needs t0 >= ((1 - alpha) / (c alpha))^{1/alpha} for exp(H) to
  // be convex.
  static DominatingFactor Power(double c, double alpha, double t0 = 0.0);
  static DominatingFactor Tabulated(std::vector<double> t, std::vector<double> h);

  FactorFamily family() const { return family_; }
  double gamma() const { return c_; }
  double coefficient() const { return c_; }
  double exponent() const { return alpha_; }
  double t0() const { return t0_; }
  const std::vector<double>& table_t() const { return t_; }
  const std::vector<double>& table_h() const { return h_; }

  double operator()(double t) const;
  // Smallest t with H(t) = tau; throws DomainError for tau <= H(t0) when
  // that would give t <= 0, and for tau < H(t0) in general.
  double inverse(double tau) const;
  double floor_value() const { return (*this)(t0_); }
  std::string to_string() const;

 private:
  DominatingFactor() = default;
  FactorFamily family_ = FactorFamily::kLinear;
  double c_ = 1.0;
  double alpha_ = 1.0;
  double t0_ = 0.0;
  std::vector<double> t_;
  std::vector<double> h_;
};

// Divergence of int_1^inf H(t) t^{-n/(n-1)} dt. Closed form for Linear and
// Power (divergent iff alpha >= 1/(n-1)); Tabulated tables are judged from
// the growth exponent of H over [1e3, 1e6] and are inconclusive unless the
// table reaches 1e6 and the exponent is at least 0.05 away from 1/(n-1).
DivergenceClass is_divergence_type(const DominatingFactor& h, int n);

}  // namespace ringmod

#endif  // RINGMOD_DOMINATING_FACTOR_H_
