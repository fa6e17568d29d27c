#include "ringmod/dominating_factor.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ringmod/errors.h"

namespace ringmod {

std::string to_string(DivergenceClass c) {
  switch (c) {
    case DivergenceClass::kDivergent:
      return "divergent";
    case DivergenceClass::kConvergent:
      return "convergent";
    case DivergenceClass::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

DominatingFactor DominatingFactor::Linear(double gamma) {
  if (!(gamma > 0.0 && std::isfinite(gamma))) {
    throw std::invalid_argument("Linear dominating factor needs gamma > 0");
  }
  DominatingFactor h;
  h.family_ = FactorFamily::kLinear;
  h.c_ = gamma;
  return h;
}

DominatingFactor DominatingFactor::Power(double c, double alpha, double t0) {
  if (!(c > 0.0 && alpha > 0.0 && t0 >= 0.0) || !std::isfinite(c) || !std::isfinite(alpha) ||
      !std::isfinite(t0)) {
    throw std::invalid_argument("Power dominating factor needs c > 0, alpha > 0, t0 >= 0");
  }
  if (alpha < 1.0) {
    const double need = std::pow((1.0 - alpha) / (c * alpha), 1.0 / alpha);
    if (t0 < need * (1.0 - 1e-12)) {
      std::ostringstream msg;
      msg << "exp(H) is not convex below t = " << need << "; choose t0 >= that value";
      throw std::invalid_argument(msg.str());
    }
  }
  DominatingFactor h;
  h.family_ = FactorFamily::kPower;
  h.c_ = c;
  h.alpha_ = alpha;
  h.t0_ = t0;
  return h;
}

DominatingFactor DominatingFactor::Tabulated(std::vector<double> t, std::vector<double> h) {
  if (t.size() < 2 || t.size() != h.size()) {
    throw std::invalid_argument("tabulated dominating factor needs >= 2 matching samples");
  }
  if (!(t[0] >= 0.0)) throw std::invalid_argument("tabulated samples must start at t >= 0");
  for (size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(h[i])) {
      throw std::invalid_argument("tabulated samples must be finite");
    }
    if (i > 0 && !(t[i] > t[i - 1] && h[i] > h[i - 1])) {
      throw std::invalid_argument("tabulated samples must be strictly increasing");
    }
  }
  // Convexity of exp(H) on the sample grid: secant slopes of exp(H) must not
  // decrease. The flat part before t_0 has slope 0.
  double prev = 0.0;
  for (size_t i = 1; i < t.size(); ++i) {
    const double slope = (std::exp(h[i]) - std::exp(h[i - 1])) / (t[i] - t[i - 1]);
    if (slope < prev * (1.0 - 1e-12)) {
      throw std::invalid_argument("exp(H) is not convex on the sample grid");
    }
    prev = slope;
  }
  DominatingFactor out;
  out.family_ = FactorFamily::kTabulated;
  out.t0_ = t[0];
  out.t_ = std::move(t);
  out.h_ = std::move(h);
  return out;
}

double DominatingFactor::operator()(double t) const {
  switch (family_) {
    case FactorFamily::kLinear:
      return c_ * std::max(t, 0.0);
    case FactorFamily::kPower:
      return c_ * std::pow(std::max(t, t0_), alpha_);
    case FactorFamily::kTabulated: {
      if (t <= t_.front()) return h_.front();
      const size_t last = t_.size() - 1;
      size_t i = std::upper_bound(t_.begin(), t_.end(), t) - t_.begin();
      if (i > last) i = last;
      const double slope = (h_[i] - h_[i - 1]) / (t_[i] - t_[i - 1]);
      return h_[i - 1] + slope * (t - t_[i - 1]);
    }
  }
  return 0.0;
}

double DominatingFactor::inverse(double tau) const {
  const double floor = floor_value();
  if (!(tau >= floor)) throw DomainError("H^{-1}: argument below the range of H");
  switch (family_) {
    case FactorFamily::kLinear:
      if (!(tau > 0.0)) throw DomainError("H^{-1}: argument must be positive");
      return tau / c_;
    case FactorFamily::kPower:
      if (tau == floor && t0_ == 0.0) throw DomainError("H^{-1}: argument must be positive");
      return std::pow(tau / c_, 1.0 / alpha_);
    case FactorFamily::kTabulated: {
      const size_t last = h_.size() - 1;
      size_t i = std::upper_bound(h_.begin(), h_.end(), tau) - h_.begin();
      if (i == 0) i = 1;
      if (i > last) i = last;
      const double slope = (h_[i] - h_[i - 1]) / (t_[i] - t_[i - 1]);
      const double t = t_[i - 1] + (tau - h_[i - 1]) / slope;
      if (!(t > 0.0)) throw DomainError("H^{-1}: argument must map to t > 0");
      return t;
    }
  }
  return 0.0;
}

std::string DominatingFactor::to_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (family_) {
    case FactorFamily::kLinear:
      out << "linear:gamma=" << c_;
      break;
    case FactorFamily::kPower:
      out << "power:c=" << c_ << ",alpha=" << alpha_ << ",t0=" << t0_;
      break;
    case FactorFamily::kTabulated:
      out << "tabulated:" << t_.size() << " samples";
      break;
  }
  return out.str();
}

DivergenceClass is_divergence_type(const DominatingFactor& h, int n) {
  if (n < 2) throw std::invalid_argument("is_divergence_type: need n >= 2");
  const double critical = 1.0 / (n - 1);
  switch (h.family()) {
    case FactorFamily::kLinear:
      return DivergenceClass::kDivergent;
    case FactorFamily::kPower:
      return h.exponent() >= critical ? DivergenceClass::kDivergent
                                      : DivergenceClass::kConvergent;
    case FactorFamily::kTabulated: {
      constexpr double kLo = 1e3;
      constexpr double kHi = 1e6;
      if (h.table_t().back() < kHi) return DivergenceClass::kInconclusive;
      const double a = h(kLo);
      const double b = h(kHi);
      if (!(a > 0.0 && b > 0.0)) return DivergenceClass::kInconclusive;
      const double growth = std::log(b / a) / std::log(kHi / kLo);
      if (growth >= critical + 0.05) return DivergenceClass::kDivergent;
      if (growth <= critical - 0.05) return DivergenceClass::kConvergent;
      return DivergenceClass::kInconclusive;
    }
  }
  return DivergenceClass::kInconclusive;
}

}  // namespace ringmod
