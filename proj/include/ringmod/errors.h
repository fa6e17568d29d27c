#ifndef RINGMOD_ERRORS_H_
#define RINGMOD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ringmod {

// Evaluation outside the domain of a map or function (singular points,
// out-of-range arguments, irregular points of a mapping).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// An iterative method stopped before meeting its tolerance. Carries the best
// two-sided bracket known at the time of failure.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}

  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace ringmod

#endif  // RINGMOD_ERRORS_H_
