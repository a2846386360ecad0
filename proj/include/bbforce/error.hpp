#ifndef BBFORCE_ERROR_HPP_
#define BBFORCE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bbforce {

/// Input outside an operation's domain (negative temperature, r < R, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The blackbody force is evaluated exactly on the sphere surface, where it
/// diverges while the potential stays finite.
class SurfaceDivergence : public DomainError {
 public:
  SurfaceDivergence()
      : DomainError("force diverges at the sphere surface (r == R); potential is finite") {}
};

/// Adaptive quadrature or integration ran out of budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_estimate)
      : std::runtime_error(what + " (estimate " + std::to_string(estimate) +
                           ", error estimate " + std::to_string(error_estimate) + ")"),
        estimate_(estimate),
        error_estimate_(error_estimate) {}

  [[nodiscard]] double estimate() const { return estimate_; }
  [[nodiscard]] double error_estimate() const { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

}  // namespace bbforce

#endif  // BBFORCE_ERROR_HPP_
