#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dicke {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// A computation ran but its own accuracy check failed (residual too large,
// ill-conditioning, degenerate null space, grid not converged).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double diagnostic)
      : std::runtime_error(what), diagnostic_(diagnostic) {}
  // Residual, condition estimate or relative change, depending on the site.
  double diagnostic() const { return diagnostic_; }

 private:
  double diagnostic_;
};

// Thrown when an adaptive quadrature misses its tolerance; carries the best
// estimate so callers can decide whether it is still usable.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace dicke
