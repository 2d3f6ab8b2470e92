#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include "certquad/interval.hpp"

namespace certquad {

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of the oracle integrator.
struct ReferenceIntegral {
  double value = 0.0;
  double error_estimate = 0.0;
  long long evaluations = 0;
};

/// Adaptive bisection with a fixed 15-point Gauss–Kronrod panel rule.
///
/// Splits the panel with the largest error estimate until the summed
/// estimate drops below `tol` (absolute). Independent of every quadrature
/// rule in this library; serves as the oracle for all of them.
/// Throws NonConvergenceError after a budget of 10^6 panels.
/// Requires tol >= 1e-13.
ReferenceIntegral reference_integral(const std::function<double(double)>& f, const Interval& iv,
                                     double tol);

/// Same, but with known interior breakpoints (kinks or jumps of f):
/// integrates each smooth piece separately and sums.
ReferenceIntegral reference_integral_split(const std::function<double(double)>& f,
                                           const Interval& iv,
                                           std::span<const double> interior_breaks, double tol);

}  // namespace certquad
