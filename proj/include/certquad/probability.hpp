#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "certquad/function_model.hpp"
#include "certquad/interval.hpp"
#include "certquad/point_estimates.hpp"

namespace certquad {

class InvalidDensityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Certified enclosure of an expectation.
struct ExpectationBracket {
  double center = 0.0;
  double halfwidth = 0.0;
  Theorem theorem = Theorem::gruss_21;
  double x = 0.0;

  double lo() const { return center - halfwidth; }
  double hi() const { return center + halfwidth; }
};

/// A probability density f on [a, b] with a cached distribution function.
///
/// The cache holds F at 1025 uniform knots (reference integration) joined
/// by a monotone cubic Hermite interpolant whose slopes are the exact
/// density values. Construction rejects densities that are negative on the
/// validation grid or whose total mass is off 1 by more than 1e-6; a defect
/// above 1e-8 is kept as a warning flag.
class DensityModel {
 public:
  DensityModel(FunctionBundle pdf, const Interval& iv, double ref_tol = 1e-10);

  const Interval& interval() const { return iv_; }
  const FunctionBundle& pdf() const { return pdf_; }

  /// F(x) = integral of the density over [a, x].
  double cdf(double x) const;

  /// |F(b) - 1| as integrated.
  double normalization_defect() const { return normalization_defect_; }
  bool normalization_warning() const { return normalization_defect_ > 1e-8; }

  /// View of the distribution function as a function bundle: the cached F
  /// with the density and its derivatives as F', F'', F'''.
  FunctionBundle cdf_bundle() const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& knot_values() const { return values_; }

 private:
  friend double expectation_reference(const DensityModel& model);

  Interval iv_;
  FunctionBundle pdf_;
  std::vector<double> knots_;
  std::vector<double> values_;  // F at the knots
  std::vector<double> slopes_;  // interpolant slopes (density, limited)
  double normalization_defect_ = 0.0;
};

/// E(X) = b - integral of F over [a, b], via the cached interpolant.
double expectation_reference(const DensityModel& model);

/// Certified bracket for E(X): applies the tagged estimator and bound to
/// the distribution function F (so the density fills the derivative slot
/// and the density's derivatives supply the constants), then rescales:
/// center = b - (b-a) A, halfwidth = (b-a) B.
ExpectationBracket expectation_bracket(const DensityModel& model, double x, Theorem tag);

}  // namespace certquad
