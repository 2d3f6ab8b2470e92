#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certquad/function_model.hpp"
#include "certquad/interval.hpp"

namespace certquad {

/// Tags for the bound families. Each pairs an estimator of the mean of f
/// with a closed-form bound on its error:
///   gruss_21     needs gamma <= f'' <= Gamma; bound via the kernel sup
///   midrange_22  same data, estimator perturbed by (Gamma+gamma)/2
///   s_gamma_23   needs the secant slope S and gamma
///   gamma_s_23   needs Gamma and S
///   l2_third_24  needs ||f'''||_2
///   variance_25  needs sigma(f'') = ||f''||_2^2 - S^2 (b-a)
enum class Theorem { gruss_21, midrange_22, s_gamma_23, gamma_s_23, l2_third_24, variance_25 };

std::string to_string(Theorem t);
std::optional<Theorem> theorem_from_string(std::string_view s);
const std::vector<Theorem>& all_theorems();

/// One single-interval approximation of the mean of f with its bound.
struct PointEstimate {
  double value = 0.0;
  double bound = 0.0;
  Theorem theorem = Theorem::gruss_21;
  double x = 0.0;
};

/// Which constants are known; gates which bounds are computable.
struct AvailableConstants {
  std::optional<SecondDerivBounds> bounds;
  std::optional<double> S;
  std::optional<double> sigma;
  std::optional<double> l2_f3;
};

/// [f(x)+f(a+b-x)]/2 - (x-(3a+b)/4) [f'(x)-f'(a+b-x)]/2 + S m(x),
/// the estimator shared by every family except midrange_22.
double approx_perturbed_S(const FunctionBundle& bundle, const Interval& iv, double x);

/// Same symmetric bracket but with (Gamma+gamma)/2 m(x) as perturbation.
double approx_perturbed_midrange(const FunctionBundle& bundle, const Interval& iv, double x,
                                 const SecondDerivBounds& bounds);

/// (Gamma-gamma)/8 * ((b-a)/4 + |x-(3a+b)/4|)^2
double bound_gruss(const Interval& iv, double x, const SecondDerivBounds& bounds);

/// (Gamma-gamma)/2 * m(x)
double bound_midrange(const Interval& iv, double x, const SecondDerivBounds& bounds);

/// (S-gamma) * c(x) and (Gamma-S) * c(x)
double bound_s_gamma(const Interval& iv, double x, double S, double gamma);
double bound_gamma_s(const Interval& iv, double x, double Gamma, double S);

/// ||f'''||_2 / pi * sqrt(integral of (K - m)^2)
double bound_l2_third(const Interval& iv, double x, double l2_f3);

/// sqrt(sigma) / (b-a) * sqrt(integral of (K - m)^2)
double bound_variance(const Interval& iv, double x, double sigma);

/// Every estimator/bound pair computable from the given constants, in tag
/// order. Throws std::invalid_argument when none is computable.
std::vector<PointEstimate> all_estimates(const FunctionBundle& bundle, const Interval& iv,
                                         double x, const AvailableConstants& constants);

/// The pair with the smallest bound; ties break in tag order.
PointEstimate best_estimate(const FunctionBundle& bundle, const Interval& iv, double x,
                            const AvailableConstants& constants);

}  // namespace certquad
