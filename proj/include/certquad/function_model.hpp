#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "certquad/expr.hpp"
#include "certquad/interval.hpp"

namespace certquad {

using Evaluator = std::function<double(double)>;

enum class BundleSource { expression, native };

/// A function together with evaluators for its first three derivatives.
/// f, f1, f2 are always present; f3 may be empty.
struct FunctionBundle {
  Evaluator f;
  Evaluator f1;
  Evaluator f2;
  Evaluator f3;
  BundleSource source = BundleSource::expression;
  std::string name;

  bool has_f3() const { return static_cast<bool>(f3); }
};

enum class Provenance { user_supplied, grid_estimated };

std::string to_string(Provenance p);

/// Lower and upper bounds for the second derivative on an interval.
struct SecondDerivBounds {
  double gamma = 0.0;
  double Gamma = 0.0;
  Provenance provenance = Provenance::user_supplied;
  int n_samples = 0;

  double width() const { return Gamma - gamma; }
  double midrange() const { return 0.5 * (Gamma + gamma); }
};

/// User-supplied bounds; validates gamma <= Gamma.
SecondDerivBounds user_bounds(double gamma, double Gamma);

/// The scalars that parameterize the error bounds.
struct SmoothnessConstants {
  double S = 0.0;                 // (f'(b) - f'(a)) / (b - a)
  double sigma = 0.0;             // ||f''||_2^2 - S^2 (b-a), clamped to >= 0
  std::optional<double> l2_f3;    // ||f'''||_2, when f''' is available
};

/// Compute S, sigma and (when f''' exists) ||f'''||_2 in one pass.
SmoothnessConstants compute_constants(const FunctionBundle& bundle, const Interval& iv,
                                      double ref_tol = 1e-11);

/// Build a bundle whose derivatives come from jet evaluation of `expr`.
FunctionBundle make_expression_bundle(const Expr& expr, std::string name = "");
FunctionBundle make_expression_bundle(std::string_view text);

/// Named builtin functions ("table1.row1" .. "table1.row5").
FunctionBundle builtin_bundle(std::string_view key);
const std::vector<std::string>& builtin_names();
bool is_builtin(std::string_view key);

/// Resolve a builtin key if known, otherwise parse the text as an
/// expression.
FunctionBundle resolve_bundle(std::string_view name_or_expr);

/// Spot-check that f1 and f2 agree with finite differences of f and f1 at
/// 16 interior points (1e-4 relative). Throws std::runtime_error on
/// disagreement.
void spot_check_derivatives(const FunctionBundle& bundle, const Interval& iv);

/// Secant slope of f' across the interval.
double compute_S(const FunctionBundle& bundle, const Interval& iv);

/// Sample f'' on a uniform grid of n_samples points (endpoints included)
/// and pad the raw [min, max] by inflation * (max - min) on each side.
/// n_samples must be >= 33.
SecondDerivBounds estimate_second_deriv_bounds(const FunctionBundle& bundle, const Interval& iv,
                                               int n_samples = 1001, double inflation = 0.01);

/// integral of f''^2 minus S^2 (b-a), clamped to >= 0.
double compute_sigma(const FunctionBundle& bundle, const Interval& iv, double ref_tol = 1e-11);

/// sqrt of the integral of f'''^2. Requires f3.
double compute_l2_f3(const FunctionBundle& bundle, const Interval& iv, double ref_tol = 1e-11);

}  // namespace certquad
