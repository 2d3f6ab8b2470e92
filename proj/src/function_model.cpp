#include "certquad/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>

#include "certquad/reference.hpp"

namespace certquad {

std::string to_string(Provenance p) {
  return p == Provenance::user_supplied ? "user_supplied" : "grid_estimated";
}

SecondDerivBounds user_bounds(double gamma, double Gamma) {
  if (!(gamma <= Gamma)) {
    throw std::invalid_argument("second-derivative bounds: gamma=" + std::to_string(gamma) +
                                " exceeds Gamma=" + std::to_string(Gamma));
  }
  return SecondDerivBounds{gamma, Gamma, Provenance::user_supplied, 0};
}

FunctionBundle make_expression_bundle(const Expr& expr, std::string name) {
  auto shared = std::make_shared<Expr>(expr);
  FunctionBundle bundle;
  bundle.f = [shared](double x) { return shared->eval(x); };
  bundle.f1 = [shared](double x) { return shared->eval_jet(x).v1; };
  bundle.f2 = [shared](double x) { return shared->eval_jet(x).v2; };
  bundle.f3 = [shared](double x) { return shared->eval_jet(x).v3; };
  bundle.source = BundleSource::expression;
  bundle.name = name.empty() ? shared->to_string() : std::move(name);
  return bundle;
}

FunctionBundle make_expression_bundle(std::string_view text) {
  return make_expression_bundle(parse(text), std::string(text));
}

namespace {
const std::map<std::string, const char*>& builtin_catalog() {
  static const std::map<std::string, const char*> catalog = {
      {"table1.row1", "cos(x)-x"},
      {"table1.row2", "exp(2*x)*cos(exp(x))"},
      {"table1.row3", "1/(x^4+4*x^2+3)"},
      {"table1.row4", "tan(x)+x"},
      {"table1.row5", "ln(x^2+1)"},
  };
  return catalog;
}
}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [key, _] : builtin_catalog()) v.push_back(key);
    return v;
  }();
  return names;
}

bool is_builtin(std::string_view key) {
  return builtin_catalog().count(std::string(key)) != 0;
}

FunctionBundle builtin_bundle(std::string_view key) {
  const auto& catalog = builtin_catalog();
  const auto it = catalog.find(std::string(key));
  if (it == catalog.end()) {
    throw std::invalid_argument("unknown builtin function '" + std::string(key) + "'");
  }
  FunctionBundle bundle = make_expression_bundle(parse(it->second), it->first);
  bundle.source = BundleSource::native;
  return bundle;
}

FunctionBundle resolve_bundle(std::string_view name_or_expr) {
  if (is_builtin(name_or_expr)) return builtin_bundle(name_or_expr);
  return make_expression_bundle(name_or_expr);
}

void spot_check_derivatives(const FunctionBundle& bundle, const Interval& iv) {
  const double h = 1e-5 * std::max(1.0, 0.25 * iv.length());
  const int points = 16;
  for (int k = 1; k <= points; ++k) {
    const double x = iv.a() + iv.length() * k / (points + 1.0);
    const double fd1 = (bundle.f(x + h) - bundle.f(x - h)) / (2.0 * h);
    const double v1 = bundle.f1(x);
    const double scale1 = std::max({1.0, std::abs(v1), std::abs(fd1)});
    if (std::abs(fd1 - v1) > 1e-4 * scale1) {
      throw std::runtime_error("bundle '" + bundle.name + "': f' disagrees with finite difference at x=" +
                               std::to_string(x));
    }
    const double fd2 = (bundle.f1(x + h) - bundle.f1(x - h)) / (2.0 * h);
    const double v2 = bundle.f2(x);
    const double scale2 = std::max({1.0, std::abs(v2), std::abs(fd2)});
    if (std::abs(fd2 - v2) > 1e-4 * scale2) {
      throw std::runtime_error("bundle '" + bundle.name + "': f'' disagrees with finite difference at x=" +
                               std::to_string(x));
    }
  }
}

double compute_S(const FunctionBundle& bundle, const Interval& iv) {
  return (bundle.f1(iv.b()) - bundle.f1(iv.a())) / iv.length();
}

SecondDerivBounds estimate_second_deriv_bounds(const FunctionBundle& bundle, const Interval& iv,
                                               int n_samples, double inflation) {
  if (n_samples < 33) throw std::invalid_argument("estimate_second_deriv_bounds: n_samples must be >= 33");
  if (inflation < 0.0) throw std::invalid_argument("estimate_second_deriv_bounds: inflation must be >= 0");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_samples; ++k) {
    const double t = (k == n_samples - 1)
                         ? iv.b()
                         : iv.a() + iv.length() * k / (n_samples - 1.0);
    const double v = bundle.f2(t);
    if (!std::isfinite(v)) {
      throw std::runtime_error("bundle '" + bundle.name + "': f'' not finite at t=" + std::to_string(t));
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double pad = inflation * (hi - lo);
  return SecondDerivBounds{lo - pad, hi + pad, Provenance::grid_estimated, n_samples};
}

double compute_sigma(const FunctionBundle& bundle, const Interval& iv, double ref_tol) {
  const double S = compute_S(bundle, iv);
  const auto& f2 = bundle.f2;
  const ReferenceIntegral l2sq =
      reference_integral([&f2](double t) { const double v = f2(t); return v * v; }, iv, ref_tol);
  const double sigma = l2sq.value - S * S * iv.length();
  // Cauchy-Schwarz gives sigma >= 0; a small negative value is rounding noise.
  return std::max(sigma, 0.0);
}

SmoothnessConstants compute_constants(const FunctionBundle& bundle, const Interval& iv,
                                      double ref_tol) {
  SmoothnessConstants constants;
  constants.S = compute_S(bundle, iv);
  constants.sigma = compute_sigma(bundle, iv, ref_tol);
  if (bundle.has_f3()) constants.l2_f3 = compute_l2_f3(bundle, iv, ref_tol);
  return constants;
}

double compute_l2_f3(const FunctionBundle& bundle, const Interval& iv, double ref_tol) {
  if (!bundle.has_f3()) {
    throw std::invalid_argument("bundle '" + bundle.name + "' has no third derivative evaluator");
  }
  const auto& f3 = bundle.f3;
  const ReferenceIntegral l2sq =
      reference_integral([&f3](double t) { const double v = f3(t); return v * v; }, iv, ref_tol);
  return std::sqrt(std::max(l2sq.value, 0.0));
}

}  // namespace certquad
