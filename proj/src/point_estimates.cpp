#include "certquad/point_estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "certquad/kernel.hpp"

namespace certquad {

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::gruss_21: return "gruss_21";
    case Theorem::midrange_22: return "midrange_22";
    case Theorem::s_gamma_23: return "s_gamma_23";
    case Theorem::gamma_s_23: return "gamma_s_23";
    case Theorem::l2_third_24: return "l2_third_24";
    case Theorem::variance_25: return "variance_25";
  }
  return "?";
}

std::optional<Theorem> theorem_from_string(std::string_view s) {
  if (s == "gruss" || s == "gruss_21") return Theorem::gruss_21;
  if (s == "midrange" || s == "midrange_22") return Theorem::midrange_22;
  if (s == "s_gamma" || s == "s_gamma_23") return Theorem::s_gamma_23;
  if (s == "gamma_s" || s == "gamma_s_23") return Theorem::gamma_s_23;
  if (s == "l2_third" || s == "l2third" || s == "l2_third_24") return Theorem::l2_third_24;
  if (s == "variance" || s == "variance_25") return Theorem::variance_25;
  return std::nullopt;
}

const std::vector<Theorem>& all_theorems() {
  static const std::vector<Theorem> all = {Theorem::gruss_21,    Theorem::midrange_22,
                                           Theorem::s_gamma_23,  Theorem::gamma_s_23,
                                           Theorem::l2_third_24, Theorem::variance_25};
  return all;
}

namespace {
double symmetric_bracket(const FunctionBundle& bundle, const Interval& iv, double x) {
  const double xr = iv.reflect(x);
  return 0.5 * (bundle.f(x) + bundle.f(xr)) -
         (x - iv.quarter_point()) * 0.5 * (bundle.f1(x) - bundle.f1(xr));
}

// Bound preconditions hold up to floating-point noise in grid-estimated
// constants; a slightly negative difference collapses to zero.
double nonneg_difference(double hi, double lo, const char* what) {
  const double diff = hi - lo;
  if (diff >= 0.0) return diff;
  const double slack = 1e-9 * std::max({1.0, std::abs(hi), std::abs(lo)});
  if (diff >= -slack) return 0.0;
  throw std::invalid_argument(std::string(what) + ": difference is negative (" +
                              std::to_string(diff) + ")");
}
}  // namespace

double approx_perturbed_S(const FunctionBundle& bundle, const Interval& iv, double x) {
  require_eval_point(iv, x);
  const double S = compute_S(bundle, iv);
  return symmetric_bracket(bundle, iv, x) + S * kernel_first_moment(iv, x);
}

double approx_perturbed_midrange(const FunctionBundle& bundle, const Interval& iv, double x,
                                 const SecondDerivBounds& bounds) {
  require_eval_point(iv, x);
  nonneg_difference(bounds.Gamma, bounds.gamma, "approx_perturbed_midrange");
  return symmetric_bracket(bundle, iv, x) + bounds.midrange() * kernel_first_moment(iv, x);
}

double bound_gruss(const Interval& iv, double x, const SecondDerivBounds& bounds) {
  return 0.25 * nonneg_difference(bounds.Gamma, bounds.gamma, "bound_gruss") *
         kernel_sup(iv, x);
}

double bound_midrange(const Interval& iv, double x, const SecondDerivBounds& bounds) {
  return 0.5 * nonneg_difference(bounds.Gamma, bounds.gamma, "bound_midrange") *
         kernel_first_moment(iv, x);
}

double bound_s_gamma(const Interval& iv, double x, double S, double gamma) {
  return nonneg_difference(S, gamma, "bound_s_gamma") * kernel_centered_sup(iv, x);
}

double bound_gamma_s(const Interval& iv, double x, double Gamma, double S) {
  return nonneg_difference(Gamma, S, "bound_gamma_s") * kernel_centered_sup(iv, x);
}

double bound_l2_third(const Interval& iv, double x, double l2_f3) {
  if (l2_f3 < 0.0) throw std::invalid_argument("bound_l2_third: negative ||f'''||_2");
  return l2_f3 / M_PI * std::sqrt(kernel_centered_l2sq(iv, x));
}

double bound_variance(const Interval& iv, double x, double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("bound_variance: negative sigma");
  return std::sqrt(sigma) / iv.length() * std::sqrt(kernel_centered_l2sq(iv, x));
}

std::vector<PointEstimate> all_estimates(const FunctionBundle& bundle, const Interval& iv,
                                         double x, const AvailableConstants& constants) {
  require_eval_point(iv, x);
  std::vector<PointEstimate> result;
  // The estimator's own S comes from the bundle; the constants gate which
  // bounds are available.
  std::optional<double> approx_s;
  auto with_s = [&]() {
    if (!approx_s) approx_s = approx_perturbed_S(bundle, iv, x);
    return *approx_s;
  };
  for (Theorem t : all_theorems()) {
    switch (t) {
      case Theorem::gruss_21:
        if (constants.bounds) {
          result.push_back({with_s(), bound_gruss(iv, x, *constants.bounds), t, x});
        }
        break;
      case Theorem::midrange_22:
        if (constants.bounds) {
          result.push_back({approx_perturbed_midrange(bundle, iv, x, *constants.bounds),
                            bound_midrange(iv, x, *constants.bounds), t, x});
        }
        break;
      case Theorem::s_gamma_23:
        if (constants.S && constants.bounds) {
          result.push_back(
              {with_s(), bound_s_gamma(iv, x, *constants.S, constants.bounds->gamma), t, x});
        }
        break;
      case Theorem::gamma_s_23:
        if (constants.S && constants.bounds) {
          result.push_back(
              {with_s(), bound_gamma_s(iv, x, constants.bounds->Gamma, *constants.S), t, x});
        }
        break;
      case Theorem::l2_third_24:
        if (constants.l2_f3) {
          result.push_back({with_s(), bound_l2_third(iv, x, *constants.l2_f3), t, x});
        }
        break;
      case Theorem::variance_25:
        if (constants.sigma) {
          result.push_back({with_s(), bound_variance(iv, x, *constants.sigma), t, x});
        }
        break;
    }
  }
  if (result.empty()) {
    throw std::invalid_argument("no error-bound constants available for any estimate");
  }
  return result;
}

PointEstimate best_estimate(const FunctionBundle& bundle, const Interval& iv, double x,
                            const AvailableConstants& constants) {
  const std::vector<PointEstimate> candidates = all_estimates(bundle, iv, x, constants);
  const PointEstimate* best = &candidates.front();
  for (const PointEstimate& c : candidates) {
    if (c.bound < best->bound) best = &c;
  }
  return *best;
}

}  // namespace certquad
