#include "certquad/probability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "certquad/reference.hpp"

namespace certquad {

namespace {
constexpr int kKnots = 1025;
constexpr int kValidationGrid = 2049;
}  // namespace

DensityModel::DensityModel(FunctionBundle pdf, const Interval& iv, double ref_tol)
    : iv_(iv), pdf_(std::move(pdf)) {
  for (int k = 0; k < kValidationGrid; ++k) {
    const double t = iv_.a() + iv_.length() * k / (kValidationGrid - 1.0);
    if (pdf_.f(t) < -1e-12) {
      throw InvalidDensityError("density is negative at t=" + std::to_string(t));
    }
  }

  knots_.resize(kKnots);
  values_.resize(kKnots);
  slopes_.resize(kKnots);
  for (int k = 0; k < kKnots; ++k) {
    knots_[k] = (k == kKnots - 1) ? iv_.b() : iv_.a() + iv_.length() * k / (kKnots - 1.0);
  }
  values_[0] = 0.0;
  const double piece_tol = std::max(ref_tol / kKnots, 1e-13);
  for (int k = 1; k < kKnots; ++k) {
    const Interval piece(knots_[k - 1], knots_[k]);
    const double inc = reference_integral(pdf_.f, piece, piece_tol).value;
    // F is nondecreasing; integrator noise on a flat piece must not dip.
    values_[k] = std::max(values_[k - 1], values_[k - 1] + inc);
  }

  normalization_defect_ = std::abs(values_.back() - 1.0);
  if (normalization_defect_ > 1e-6) {
    throw InvalidDensityError("density mass is " + std::to_string(values_.back()) +
                              ", off 1 by more than 1e-6");
  }

  for (int k = 0; k < kKnots; ++k) slopes_[k] = std::max(pdf_.f(knots_[k]), 0.0);
  // Fritsch-Carlson box limit keeps the Hermite pieces monotone.
  for (int k = 0; k + 1 < kKnots; ++k) {
    const double delta = (values_[k + 1] - values_[k]) / (knots_[k + 1] - knots_[k]);
    if (delta <= 0.0) {
      slopes_[k] = 0.0;
      slopes_[k + 1] = 0.0;
    } else {
      slopes_[k] = std::min(slopes_[k], 3.0 * delta);
      slopes_[k + 1] = std::min(slopes_[k + 1], 3.0 * delta);
    }
  }
}

double DensityModel::cdf(double x) const {
  if (!iv_.contains(x)) {
    throw std::domain_error("cdf: x=" + std::to_string(x) + " outside [" +
                            std::to_string(iv_.a()) + ", " + std::to_string(iv_.b()) + "]");
  }
  const double step = iv_.length() / (kKnots - 1);
  int k = static_cast<int>((x - iv_.a()) / step);
  k = std::clamp(k, 0, kKnots - 2);
  const double h = knots_[k + 1] - knots_[k];
  const double s = (x - knots_[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * values_[k] + h10 * h * slopes_[k] + h01 * values_[k + 1] + h11 * h * slopes_[k + 1];
}

FunctionBundle DensityModel::cdf_bundle() const {
  FunctionBundle bundle;
  bundle.f = [this](double t) { return cdf(t); };
  bundle.f1 = pdf_.f;
  bundle.f2 = pdf_.f1;
  bundle.f3 = pdf_.f2;
  bundle.source = pdf_.source;
  bundle.name = "cdf(" + pdf_.name + ")";
  return bundle;
}

double expectation_reference(const DensityModel& model) {
  // Each Hermite piece integrates in closed form.
  double integral_F = 0.0;
  for (std::size_t k = 0; k + 1 < model.knots_.size(); ++k) {
    const double h = model.knots_[k + 1] - model.knots_[k];
    integral_F += h * 0.5 * (model.values_[k] + model.values_[k + 1]) +
                  h * h / 12.0 * (model.slopes_[k] - model.slopes_[k + 1]);
  }
  return model.iv_.b() - integral_F;
}

ExpectationBracket expectation_bracket(const DensityModel& model, double x, Theorem tag) {
  const Interval& iv = model.interval();
  require_eval_point(iv, x);
  const FunctionBundle F = model.cdf_bundle();

  double estimate = 0.0;
  double bound = 0.0;
  switch (tag) {
    case Theorem::gruss_21: {
      const SecondDerivBounds b = estimate_second_deriv_bounds(F, iv, 1001, 0.0);
      estimate = approx_perturbed_S(F, iv, x);
      bound = bound_gruss(iv, x, b);
      break;
    }
    case Theorem::midrange_22: {
      const SecondDerivBounds b = estimate_second_deriv_bounds(F, iv, 1001, 0.0);
      estimate = approx_perturbed_midrange(F, iv, x, b);
      bound = bound_midrange(iv, x, b);
      break;
    }
    case Theorem::s_gamma_23: {
      const SecondDerivBounds b = estimate_second_deriv_bounds(F, iv, 1001, 0.0);
      estimate = approx_perturbed_S(F, iv, x);
      bound = bound_s_gamma(iv, x, compute_S(F, iv), b.gamma);
      break;
    }
    case Theorem::gamma_s_23: {
      const SecondDerivBounds b = estimate_second_deriv_bounds(F, iv, 1001, 0.0);
      estimate = approx_perturbed_S(F, iv, x);
      bound = bound_gamma_s(iv, x, b.Gamma, compute_S(F, iv));
      break;
    }
    case Theorem::l2_third_24: {
      estimate = approx_perturbed_S(F, iv, x);
      bound = bound_l2_third(iv, x, compute_l2_f3(F, iv));
      break;
    }
    case Theorem::variance_25: {
      estimate = approx_perturbed_S(F, iv, x);
      bound = bound_variance(iv, x, compute_sigma(F, iv));
      break;
    }
  }

  ExpectationBracket bracket;
  bracket.center = iv.b() - iv.length() * estimate;
  bracket.halfwidth = iv.length() * bound;
  bracket.theorem = tag;
  bracket.x = x;
  return bracket;
}

}  // namespace certquad
