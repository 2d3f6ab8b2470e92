#include "certquad/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace certquad {

double kernel_value(const Interval& iv, double x, double t) {
  require_eval_point(iv, x);
  if (!(t >= iv.a() && t <= iv.b())) {
    throw std::domain_error("kernel_value: t=" + std::to_string(t) + " outside [" +
                            std::to_string(iv.a()) + ", " + std::to_string(iv.b()) + "]");
  }
  if (t <= x) {
    const double d = t - iv.a();
    return 0.5 * d * d;
  }
  if (t <= iv.reflect(x)) {
    const double d = t - iv.midpoint();
    return 0.5 * d * d;
  }
  const double d = t - iv.b();
  return 0.5 * d * d;
}

double kernel_first_moment(const Interval& iv, double x) {
  require_eval_point(iv, x);
  const double d = x - iv.quarter_point();
  const double len = iv.length();
  return 0.5 * d * d + len * len / 96.0;
}

double kernel_sup(const Interval& iv, double x) {
  require_eval_point(iv, x);
  const double r = 0.25 * iv.length() + std::abs(x - iv.quarter_point());
  return 0.5 * r * r;
}

double kernel_centered_sup(const Interval& iv, double x) {
  require_eval_point(iv, x);
  const double len = iv.length();
  return len * len / 48.0 + 0.25 * len * std::abs(x - iv.quarter_point());
}

double kernel_centered_l2sq(const Interval& iv, double x) {
  require_eval_point(iv, x);
  const double len = iv.length();
  const double m = kernel_first_moment(iv, x);
  const double u = iv.a() + iv.b() - 2.0 * x;  // a+b-2x >= 0 for x in the left half
  const double v = x - iv.a();
  const double raw = std::pow(u, 5) / 320.0 + std::pow(v, 5) / 10.0 - len * m * m;
  const double tiny = 1e-12 * std::max(1.0, std::pow(len, 5));
  if (raw < -tiny) {
    throw std::logic_error("kernel_centered_l2sq: negative beyond rounding noise (" +
                           std::to_string(raw) + ")");
  }
  return std::max(raw, 0.0);
}

double identity_rhs(const FunctionBundle& bundle, const Interval& iv, double x, double ref_mean) {
  require_eval_point(iv, x);
  const double xr = iv.reflect(x);
  const double avg = 0.5 * (bundle.f(x) + bundle.f(xr));
  const double deriv_term = (x - iv.quarter_point()) * 0.5 * (bundle.f1(x) - bundle.f1(xr));
  return ref_mean - avg + deriv_term;
}

}  // namespace certquad
