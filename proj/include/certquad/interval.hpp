#pragma once

#include <stdexcept>
#include <string>

namespace certquad {

/// A real integration domain [a, b] with a < b.
class Interval {
 public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!(a < b)) {
      throw std::invalid_argument("Interval: require a < b, got [" +
                                  std::to_string(a) + ", " + std::to_string(b) + "]");
    }
  }

  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  double midpoint() const { return 0.5 * (a_ + b_); }
  /// The point (3a+b)/4, where the one-interval estimators are tightest.
  double quarter_point() const { return 0.25 * (3.0 * a_ + b_); }
  /// Mirror image of t about the midpoint.
  double reflect(double t) const { return a_ + b_ - t; }
  bool contains(double t) const { return t >= a_ && t <= b_; }

 private:
  double a_;
  double b_;
};

/// Estimator parameters live in the left half [a, (a+b)/2].
inline void require_eval_point(const Interval& iv, double x) {
  if (!(x >= iv.a() && x <= iv.midpoint())) {
    throw std::domain_error("evaluation point x=" + std::to_string(x) +
                            " outside [a, (a+b)/2] for [" + std::to_string(iv.a()) +
                            ", " + std::to_string(iv.b()) + "]");
  }
}

}  // namespace certquad
