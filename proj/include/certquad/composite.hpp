#pragma once

#include <string>
#include <utility>
#include <vector>

#include "certquad/function_model.hpp"
#include "certquad/interval.hpp"
#include "certquad/point_estimates.hpp"

namespace certquad {

/// Strictly increasing nodes x0 < x1 < ... < xn covering an interval.
class Partition {
 public:
  explicit Partition(std::vector<double> points);
  static Partition uniform(const Interval& iv, int n);

  const std::vector<double>& points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()) - 1; }
  double h(int i) const { return points_[i + 1] - points_[i]; }
  Interval interval() const { return Interval(points_.front(), points_.back()); }
  bool is_uniform() const { return uniform_n_ > 0; }

  /// Sum of h_i^p. Uses the closed form n * h^p for uniform partitions so
  /// that doubling n scales the sum by exact powers of two where p allows.
  double sum_h_pow(double p) const;

 private:
  std::vector<double> points_;
  int uniform_n_ = 0;
  double uniform_h_ = 0.0;
};

enum class Rule { q1, q2, trapezoid };

std::string to_string(Rule r);

/// Composite value with every remainder bound that was computable.
struct QuadratureResult {
  double value = 0.0;
  Rule rule = Rule::q1;
  std::vector<std::pair<Theorem, double>> bounds;
  int n = 0;
  bool converged = true;
};

/// Quarter-node rule with per-subinterval derivative correction:
/// sum of [f((3xi+xi+1)/4) + f((xi+3xi+1)/4)] hi / 2
///      + [f'(xi+1) - f'(xi)] hi^2 / 96.
double q1(const FunctionBundle& bundle, const Partition& partition);

/// Same quarter-node sum, corrected by (Gamma+gamma)/192 * sum of hi^3.
double q2(const FunctionBundle& bundle, const Partition& partition,
          const SecondDerivBounds& bounds);

/// The quarter-node sum with no correction term. Not one of the certified
/// rules; kept because the reference table's Q columns tabulate it.
double quarter_rule(const FunctionBundle& bundle, const Partition& partition);

/// Baseline composite trapezoid.
double trapezoid(const FunctionBundle& bundle, const Partition& partition);

// Remainder bounds. q1 carries one per constant family; q2 carries the
// midrange-family bound. Bounds are global over [a,b] as in the theorems.
double remainder_q1_gruss(const Partition& partition, const SecondDerivBounds& bounds);

/// Sharpened variant: grid-estimates gamma_i, Gamma_i on each subinterval
/// and sums (Gamma_i - gamma_i)/128 * h_i^3. Never looser than the global
/// form for the same sampling.
double remainder_q1_gruss_sharpened(const FunctionBundle& bundle, const Partition& partition,
                                    int n_samples_per_interval = 65, double inflation = 0.0);
double remainder_q2(const Partition& partition, const SecondDerivBounds& bounds);
double remainder_q1_s_gamma(const Partition& partition, double S, double gamma);
double remainder_q1_gamma_s(const Partition& partition, double Gamma, double S);
double remainder_q1_l2third(const Partition& partition, double l2_f3);
double remainder_q1_sigma(const Partition& partition, double sigma);

/// All q1 remainder bounds computable from the constants, tagged by family.
std::vector<std::pair<Theorem, double>> q1_remainders(const Partition& partition,
                                                      const AvailableConstants& constants);

/// Evaluate q1 on uniform partitions n = 1, 2, 4, ... (doubling) until the
/// smallest computable remainder bound is <= tol or the next doubling would
/// exceed max_n. An unconverged result carries converged = false.
QuadratureResult integrate_to_tolerance(const FunctionBundle& bundle, const Interval& iv,
                                        double tol, int max_n = 1 << 20);

}  // namespace certquad
