#include "certquad/composite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "certquad/parallel.hpp"

namespace certquad {

Partition::Partition(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("Partition: need at least two nodes");
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (!(points_[i] < points_[i + 1])) {
      throw std::invalid_argument("Partition: nodes must be strictly increasing");
    }
  }
}

Partition Partition::uniform(const Interval& iv, int n) {
  if (n < 1) throw std::invalid_argument("Partition::uniform: n must be >= 1");
  std::vector<double> pts(n + 1);
  const double h = iv.length() / n;
  for (int i = 0; i <= n; ++i) pts[i] = iv.a() + h * i;
  pts[n] = iv.b();
  Partition p(std::move(pts));
  p.uniform_n_ = n;
  p.uniform_h_ = h;
  return p;
}

double Partition::sum_h_pow(double p) const {
  if (uniform_n_ > 0) {
    const double h = uniform_h_;
    double term;
    if (p == 3.0) term = h * h * h;
    else if (p == 2.5) term = h * h * std::sqrt(h);
    else if (p == 3.5) term = h * h * h * std::sqrt(h);
    else term = std::pow(h, p);
    return static_cast<double>(uniform_n_) * term;
  }
  std::vector<double> terms(size());
  for (int i = 0; i < size(); ++i) terms[i] = std::pow(h(i), p);
  return pairwise_sum(terms);
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::q1: return "q1";
    case Rule::q2: return "q2";
    case Rule::trapezoid: return "trapezoid";
  }
  return "?";
}

namespace {

constexpr std::size_t kParallelThreshold = 2048;

void fill_terms(std::vector<double>& terms, const std::function<void(std::size_t)>& fn) {
  if (terms.size() >= kParallelThreshold) {
    parallel_for(terms.size(), fn);
  } else {
    for (std::size_t i = 0; i < terms.size(); ++i) fn(i);
  }
}

std::string subinterval_context(const Partition& partition, std::size_t i) {
  return " (subinterval " + std::to_string(i) + " of [" +
         std::to_string(partition.points()[i]) + ", " + std::to_string(partition.points()[i + 1]) +
         "])";
}

double quarter_terms_sum(const FunctionBundle& bundle, const Partition& partition,
                         bool with_derivative_correction) {
  const std::vector<double>& pts = partition.points();
  const std::size_t n = partition.size();
  std::vector<double> node_d1;
  if (with_derivative_correction) {
    node_d1.resize(n + 1);
    fill_terms(node_d1, [&](std::size_t i) { node_d1[i] = bundle.f1(pts[i]); });
  }
  std::vector<double> terms(n);
  fill_terms(terms, [&](std::size_t i) {
    try {
      const double x0 = pts[i], x1 = pts[i + 1];
      const double hi = x1 - x0;
      double t = 0.5 * (bundle.f(0.25 * (3.0 * x0 + x1)) + bundle.f(0.25 * (x0 + 3.0 * x1))) * hi;
      if (with_derivative_correction) t += (node_d1[i + 1] - node_d1[i]) * hi * hi / 96.0;
      terms[i] = t;
    } catch (const EvalDomainError& e) {
      throw std::domain_error(std::string(e.what()) + subinterval_context(partition, i));
    }
  });
  return pairwise_sum(terms);
}

}  // namespace

double q1(const FunctionBundle& bundle, const Partition& partition) {
  return quarter_terms_sum(bundle, partition, true);
}

double quarter_rule(const FunctionBundle& bundle, const Partition& partition) {
  return quarter_terms_sum(bundle, partition, false);
}

double q2(const FunctionBundle& bundle, const Partition& partition,
          const SecondDerivBounds& bounds) {
  if (!(bounds.gamma <= bounds.Gamma)) {
    throw std::invalid_argument("q2: invalid second-derivative bounds");
  }
  return quarter_terms_sum(bundle, partition, false) +
         bounds.midrange() / 96.0 * partition.sum_h_pow(3.0);
}

double trapezoid(const FunctionBundle& bundle, const Partition& partition) {
  const std::vector<double>& pts = partition.points();
  std::vector<double> node_f(pts.size());
  fill_terms(node_f, [&](std::size_t i) { node_f[i] = bundle.f(pts[i]); });
  std::vector<double> terms(partition.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = 0.5 * (node_f[i] + node_f[i + 1]) * (pts[i + 1] - pts[i]);
  }
  return pairwise_sum(terms);
}

namespace {
double nonneg(double v, const char* what) {
  if (v >= 0.0) return v;
  if (v >= -1e-9 * std::max(1.0, std::abs(v))) return 0.0;
  throw std::invalid_argument(std::string(what) + ": negative constant");
}
}  // namespace

double remainder_q1_gruss(const Partition& partition, const SecondDerivBounds& bounds) {
  return nonneg(bounds.width(), "remainder_q1_gruss") / 128.0 * partition.sum_h_pow(3.0);
}

double remainder_q1_gruss_sharpened(const FunctionBundle& bundle, const Partition& partition,
                                    int n_samples_per_interval, double inflation) {
  std::vector<double> terms(partition.size());
  fill_terms(terms, [&](std::size_t i) {
    const Interval piece(partition.points()[i], partition.points()[i + 1]);
    const SecondDerivBounds local =
        estimate_second_deriv_bounds(bundle, piece, n_samples_per_interval, inflation);
    const double hi = piece.length();
    terms[i] = local.width() / 128.0 * hi * hi * hi;
  });
  return pairwise_sum(terms);
}

double remainder_q2(const Partition& partition, const SecondDerivBounds& bounds) {
  return nonneg(bounds.width(), "remainder_q2") / 192.0 * partition.sum_h_pow(3.0);
}

double remainder_q1_s_gamma(const Partition& partition, double S, double gamma) {
  return nonneg(S - gamma, "remainder_q1_s_gamma") / 48.0 * partition.sum_h_pow(3.0);
}

double remainder_q1_gamma_s(const Partition& partition, double Gamma, double S) {
  return nonneg(Gamma - S, "remainder_q1_gamma_s") / 48.0 * partition.sum_h_pow(3.0);
}

double remainder_q1_l2third(const Partition& partition, double l2_f3) {
  if (l2_f3 < 0.0) throw std::invalid_argument("remainder_q1_l2third: negative ||f'''||_2");
  return l2_f3 / (48.0 * M_PI * std::sqrt(5.0)) * partition.sum_h_pow(3.5);
}

double remainder_q1_sigma(const Partition& partition, double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("remainder_q1_sigma: negative sigma");
  return std::sqrt(sigma) / (48.0 * std::sqrt(5.0)) * partition.sum_h_pow(2.5);
}

std::vector<std::pair<Theorem, double>> q1_remainders(const Partition& partition,
                                                      const AvailableConstants& constants) {
  std::vector<std::pair<Theorem, double>> out;
  if (constants.bounds) {
    out.emplace_back(Theorem::gruss_21, remainder_q1_gruss(partition, *constants.bounds));
  }
  if (constants.S && constants.bounds) {
    out.emplace_back(Theorem::s_gamma_23,
                     remainder_q1_s_gamma(partition, *constants.S, constants.bounds->gamma));
    out.emplace_back(Theorem::gamma_s_23,
                     remainder_q1_gamma_s(partition, constants.bounds->Gamma, *constants.S));
  }
  if (constants.l2_f3) {
    out.emplace_back(Theorem::l2_third_24, remainder_q1_l2third(partition, *constants.l2_f3));
  }
  if (constants.sigma) {
    out.emplace_back(Theorem::variance_25, remainder_q1_sigma(partition, *constants.sigma));
  }
  return out;
}

QuadratureResult integrate_to_tolerance(const FunctionBundle& bundle, const Interval& iv,
                                        double tol, int max_n) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_to_tolerance: tol must be positive");
  if (max_n < 1) throw std::invalid_argument("integrate_to_tolerance: max_n must be >= 1");

  AvailableConstants constants;
  constants.bounds = estimate_second_deriv_bounds(bundle, iv);
  const SmoothnessConstants smooth = compute_constants(bundle, iv);
  constants.S = smooth.S;
  constants.sigma = smooth.sigma;
  constants.l2_f3 = smooth.l2_f3;

  int n = 1;
  for (;;) {
    const Partition partition = Partition::uniform(iv, n);
    auto bounds = q1_remainders(partition, constants);
    if (bounds.empty()) throw std::invalid_argument("integrate_to_tolerance: no bounds computable");
    double best = bounds.front().second;
    for (const auto& [_, b] : bounds) best = std::min(best, b);
    const bool done = best <= tol;
    if (done || n * 2 > max_n) {
      QuadratureResult result;
      result.value = q1(bundle, partition);
      result.rule = Rule::q1;
      result.bounds = std::move(bounds);
      result.n = n;
      result.converged = done;
      return result;
    }
    n *= 2;
  }
}

}  // namespace certquad
