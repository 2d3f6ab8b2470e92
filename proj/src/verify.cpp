#include "certquad/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "certquad/composite.hpp"
#include "certquad/kernel.hpp"
#include "certquad/parallel.hpp"
#include "certquad/point_estimates.hpp"
#include "certquad/reference.hpp"

namespace certquad {

double check_identity(const FunctionBundle& bundle, const Interval& iv,
                      std::span<const double> xs, double ref_tol) {
  const double mean = reference_integral(bundle.f, iv, ref_tol).value / iv.length();
  double worst = 0.0;
  for (double x : xs) {
    const double rhs = identity_rhs(bundle, iv, x, mean);
    const std::array<double, 2> breaks = {x, iv.reflect(x)};
    const auto integrand = [&](double t) { return kernel_value(iv, x, t) * bundle.f2(t); };
    const double lhs =
        reference_integral_split(integrand, iv, breaks, ref_tol).value / iv.length();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

namespace {

// Uniform draws built from raw mt19937_64 output so the stream does not
// depend on the standard library's distribution implementation.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : gen_(seed) {}
  double next() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double in(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 gen_;
};

std::string format_coeff(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", std::abs(v));
  return buf;
}

void append_term(std::string& s, double coeff, const std::string& factor) {
  if (s.empty()) {
    s += coeff < 0.0 ? "-" : "";
  } else {
    s += coeff < 0.0 ? "-" : "+";
  }
  s += format_coeff(coeff);
  if (!factor.empty()) s += "*" + factor;
}

struct CorpusFunction {
  std::string text;
  double a = 0.0;
  double b = 1.0;
};

CorpusFunction draw_function(Uniform& rng) {
  CorpusFunction fn;
  fn.a = rng.in(-2.0, 2.0);
  fn.b = fn.a + rng.in(0.5, 3.0);
  if (rng.next() < 0.5) {
    const int degree = 2 + static_cast<int>(rng.next() * 5.0);
    for (int k = 0; k <= degree; ++k) {
      const double c = rng.in(-3.0, 3.0);
      if (k == 0) append_term(fn.text, c, "");
      else if (k == 1) append_term(fn.text, c, "x");
      else append_term(fn.text, c, "x^" + std::to_string(k));
    }
  } else {
    append_term(fn.text, rng.in(-2.0, 2.0), "sin(" + format_coeff(rng.in(0.5, 2.5)) + "*x)");
    append_term(fn.text, rng.in(-2.0, 2.0), "cos(" + format_coeff(rng.in(0.5, 2.5)) + "*x)");
    const double rate = rng.in(-1.0, 1.0);
    fn.text += rate < 0.0 ? "-" : "+";
    fn.text += format_coeff(rng.in(0.0, 2.0)) + "*exp(" + (rate < 0.0 ? "-" : "") +
               format_coeff(rate) + "*x)";
  }
  return fn;
}

bool second_derivative_tame(const FunctionBundle& bundle, const Interval& iv) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int k = 0; k < 257; ++k) {
    const double t = iv.a() + iv.length() * k / 256.0;
    const double v = bundle.f2(t);
    if (!std::isfinite(v)) return false;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo <= 1e6;
}

struct FamilyRatios {
  std::vector<double> ratios;  // |lhs| / bound where bound > 0
};

struct FunctionReport {
  std::vector<SweepViolation> violations;
  std::map<std::string, FamilyRatios> ratios;
  long long checks = 0;
};

void run_check(FunctionReport& report, int index, const std::string& text,
               const std::string& family, const std::string& where, double lhs, double bound,
               double slack) {
  ++report.checks;
  if (std::abs(lhs) > bound + slack) {
    report.violations.push_back({index, text, family + " @ " + where, std::abs(lhs), bound});
  }
  // Tightness is only meaningful when the bound clears the rounding slack;
  // a near-zero bound paired with a near-zero error gives a noise ratio.
  if (bound >= 1e-6) {
    report.ratios[family].ratios.push_back(std::abs(lhs) / bound);
  }
}

FunctionReport check_function(int index, const CorpusFunction& fn, double slack) {
  FunctionReport report;
  const FunctionBundle bundle = make_expression_bundle(parse(fn.text), fn.text);
  const Interval iv(fn.a, fn.b);

  const SecondDerivBounds bounds = estimate_second_deriv_bounds(bundle, iv, 4097, 0.01);
  const double S = compute_S(bundle, iv);
  const double sigma = compute_sigma(bundle, iv, 1e-11);
  const double l2_f3 = compute_l2_f3(bundle, iv, 1e-11);
  const double integral = reference_integral(bundle.f, iv, 1e-11).value;
  const double mean = integral / iv.length();

  for (int j = 0; j <= 10; ++j) {
    const double x = std::min(iv.a() + (iv.midpoint() - iv.a()) * j / 10.0, iv.midpoint());
    char where[32];
    std::snprintf(where, sizeof(where), "x[%d]", j);
    const double est_s = approx_perturbed_S(bundle, iv, x);
    const double est_mid = approx_perturbed_midrange(bundle, iv, x, bounds);
    run_check(report, index, fn.text, "gruss_21", where, est_s - mean,
              bound_gruss(iv, x, bounds), slack);
    run_check(report, index, fn.text, "midrange_22", where, est_mid - mean,
              bound_midrange(iv, x, bounds), slack);
    run_check(report, index, fn.text, "s_gamma_23", where, est_s - mean,
              bound_s_gamma(iv, x, S, bounds.gamma), slack);
    run_check(report, index, fn.text, "gamma_s_23", where, est_s - mean,
              bound_gamma_s(iv, x, bounds.Gamma, S), slack);
    run_check(report, index, fn.text, "l2_third_24", where, est_s - mean,
              bound_l2_third(iv, x, l2_f3), slack);
    run_check(report, index, fn.text, "variance_25", where, est_s - mean,
              bound_variance(iv, x, sigma), slack);
  }

  for (int n : {1, 2, 5, 10, 20}) {
    const Partition partition = Partition::uniform(iv, n);
    char where[32];
    std::snprintf(where, sizeof(where), "n=%d", n);
    const double q1_err = q1(bundle, partition) - integral;
    const double q2_err = q2(bundle, partition, bounds) - integral;
    run_check(report, index, fn.text, "q1_gruss", where, q1_err,
              remainder_q1_gruss(partition, bounds), slack);
    run_check(report, index, fn.text, "q1_s_gamma", where, q1_err,
              remainder_q1_s_gamma(partition, S, bounds.gamma), slack);
    run_check(report, index, fn.text, "q1_gamma_s", where, q1_err,
              remainder_q1_gamma_s(partition, bounds.Gamma, S), slack);
    run_check(report, index, fn.text, "q1_l2_third", where, q1_err,
              remainder_q1_l2third(partition, l2_f3), slack);
    run_check(report, index, fn.text, "q1_sigma", where, q1_err,
              remainder_q1_sigma(partition, sigma), slack);
    run_check(report, index, fn.text, "q2_midrange", where, q2_err,
              remainder_q2(partition, bounds), slack);
  }
  return report;
}

TightnessStats summarize(std::vector<double> ratios) {
  TightnessStats stats;
  stats.count = static_cast<long long>(ratios.size());
  if (ratios.empty()) return stats;
  std::sort(ratios.begin(), ratios.end());
  const auto at = [&](double q) {
    const double pos = q * (ratios.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, ratios.size() - 1);
    const double frac = pos - lo;
    return ratios[lo] * (1.0 - frac) + ratios[hi] * frac;
  };
  stats.q25 = at(0.25);
  stats.median = at(0.5);
  stats.q75 = at(0.75);
  stats.max = ratios.back();
  return stats;
}

}  // namespace

SweepReport sweep_theorems(const SweepOptions& options) {
  if (options.count < 1) throw std::invalid_argument("sweep_theorems: count must be >= 1");

  // Draw the corpus serially so the stream is a function of the seed alone;
  // the per-function checks then run in parallel.
  Uniform rng(options.seed);
  std::vector<CorpusFunction> corpus;
  corpus.reserve(options.count);
  int attempts = 0;
  while (static_cast<int>(corpus.size()) < options.count) {
    if (++attempts > options.count * 100) {
      throw std::runtime_error("sweep_theorems: corpus rejection loop did not terminate");
    }
    CorpusFunction fn = draw_function(rng);
    const FunctionBundle bundle = make_expression_bundle(parse(fn.text), fn.text);
    if (!second_derivative_tame(bundle, Interval(fn.a, fn.b))) continue;
    corpus.push_back(std::move(fn));
  }

  std::vector<FunctionReport> reports(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    reports[i] = check_function(static_cast<int>(i), corpus[i], options.slack);
  });

  SweepReport merged;
  merged.seed = options.seed;
  merged.count = options.count;
  std::map<std::string, std::vector<double>> all_ratios;
  for (const FunctionReport& r : reports) {
    merged.checks += r.checks;
    merged.violations.insert(merged.violations.end(), r.violations.begin(), r.violations.end());
    for (const auto& [family, fr] : r.ratios) {
      auto& dst = all_ratios[family];
      dst.insert(dst.end(), fr.ratios.begin(), fr.ratios.end());
    }
  }
  for (auto& [family, ratios] : all_ratios) {
    merged.tightness[family] = summarize(std::move(ratios));
  }
  return merged;
}

}  // namespace certquad
