#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "certquad/function_model.hpp"
#include "certquad/interval.hpp"

namespace certquad {

/// Max over the x grid of the absolute difference between the two sides of
/// the kernel identity, each side computed independently (the right-hand
/// side from point evaluations and the oracle mean of f, the left-hand side
/// by oracle integration of K(x,.) f'' split at the kernel breakpoints).
double check_identity(const FunctionBundle& bundle, const Interval& iv,
                      std::span<const double> xs, double ref_tol = 1e-11);

struct SweepOptions {
  std::uint64_t seed = 42;
  int count = 200;
  double slack = 1e-9;
};

struct SweepViolation {
  int function_index = 0;
  std::string function;
  std::string site;  // bound family plus grid location
  double lhs = 0.0;
  double bound = 0.0;
};

struct TightnessStats {
  long long count = 0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

struct SweepReport {
  std::uint64_t seed = 0;
  int count = 0;
  long long checks = 0;
  std::vector<SweepViolation> violations;
  std::map<std::string, TightnessStats> tightness;  // |lhs| / bound per family
};

/// Validity sweep over a seeded corpus of polynomials (degree <= 6,
/// coefficients in [-3,3]) and dilated trig/exp mixtures on random
/// intervals. Every estimator is checked against the oracle mean on an
/// 11-point x grid, and both composite rules against the oracle integral
/// for n in {1,2,5,10,20}. Violations (expected: none) and tightness
/// ratios are reported. Deterministic for a given seed.
SweepReport sweep_theorems(const SweepOptions& options);

}  // namespace certquad
