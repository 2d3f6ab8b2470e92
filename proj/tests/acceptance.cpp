// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Criterion 1 is asserted literally against the printed reference
// table; the table's own provenance (which cells were computed with which
// rule and rounding) is reported alongside as diagnostics.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "certquad/composite.hpp"
#include "certquad/kernel.hpp"
#include "certquad/probability.hpp"
#include "certquad/reference.hpp"
#include "certquad/table1.hpp"
#include "certquad/verify.hpp"
#include "test_util.hpp"

using namespace certquad;
using testutil::bundle_of;

namespace {

int failures = 0;
std::vector<std::string> diagnostics;

void criterion(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

void note(const std::string& line) { diagnostics.push_back(line); }

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Criterion 1: printed-table reproduction, asserted literally: computed
// reference integral, trapezoid value and q1 value round to the printed
// 6-decimal cells; |computed - reference| rounds to the printed error cells.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Table1Row> rows = reproduce_table1();
  const auto& printed = table1_printed();
  int bad_cells = 0;
  std::string first_bad;

  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      ++bad_cells;
      if (first_bad.empty()) first_bad = what;
      note("criterion 1: mismatch at " + what);
    }
  };

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Table1Row& row = rows[i];
    const Table1Printed& p = printed[i];
    const std::string tag = "row " + std::to_string(i + 1);
    expect(match_6dp(row.integral, p.integral), tag + " integral");
    expect(match_6dp(row.t_n, p.t_value), tag + " t_n");
    expect(match_6dp(row.q1, p.q_value), tag + " q1");
    expect(match_sig(row.t_error, p.t_error, p.t_error_sig), tag + " t_error");
    expect(match_sig(row.q_error, p.q_error, p.q_error_sig), tag + " q_error");
  }
  const double elapsed = seconds_since(start);
  expect(elapsed < 5.0, fmt("runtime %.2fs (budget 5s)", elapsed));

  criterion(1, "printed-table reproduction (literal)", bad_cells == 0,
            bad_cells == 0 ? fmt("runtime %.2fs", elapsed)
                           : fmt("%d cell(s) differ, first: %s; see diagnostics", bad_cells,
                                 first_bad.c_str()));

  // Diagnostics: how the printed table was actually produced. The printed Q
  // columns equal the quarter-node sum without the derivative correction;
  // the printed error cells are differences of the printed value cells.
  int value_ok = 0, error_ok = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Table1Row& row = rows[i];
    const Table1Printed& p = printed[i];
    const bool values[3] = {match_6dp(row.integral, p.integral), match_6dp(row.t_n, p.t_value),
                            match_6dp(row.quarter, p.q_value)};
    const bool errors[2] = {
        match_sig(std::abs(p.t_value - p.integral), p.t_error, p.t_error_sig),
        match_sig(std::abs(p.q_value - p.integral), p.q_error, p.q_error_sig)};
    for (bool ok : values) value_ok += ok ? 1 : 0;
    for (bool ok : errors) error_ok += ok ? 1 : 0;
    if (!values[0]) {
      note(fmt("diagnostic row %zu: printed integral %.6f is a truncation of computed %.7f",
               i + 1, p.integral, row.integral));
    }
    if (!errors[1]) {
      note(fmt("diagnostic row %zu: printed q error %.2e is not the difference of the printed "
               "cells (%.2e); |q1-ref| is %.2e",
               i + 1, p.q_error, std::abs(p.q_value - p.integral), row.q_error));
    }
  }
  note(fmt("diagnostic: %d/15 printed value cells reproduce at 6 decimals (the Q columns via "
           "the uncorrected quarter-node sum); %d/10 printed error cells are differences of "
           "the printed value cells; q1 with its derivative correction is ~1e-7 accurate on "
           "these rows and rounds to the reference column instead",
           value_ok, error_ok));
}

// Criterion 2: q1 integrates monomials t^k, k <= 3, exactly.
void criterion_2() {
  int bad = 0;
  std::string first;
  for (const Interval iv : {Interval(0.0, 1.0), Interval(-2.0, 3.0)}) {
    for (int k = 0; k <= 3; ++k) {
      const FunctionBundle bundle = bundle_of(k == 0 ? std::string("1")
                                                     : "x^" + std::to_string(k));
      const double exact =
          (std::pow(iv.b(), k + 1) - std::pow(iv.a(), k + 1)) / (k + 1);
      for (int n : {1, 2, 7}) {
        const double err = std::abs(q1(bundle, Partition::uniform(iv, n)) - exact);
        if (err > 1e-12) {
          ++bad;
          if (first.empty())
            first = fmt("k=%d n=%d on [%g,%g]: err %.3e", k, n, iv.a(), iv.b(), err);
        }
      }
    }
  }
  criterion(2, "polynomial exactness of q1 for degree <= 3", bad == 0, first);
}

// Criterion 3: kernel identity residual <= 1e-9 across a 10-function corpus.
void criterion_3() {
  const std::vector<std::pair<std::string, Interval>> corpus = {
      {"x", Interval(0.0, 1.0)},
      {"x^2", Interval(-1.0, 1.0)},
      {"x^3", Interval(0.0, 1.0)},
      {"x^4", Interval(0.0, 1.0)},
      {"x^5-2*x^2+x", Interval(-1.0, 1.5)},
      {"sin(x)", Interval(0.0, M_PI)},
      {"cos(x)-x", Interval(0.0, M_PI / 2)},
      {"exp(2*x)*cos(exp(x))", Interval(0.0, 1.0)},
      {"ln(x^2+1)", Interval(-1.0, 1.0)},
      {"tan(x)+x", Interval(0.0, M_PI / 4)},
  };
  double worst = 0.0;
  for (const auto& [text, iv] : corpus) {
    std::vector<double> xs;
    for (int j = 0; j <= 10; ++j) {
      xs.push_back(std::min(iv.a() + (iv.midpoint() - iv.a()) * j / 10.0, iv.midpoint()));
    }
    worst = std::max(worst, check_identity(bundle_of(text), iv, xs, 1e-11));
  }
  criterion(3, "kernel identity residual over the corpus", worst <= 1e-9,
            fmt("max residual %.3e", worst));
}

// Criterion 4: seed-42 sweep of 200 functions reports zero violations.
void criterion_4() {
  const auto start = std::chrono::steady_clock::now();
  SweepOptions options;
  options.seed = 42;
  options.count = 200;
  const SweepReport report = sweep_theorems(options);
  const double elapsed = seconds_since(start);
  const bool pass = report.violations.empty() && elapsed < 60.0;
  criterion(4, "bound-validity sweep (seed 42, 200 functions)", pass,
            fmt("%zu violations over %lld checks, runtime %.1fs",
                report.violations.size(), report.checks, elapsed));
}

// Criterion 5: kernel moment closed forms match brute force on random pairs.
void criterion_5() {
  testutil::Rng rng(20250810);
  int bad = 0;
  std::string first;
  for (int trial = 0; trial < 25; ++trial) {
    const double a = rng.in(-2.0, 2.0);
    const Interval iv(a, a + rng.in(0.3, 3.0));
    const double x = iv.a() + rng.next() * (iv.midpoint() - iv.a());
    const double len2 = iv.length() * iv.length();

    const double numeric_mean =
        testutil::oracle_kernel_integral(iv, x, [](double) { return 1.0; }, 1e-12) / iv.length();
    if (std::abs(kernel_first_moment(iv, x) - numeric_mean) > 1e-10) {
      ++bad;
      if (first.empty()) first = fmt("first_moment trial %d", trial);
    }

    const double m = kernel_first_moment(iv, x);
    const double grid_centered = testutil::grid_max(
        iv, 10001, [&](double t) { return std::abs(kernel_value(iv, x, t) - m); },
        {x, iv.reflect(x)});
    const double closed_centered = kernel_centered_sup(iv, x);
    if (grid_centered > closed_centered + 1e-13 * std::max(1.0, closed_centered) ||
        closed_centered - grid_centered > 1e-6 * len2) {
      ++bad;
      if (first.empty()) first = fmt("centered_sup trial %d", trial);
    }

    const std::array<double, 2> breaks = {x, iv.reflect(x)};
    const double numeric_l2 =
        reference_integral_split(
            [&](double t) {
              const double d = kernel_value(iv, x, t) - m;
              return d * d;
            },
            iv, breaks, 1e-13)
            .value;
    const double closed_l2 = kernel_centered_l2sq(iv, x);
    if (std::abs(closed_l2 - numeric_l2) > 1e-10 * std::max(1.0, std::abs(numeric_l2))) {
      ++bad;
      if (first.empty()) first = fmt("centered_l2sq trial %d", trial);
    }
  }
  criterion(5, "kernel moments match brute-force evaluation (25 pairs)", bad == 0, first);
}

// Criterion 6: hand-derived spot values for f = t^4 on [0,1] at x = 1/4.
void criterion_6() {
  const Interval unit(0.0, 1.0);
  const FunctionBundle quartic = bundle_of("x^4");
  int bad = 0;
  std::string first;
  auto expect_rel = [&](double value, double expected, const char* what) {
    if (std::abs(value - expected) > 1e-9 * std::abs(expected)) {
      ++bad;
      if (first.empty()) first = fmt("%s: %.12g vs %.12g", what, value, expected);
    }
  };
  const double estimator = approx_perturbed_S(quartic, unit, 0.25);
  expect_rel(estimator, 155.0 / 768.0, "estimator");
  if (std::abs(estimator - 0.2018229) > 1e-6) {
    ++bad;
    if (first.empty()) first = "estimator vs 0.2018229 +- 1e-6";
  }
  expect_rel(bound_gruss(unit, 0.25, user_bounds(0, 12)), 0.09375, "gruss bound");
  expect_rel(bound_midrange(unit, 0.25, user_bounds(0, 12)), 0.0625, "midrange bound");
  const double sigma = compute_sigma(quartic, unit);
  expect_rel(bound_variance(unit, 0.25, sigma), 8.0 / 240.0, "sigma bound");
  criterion(6, "hand-derived spot values for t^4", bad == 0, first);
}

// Criterion 7: expectation brackets for the three polynomial densities.
void criterion_7() {
  const Interval unit(0.0, 1.0);
  int bad = 0;
  std::string first;
  for (const char* text : {"1", "2*x", "3*x^2"}) {
    const DensityModel model(bundle_of(text), unit);
    const double reference = expectation_reference(model);
    for (Theorem tag : all_theorems()) {
      for (double x : {0.0, 0.125, 0.25, 0.375, 0.5}) {
        const ExpectationBracket b = expectation_bracket(model, x, tag);
        if (reference < b.lo() - 1e-9 || reference > b.hi() + 1e-9) {
          ++bad;
          if (first.empty())
            first = fmt("density %s tag %s x=%g", text, to_string(tag).c_str(), x);
        }
      }
    }
  }
  const ExpectationBracket uniform_bracket =
      expectation_bracket(DensityModel(bundle_of("1"), unit), 0.25, Theorem::gruss_21);
  if (uniform_bracket.halfwidth != 0.0) {
    ++bad;
    if (first.empty()) first = "uniform gruss halfwidth not exactly zero";
  }
  criterion(7, "expectation brackets for densities {1, 2t, 3t^2}", bad == 0, first);
}

// Criterion 8: closed-form scaling under uniform doubling.
void criterion_8() {
  const Interval iv(-0.5, 2.0);
  const SecondDerivBounds bounds = user_bounds(-1.0, 2.0);
  int bad = 0;
  std::string first;
  for (int n : {1, 2, 4, 8, 16}) {
    const Partition coarse = Partition::uniform(iv, n);
    const Partition fine = Partition::uniform(iv, 2 * n);
    // dyadic ratio asserted bit-exactly
    if (remainder_q1_gruss(fine, bounds) != remainder_q1_gruss(coarse, bounds) / 4.0) {
      ++bad;
      if (first.empty()) first = fmt("gruss quartering at n=%d", n);
    }
    // 2^(-5/2) cannot be hit bit-exactly (two rounding chains); 4 ulp slack
    const double lhs = remainder_q1_l2third(fine, 1.3);
    const double rhs = remainder_q1_l2third(coarse, 1.3) * std::pow(2.0, -2.5);
    if (std::abs(lhs - rhs) > 4.0 * std::abs(rhs) * std::numeric_limits<double>::epsilon()) {
      ++bad;
      if (first.empty()) first = fmt("l2third 2^-5/2 scaling at n=%d", n);
    }
  }
  criterion(8, "remainder scaling laws under uniform doubling", bad == 0, first);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  for (const std::string& line : diagnostics) std::printf("  %s\n", line.c_str());
  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
