#pragma once

#include <array>
#include <string>
#include <vector>

#include "certquad/interval.hpp"

namespace certquad {

/// One row of the reference table as printed: six-decimal value columns and
/// error columns with their printed significant-digit counts.
struct Table1Printed {
  const char* builtin;   // catalog key
  const char* display;   // function text
  int n;
  double a, b;
  double integral;
  double t_value;
  double t_error;
  int t_error_sig;
  double q_value;
  double q_error;
  int q_error_sig;
};

const std::array<Table1Printed, 5>& table1_printed();

/// Computed counterpart of a printed row, plus diagnostics.
struct Table1Row {
  std::string function;
  int n = 0;
  double a = 0.0, b = 0.0;
  double integral = 0.0;      // reference integral
  double t_n = 0.0;
  double t_error = 0.0;       // |t_n - integral|
  double q1 = 0.0;            // corrected quarter-node rule
  double q2 = 0.0;            // midrange-corrected rule, grid bounds (inflation 0)
  double q_error = 0.0;       // |q1 - integral|
  double q2_error = 0.0;
  double quarter = 0.0;       // uncorrected quarter-node sum
  double quarter_error = 0.0;
  bool q1_q2_agree_6dp = false;
};

/// Compute all five rows: reference integral (tol 1e-12), composite
/// trapezoid, the corrected rules, and the uncorrected quarter-node sum.
std::vector<Table1Row> reproduce_table1();

/// Round to k decimal places / to `sig` significant digits.
double round_decimals(double v, int k);
double round_sig(double v, int sig);

/// Does `computed` round to the printed 6-decimal value / to the printed
/// error (at its significant-digit count)?
bool match_6dp(double computed, double printed);
bool match_sig(double computed, double printed, int sig);

}  // namespace certquad
