#include "certquad/table1.hpp"

#include <cmath>

#include "certquad/composite.hpp"
#include "certquad/function_model.hpp"
#include "certquad/reference.hpp"

namespace certquad {

const std::array<Table1Printed, 5>& table1_printed() {
  static const std::array<Table1Printed, 5> rows = {{
      {"table1.row1", "cos(x)-x", 20, 0.0, M_PI / 2.0,
       -0.233701, -0.234215, 5.14e-4, 3, -0.233636, 6.5e-5, 2},
      {"table1.row2", "exp(2*x)*cos(exp(x))", 20, 0.0, 1.0,
       -1.176887, -1.181466, 4.579e-3, 4, -1.176316, 5.71e-4, 3},
      {"table1.row3", "1/(x^4+4*x^2+3)", 10, 0.0, 1.0,
       0.241549, 0.241393, 1.56e-4, 3, 0.241569, 2e-5, 1},
      {"table1.row4", "tan(x)+x", 20, 0.0, M_PI / 4.0,
       0.654999, 0.655127, 1.28e-4, 3, 0.654983, 7e-6, 1},
      {"table1.row5", "ln(x^2+1)", 20, -1.0, 1.0,
       0.527887, 0.529554, 1.667e-3, 4, 0.527679, 2.08e-4, 3},
  }};
  return rows;
}

std::vector<Table1Row> reproduce_table1() {
  std::vector<Table1Row> rows;
  rows.reserve(5);
  for (const Table1Printed& printed : table1_printed()) {
    const FunctionBundle bundle = builtin_bundle(printed.builtin);
    const Interval iv(printed.a, printed.b);
    const Partition partition = Partition::uniform(iv, printed.n);

    Table1Row row;
    row.function = printed.display;
    row.n = printed.n;
    row.a = printed.a;
    row.b = printed.b;
    row.integral = reference_integral(bundle.f, iv, 1e-12).value;
    row.t_n = trapezoid(bundle, partition);
    row.t_error = std::abs(row.t_n - row.integral);
    row.q1 = q1(bundle, partition);
    row.q_error = std::abs(row.q1 - row.integral);
    const SecondDerivBounds bounds = estimate_second_deriv_bounds(bundle, iv, 1001, 0.0);
    row.q2 = q2(bundle, partition, bounds);
    row.q2_error = std::abs(row.q2 - row.integral);
    row.quarter = quarter_rule(bundle, partition);
    row.quarter_error = std::abs(row.quarter - row.integral);
    row.q1_q2_agree_6dp = round_decimals(row.q1, 6) == round_decimals(row.q2, 6);
    rows.push_back(std::move(row));
  }
  return rows;
}

double round_decimals(double v, int k) {
  const double scale = std::pow(10.0, k);
  return std::round(v * scale) / scale;
}

double round_sig(double v, int sig) {
  if (v == 0.0) return 0.0;
  const int mag = static_cast<int>(std::floor(std::log10(std::abs(v))));
  const double scale = std::pow(10.0, sig - 1 - mag);
  return std::round(v * scale) / scale;
}

bool match_6dp(double computed, double printed) {
  return std::abs(round_decimals(computed, 6) - printed) < 1e-9;
}

bool match_sig(double computed, double printed, int sig) {
  const double rounded = round_sig(computed, sig);
  return std::abs(rounded - printed) <= 1e-9 * std::max(1.0, std::abs(printed));
}

}  // namespace certquad
