#include "certquad/records.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "certquad/composite.hpp"
#include "certquad/probability.hpp"
#include "certquad/table1.hpp"
#include "certquad/verify.hpp"

namespace certquad {

namespace {

class RecordTimer {
 public:
  RecordTimer() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

AvailableConstants gather_constants(const FunctionBundle& bundle, const Interval& iv,
                                    const std::optional<double>& gamma,
                                    const std::optional<double>& Gamma) {
  AvailableConstants constants;
  if (gamma.has_value() != Gamma.has_value()) {
    throw std::invalid_argument("provide both gamma and Gamma or neither");
  }
  constants.bounds = gamma ? user_bounds(*gamma, *Gamma) : estimate_second_deriv_bounds(bundle, iv);
  const SmoothnessConstants smooth = compute_constants(bundle, iv);
  constants.S = smooth.S;
  constants.sigma = smooth.sigma;
  constants.l2_f3 = smooth.l2_f3;
  // The secant slope is the mean of f'', so true two-sided bounds must
  // straddle it; bounds that do not are wrong, not merely loose.
  if (constants.bounds->provenance == Provenance::user_supplied) {
    const double slack =
        1e-9 * std::max({1.0, std::abs(smooth.S), std::abs(constants.bounds->gamma),
                         std::abs(constants.bounds->Gamma)});
    if (smooth.S < constants.bounds->gamma - slack || smooth.S > constants.bounds->Gamma + slack) {
      throw std::invalid_argument(
          "supplied bounds are inconsistent: (f'(b)-f'(a))/(b-a) = " + std::to_string(smooth.S) +
          " lies outside [gamma, Gamma] = [" + std::to_string(constants.bounds->gamma) + ", " +
          std::to_string(constants.bounds->Gamma) + "], so they cannot bound f''");
    }
  }
  return constants;
}

Record constants_json(const AvailableConstants& constants) {
  Record c;
  c["S"] = *constants.S;
  c["gamma"] = constants.bounds->gamma;
  c["Gamma"] = constants.bounds->Gamma;
  c["bounds_provenance"] = to_string(constants.bounds->provenance);
  c["sigma"] = *constants.sigma;
  if (constants.l2_f3) c["l2_f3"] = *constants.l2_f3;
  return c;
}

}  // namespace

Record run_integrate(const IntegrateArgs& args) {
  const RecordTimer timer;
  if (args.n.has_value() == args.tol.has_value()) {
    throw std::invalid_argument("integrate: provide exactly one of n and tol");
  }
  const Interval iv(args.a, args.b);
  const FunctionBundle bundle = resolve_bundle(args.function);
  spot_check_derivatives(bundle, iv);
  const AvailableConstants constants = gather_constants(bundle, iv, args.gamma, args.Gamma);

  Record record;
  record["command"] = "integrate";
  record["function"] = bundle.name;
  record["a"] = args.a;
  record["b"] = args.b;
  record["rule"] = args.rule;

  const std::string provenance = to_string(constants.bounds->provenance);
  auto bounds_json = [&](const std::vector<std::pair<Theorem, double>>& bounds) {
    Record list = Record::array();
    for (const auto& [theorem, value] : bounds) {
      Record entry;
      entry["theorem"] = to_string(theorem);
      entry["value"] = value;
      const bool uses_grid_bounds = theorem == Theorem::gruss_21 ||
                                    theorem == Theorem::midrange_22 ||
                                    theorem == Theorem::s_gamma_23 ||
                                    theorem == Theorem::gamma_s_23;
      entry["provenance"] = uses_grid_bounds ? provenance : "computed";
      list.push_back(std::move(entry));
    }
    return list;
  };

  if (args.tol) {
    if (args.rule != "q1") {
      throw std::invalid_argument("integrate: tolerance-driven mode supports only rule q1");
    }
    record["tol"] = *args.tol;
    const QuadratureResult result = integrate_to_tolerance(bundle, iv, *args.tol, args.max_n);
    record["n"] = result.n;
    record["value"] = result.value;
    record["converged"] = result.converged;
    record["bounds"] = bounds_json(result.bounds);
  } else {
    const Partition partition = Partition::uniform(iv, *args.n);
    record["n"] = *args.n;
    record["converged"] = true;
    if (args.rule == "q1") {
      record["value"] = q1(bundle, partition);
      record["bounds"] = bounds_json(q1_remainders(partition, constants));
    } else if (args.rule == "q2") {
      record["value"] = q2(bundle, partition, *constants.bounds);
      record["bounds"] = bounds_json({{Theorem::midrange_22, remainder_q2(partition, *constants.bounds)}});
    } else if (args.rule == "trap") {
      record["value"] = trapezoid(bundle, partition);
      record["bounds"] = Record::array();
    } else {
      throw std::invalid_argument("integrate: unknown rule '" + args.rule + "'");
    }
  }
  record["constants"] = constants_json(constants);
  record["time_ms"] = timer.elapsed_ms();
  return record;
}

Record run_point(const PointArgs& args) {
  const RecordTimer timer;
  const Interval iv(args.a, args.b);
  const double x = args.x.value_or(iv.quarter_point());
  require_eval_point(iv, x);
  const FunctionBundle bundle = resolve_bundle(args.function);
  spot_check_derivatives(bundle, iv);
  const AvailableConstants constants = gather_constants(bundle, iv, args.gamma, args.Gamma);

  const std::vector<PointEstimate> estimates = all_estimates(bundle, iv, x, constants);
  const PointEstimate best = best_estimate(bundle, iv, x, constants);

  Record record;
  record["command"] = "point";
  record["function"] = bundle.name;
  record["a"] = args.a;
  record["b"] = args.b;
  record["x"] = x;
  Record list = Record::array();
  for (const PointEstimate& e : estimates) {
    Record entry;
    entry["theorem"] = to_string(e.theorem);
    entry["value"] = e.value;
    entry["bound"] = e.bound;
    entry["best"] = e.theorem == best.theorem;
    list.push_back(std::move(entry));
  }
  record["estimates"] = std::move(list);
  record["best"] = to_string(best.theorem);
  record["constants"] = constants_json(constants);
  record["time_ms"] = timer.elapsed_ms();
  return record;
}

Record run_table1() {
  const RecordTimer timer;
  const std::vector<Table1Row> rows = reproduce_table1();
  const auto& printed = table1_printed();

  Record record;
  record["command"] = "table1";
  record["conventions"] =
      "value cells compare at 6 decimals; the printed Q columns tabulate the quarter-node sum "
      "without the derivative correction; the printed error cells are differences of the "
      "printed value cells themselves";
  Record list = Record::array();
  bool all_pass = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Table1Row& row = rows[i];
    const Table1Printed& p = printed[i];
    Record r;
    r["function"] = row.function;
    r["n"] = row.n;
    r["a"] = row.a;
    r["b"] = row.b;
    r["integral"] = row.integral;
    r["t_n"] = row.t_n;
    r["t_error"] = row.t_error;
    r["q1"] = row.q1;
    r["q2"] = row.q2;
    r["q_error"] = row.q_error;
    r["quarter"] = row.quarter;
    r["quarter_error"] = row.quarter_error;
    r["q1_q2_agree_6dp"] = row.q1_q2_agree_6dp;

    Record pr;
    pr["integral"] = p.integral;
    pr["t_n"] = p.t_value;
    pr["t_error"] = p.t_error;
    pr["q"] = p.q_value;
    pr["q_error"] = p.q_error;
    r["printed"] = std::move(pr);

    const double t_err_conv = std::abs(p.t_value - p.integral);
    const double q_err_conv = std::abs(p.q_value - p.integral);
    Record cells;
    cells["integral"] = match_6dp(row.integral, p.integral);
    cells["t_n"] = match_6dp(row.t_n, p.t_value);
    cells["t_error"] = match_sig(t_err_conv, p.t_error, p.t_error_sig);
    cells["q"] = match_6dp(row.quarter, p.q_value);
    cells["q_error"] = match_sig(q_err_conv, p.q_error, p.q_error_sig);
    bool row_pass = true;
    Record notes = Record::array();
    for (const auto& [cell, ok] : cells.items()) {
      if (!ok.get<bool>()) row_pass = false;
    }
    if (!cells["integral"].get<bool>()) {
      notes.push_back("printed reference appears truncated: computed integral is " +
                      fmt("%.7f", row.integral));
    }
    if (!cells["q_error"].get<bool>()) {
      notes.push_back("printed q error is not the difference of the printed cells (" +
                      fmt("%.3e", q_err_conv) + ")");
    }
    if (!row.q1_q2_agree_6dp) {
      notes.push_back("q1 and q2 disagree at 6 decimals (q2 uses the midrange of the "
                      "grid-estimated bounds, not the secant slope)");
    }
    r["cells"] = std::move(cells);
    r["pass"] = row_pass;
    r["notes"] = std::move(notes);
    all_pass = all_pass && row_pass;
    list.push_back(std::move(r));
  }
  record["rows"] = std::move(list);
  record["all_pass"] = all_pass;
  record["time_ms"] = timer.elapsed_ms();
  return record;
}

Record run_verify(std::uint64_t seed, int count) {
  const RecordTimer timer;
  SweepOptions options;
  options.seed = seed;
  options.count = count;
  const SweepReport report = sweep_theorems(options);

  Record record;
  record["command"] = "verify";
  record["seed"] = report.seed;
  record["count"] = report.count;
  record["checks"] = report.checks;
  record["violation_count"] = report.violations.size();
  Record violations = Record::array();
  for (const SweepViolation& v : report.violations) {
    Record entry;
    entry["function_index"] = v.function_index;
    entry["function"] = v.function;
    entry["site"] = v.site;
    entry["lhs"] = v.lhs;
    entry["bound"] = v.bound;
    violations.push_back(std::move(entry));
  }
  record["violations"] = std::move(violations);
  Record tightness;
  for (const auto& [family, stats] : report.tightness) {
    Record entry;
    entry["count"] = stats.count;
    entry["q25"] = stats.q25;
    entry["median"] = stats.median;
    entry["q75"] = stats.q75;
    entry["max"] = stats.max;
    tightness[family] = std::move(entry);
  }
  record["tightness"] = std::move(tightness);
  record["time_ms"] = timer.elapsed_ms();
  return record;
}

Record run_expect(const ExpectArgs& args) {
  const RecordTimer timer;
  const Interval iv(args.a, args.b);
  const double x = args.x.value_or(iv.quarter_point());
  require_eval_point(iv, x);
  const FunctionBundle pdf = resolve_bundle(args.pdf);
  spot_check_derivatives(pdf, iv);
  const DensityModel model(pdf, iv);
  const ExpectationBracket bracket = expectation_bracket(model, x, args.theorem);

  Record record;
  record["command"] = "expect";
  record["pdf"] = pdf.name;
  record["a"] = args.a;
  record["b"] = args.b;
  record["x"] = x;
  record["theorem"] = to_string(args.theorem);
  record["center"] = bracket.center;
  record["halfwidth"] = bracket.halfwidth;
  record["lo"] = bracket.lo();
  record["hi"] = bracket.hi();
  record["reference"] = expectation_reference(model);
  record["normalization_defect"] = model.normalization_defect();
  record["normalization_warning"] = model.normalization_warning();
  record["time_ms"] = timer.elapsed_ms();
  return record;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string render_bounds_table(const Record& bounds) {
  std::ostringstream out;
  out << "  " << pad("theorem", 14) << pad("bound", 16) << "  provenance\n";
  for (const auto& entry : bounds) {
    out << "  " << pad(entry["theorem"].get<std::string>(), 14)
        << pad(fmt("%.6e", entry["value"].get<double>()), 16) << "  "
        << entry["provenance"].get<std::string>() << "\n";
  }
  return out.str();
}

std::string render_constants(const Record& c) {
  std::ostringstream out;
  out << "constants: S=" << fmt("%.9g", c["S"].get<double>())
      << " gamma=" << fmt("%.9g", c["gamma"].get<double>())
      << " Gamma=" << fmt("%.9g", c["Gamma"].get<double>())
      << " sigma=" << fmt("%.9g", c["sigma"].get<double>());
  if (c.contains("l2_f3")) out << " l2_f3=" << fmt("%.9g", c["l2_f3"].get<double>());
  out << " (" << c["bounds_provenance"].get<std::string>() << ")\n";
  return out.str();
}

std::string render_integrate_text(const Record& r) {
  std::ostringstream out;
  out << "integrate " << r["function"].get<std::string>() << " over ["
      << fmt("%.17g", r["a"].get<double>()) << ", " << fmt("%.17g", r["b"].get<double>())
      << "] rule=" << r["rule"].get<std::string>() << " n=" << r["n"].get<int>() << "\n";
  out << "value = " << fmt("%.15g", r["value"].get<double>()) << "\n";
  if (!r["converged"].get<bool>()) out << "NOT CONVERGED at requested tolerance\n";
  if (!r["bounds"].empty()) out << "remainder bounds:\n" << render_bounds_table(r["bounds"]);
  out << render_constants(r["constants"]);
  return out.str();
}

std::string render_point_text(const Record& r) {
  std::ostringstream out;
  out << "point estimates of the mean of " << r["function"].get<std::string>() << " over ["
      << fmt("%.17g", r["a"].get<double>()) << ", " << fmt("%.17g", r["b"].get<double>())
      << "] at x=" << fmt("%.17g", r["x"].get<double>()) << "\n";
  out << "  " << pad("theorem", 14) << pad("value", 20) << pad("bound", 16) << "  best\n";
  for (const auto& e : r["estimates"]) {
    out << "  " << pad(e["theorem"].get<std::string>(), 14)
        << pad(fmt("%.12g", e["value"].get<double>()), 20)
        << pad(fmt("%.6e", e["bound"].get<double>()), 16) << "  "
        << (e["best"].get<bool>() ? "*" : "") << "\n";
  }
  out << "best: " << r["best"].get<std::string>() << "\n";
  out << render_constants(r["constants"]);
  return out.str();
}

std::string render_table1_text(const Record& r) {
  std::ostringstream out;
  out << "  " << pad("function", 22) << pad("n", 4) << pad("integral", 12) << pad("T_n", 12)
      << pad("T err", 11) << pad("Q(printed)", 12) << pad("Q err", 11) << pad("q1", 12)
      << pad("q2", 12) << "  pass\n";
  for (const auto& row : r["rows"]) {
    out << "  " << pad(row["function"].get<std::string>(), 22) << pad(std::to_string(row["n"].get<int>()), 4)
        << pad(fmt("%.6f", row["integral"].get<double>()), 12)
        << pad(fmt("%.6f", row["t_n"].get<double>()), 12)
        << pad(fmt("%.2e", row["t_error"].get<double>()), 11)
        << pad(fmt("%.6f", row["quarter"].get<double>()), 12)
        << pad(fmt("%.2e", row["quarter_error"].get<double>()), 11)
        << pad(fmt("%.6f", row["q1"].get<double>()), 12)
        << pad(fmt("%.6f", row["q2"].get<double>()), 12) << "  "
        << (row["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    for (const auto& note : row["notes"]) {
      out << "      note: " << note.get<std::string>() << "\n";
    }
  }
  out << (r["all_pass"].get<bool>() ? "all rows PASS" : "some rows FAIL") << "\n";
  return out.str();
}

std::string render_verify_text(const Record& r) {
  std::ostringstream out;
  out << "verify sweep: seed=" << r["seed"].get<std::uint64_t>()
      << " count=" << r["count"].get<int>() << " checks=" << r["checks"].get<long long>()
      << " violations=" << r["violation_count"].get<std::size_t>() << "\n";
  for (const auto& v : r["violations"]) {
    out << "  VIOLATION [" << v["function_index"].get<int>() << "] "
        << v["function"].get<std::string>() << " " << v["site"].get<std::string>()
        << " lhs=" << fmt("%.9e", v["lhs"].get<double>())
        << " bound=" << fmt("%.9e", v["bound"].get<double>()) << "\n";
  }
  out << "tightness (|error| / bound):\n";
  out << "  " << pad("family", 14) << pad("count", 8) << pad("q25", 12) << pad("median", 12)
      << pad("q75", 12) << pad("max", 12) << "\n";
  for (const auto& [family, stats] : r["tightness"].items()) {
    out << "  " << pad(family, 14) << pad(std::to_string(stats["count"].get<long long>()), 8)
        << pad(fmt("%.3e", stats["q25"].get<double>()), 12)
        << pad(fmt("%.3e", stats["median"].get<double>()), 12)
        << pad(fmt("%.3e", stats["q75"].get<double>()), 12)
        << pad(fmt("%.3e", stats["max"].get<double>()), 12) << "\n";
  }
  return out.str();
}

std::string render_expect_text(const Record& r) {
  std::ostringstream out;
  out << "expectation bracket for density " << r["pdf"].get<std::string>() << " on ["
      << fmt("%.17g", r["a"].get<double>()) << ", " << fmt("%.17g", r["b"].get<double>())
      << "] x=" << fmt("%.17g", r["x"].get<double>()) << " theorem=" << r["theorem"].get<std::string>()
      << "\n";
  out << "center    = " << fmt("%.15g", r["center"].get<double>()) << "\n";
  out << "halfwidth = " << fmt("%.15g", r["halfwidth"].get<double>()) << "\n";
  out << "bracket   = [" << fmt("%.15g", r["lo"].get<double>()) << ", "
      << fmt("%.15g", r["hi"].get<double>()) << "]\n";
  out << "reference = " << fmt("%.15g", r["reference"].get<double>()) << "\n";
  if (r["normalization_warning"].get<bool>()) {
    out << "warning: density mass off 1 by " << fmt("%.3e", r["normalization_defect"].get<double>())
        << "\n";
  }
  return out.str();
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_cell(const Record& v) {
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

std::string csv_rows(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << csv_escape(header[i]);
  }
  out << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\r\n";
  }
  return out.str();
}

}  // namespace

std::string render_text(const Record& record) {
  const std::string command = record.at("command").get<std::string>();
  if (command == "integrate") return render_integrate_text(record);
  if (command == "point") return render_point_text(record);
  if (command == "table1") return render_table1_text(record);
  if (command == "verify") return render_verify_text(record);
  if (command == "expect") return render_expect_text(record);
  throw std::invalid_argument("render_text: unknown command '" + command + "'");
}

std::string render_csv(const Record& record) {
  const std::string command = record.at("command").get<std::string>();
  if (command == "table1") {
    std::vector<std::string> header = {"function", "n",       "a",         "b",
                                       "integral", "t_n",     "t_error",   "q_printed_form",
                                       "q_printed_error",     "q1",        "q2",
                                       "q_error",  "pass",    "notes"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : record["rows"]) {
      std::string notes;
      for (const auto& note : row["notes"]) {
        if (!notes.empty()) notes += "; ";
        notes += note.get<std::string>();
      }
      rows.push_back({csv_cell(row["function"]), csv_cell(row["n"]), csv_cell(row["a"]),
                      csv_cell(row["b"]), csv_cell(row["integral"]), csv_cell(row["t_n"]),
                      csv_cell(row["t_error"]), csv_cell(row["quarter"]),
                      csv_cell(row["quarter_error"]), csv_cell(row["q1"]), csv_cell(row["q2"]),
                      csv_cell(row["q_error"]), row["pass"].get<bool>() ? "PASS" : "FAIL",
                      csv_escape(notes)});
    }
    return csv_rows(header, rows);
  }
  if (command == "point") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : record["estimates"]) {
      rows.push_back({csv_cell(record["function"]), csv_cell(record["x"]), csv_cell(e["theorem"]),
                      csv_cell(e["value"]), csv_cell(e["bound"]), csv_cell(e["best"])});
    }
    return csv_rows({"function", "x", "theorem", "value", "bound", "best"}, rows);
  }
  if (command == "integrate") {
    std::vector<std::vector<std::string>> rows;
    if (record["bounds"].empty()) {
      rows.push_back({csv_cell(record["function"]), csv_cell(record["rule"]),
                      csv_cell(record["n"]), csv_cell(record["value"]),
                      csv_cell(record["converged"]), "", "", ""});
    }
    for (const auto& bound : record["bounds"]) {
      rows.push_back({csv_cell(record["function"]), csv_cell(record["rule"]),
                      csv_cell(record["n"]), csv_cell(record["value"]),
                      csv_cell(record["converged"]), csv_cell(bound["theorem"]),
                      csv_cell(bound["value"]), csv_cell(bound["provenance"])});
    }
    return csv_rows({"function", "rule", "n", "value", "converged", "theorem", "bound",
                     "provenance"},
                    rows);
  }
  if (command == "expect") {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({csv_cell(record["pdf"]), csv_cell(record["x"]), csv_cell(record["theorem"]),
                    csv_cell(record["center"]), csv_cell(record["halfwidth"]),
                    csv_cell(record["lo"]), csv_cell(record["hi"]),
                    csv_cell(record["reference"])});
    return csv_rows({"pdf", "x", "theorem", "center", "halfwidth", "lo", "hi", "reference"},
                    rows);
  }
  if (command == "verify") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [family, stats] : record["tightness"].items()) {
      rows.push_back({csv_escape(family), csv_cell(record["seed"]), csv_cell(record["count"]),
                      csv_cell(record["violation_count"]), csv_cell(stats["count"]),
                      csv_cell(stats["q25"]), csv_cell(stats["median"]), csv_cell(stats["q75"]),
                      csv_cell(stats["max"])});
    }
    return csv_rows(
        {"family", "seed", "count", "violations", "checks", "q25", "median", "q75", "max"}, rows);
  }
  throw std::invalid_argument("render_csv: unknown command '" + command + "'");
}

double parse_endpoint(std::string_view token) {
  std::string s(token);
  // strip surrounding spaces
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  double sign = 1.0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    if (s[0] == '-') sign = -1.0;
    s.erase(s.begin());
  }
  if (s == "pi") return sign * M_PI;
  if (s == "pi/2") return sign * (M_PI / 2.0);
  if (s == "pi/4") return sign * (M_PI / 4.0);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument("endpoint '" + std::string(token) +
                                "' is not a decimal literal or pi, pi/2, pi/4");
  }
  return sign * v;
}

}  // namespace certquad
