#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "certquad/point_estimates.hpp"

namespace certquad {

/// Structured command result. Key order is fixed so text and CSV renderings
/// are functions of the JSON alone and survive a dump/parse round trip.
using Record = nlohmann::ordered_json;

struct IntegrateArgs {
  std::string function;
  double a = 0.0;
  double b = 1.0;
  std::optional<int> n;
  std::optional<double> tol;
  std::string rule = "q1";
  int max_n = 1 << 20;          // cap for the tolerance-driven doubling
  std::optional<double> gamma;  // user-supplied second-derivative bounds
  std::optional<double> Gamma;
};

Record run_integrate(const IntegrateArgs& args);

struct PointArgs {
  std::string function;
  double a = 0.0;
  double b = 1.0;
  std::optional<double> x;  // default: quarter point
  std::optional<double> gamma;
  std::optional<double> Gamma;
};

Record run_point(const PointArgs& args);

Record run_table1();

Record run_verify(std::uint64_t seed, int count);

struct ExpectArgs {
  std::string pdf;
  double a = 0.0;
  double b = 1.0;
  std::optional<double> x;
  Theorem theorem = Theorem::gruss_21;
};

Record run_expect(const ExpectArgs& args);

/// Fixed-width text rendering of any record produced above.
std::string render_text(const Record& record);

/// RFC 4180 CSV rendering.
std::string render_csv(const Record& record);

/// Interval endpoints: decimal literals or the exact tokens pi, pi/2, pi/4
/// (optionally negated).
double parse_endpoint(std::string_view token);

}  // namespace certquad
