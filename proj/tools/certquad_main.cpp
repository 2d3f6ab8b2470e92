#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "certquad/composite.hpp"
#include "certquad/expr.hpp"
#include "certquad/probability.hpp"
#include "certquad/records.hpp"
#include "certquad/reference.hpp"

namespace {

// 0 ok, 2 usage/parse/domain errors, 3 unconverged tolerance, 4 invalid density
constexpr int kExitUsage = 2;
constexpr int kExitUnconverged = 3;
constexpr int kExitInvalidDensity = 4;

struct CommonFlags {
  std::string a_text = "0";
  std::string b_text = "1";
  std::string format = "text";
};

void add_interval_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--a", flags.a_text, "left endpoint (decimal or pi, pi/2, pi/4)")->required();
  cmd->add_option("--b", flags.b_text, "right endpoint (decimal or pi, pi/2, pi/4)")->required();
}

void add_format_flag(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"json", "text", "csv"}))
      ->capture_default_str();
}

void emit(const certquad::Record& record, const std::string& format) {
  if (format == "json") {
    std::cout << record.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << certquad::render_csv(record);
  } else {
    std::cout << certquad::render_text(record);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified quadrature: integral approximations with closed-form error bounds"};
  app.require_subcommand(1);

  // integrate
  CommonFlags integrate_flags;
  certquad::IntegrateArgs integrate_args;
  std::optional<int> integrate_n;
  std::optional<double> integrate_tol;
  auto* integrate = app.add_subcommand("integrate", "composite rule over [a,b] with remainder bounds");
  integrate->add_option("--f", integrate_args.function, "expression in x, or builtin name")->required();
  add_interval_flags(integrate, integrate_flags);
  auto* n_opt = integrate->add_option("--n", integrate_n, "number of uniform subintervals");
  integrate->add_option("--tol", integrate_tol, "target remainder bound (rule q1, doubling n)")
      ->excludes(n_opt);
  integrate->add_option("--rule", integrate_args.rule, "q1, q2 or trap")
      ->check(CLI::IsMember({"q1", "q2", "trap"}))
      ->capture_default_str();
  integrate->add_option("--max-n", integrate_args.max_n, "cap for tolerance-driven doubling")
      ->capture_default_str();
  integrate->add_option("--gamma", integrate_args.gamma, "lower bound for f'' (with --Gamma)");
  integrate->add_option("--Gamma", integrate_args.Gamma, "upper bound for f'' (with --gamma)");
  add_format_flag(integrate, integrate_flags);

  // point
  CommonFlags point_flags;
  certquad::PointArgs point_args;
  auto* point = app.add_subcommand("point", "single-interval mean estimates with bounds");
  point->add_option("--f", point_args.function, "expression in x, or builtin name")->required();
  add_interval_flags(point, point_flags);
  point->add_option("--x", point_args.x, "estimator parameter in [a,(a+b)/2]; default (3a+b)/4");
  point->add_option("--gamma", point_args.gamma, "lower bound for f'' (with --Gamma)");
  point->add_option("--Gamma", point_args.Gamma, "upper bound for f'' (with --gamma)");
  add_format_flag(point, point_flags);

  // table1
  CommonFlags table_flags;
  auto* table = app.add_subcommand("table1", "recompute the reference numerical table");
  add_format_flag(table, table_flags);

  // verify
  CommonFlags verify_flags;
  std::uint64_t seed = 42;
  int count = 200;
  auto* verify = app.add_subcommand("verify", "bound-validity sweep over a seeded corpus");
  verify->add_option("--seed", seed, "corpus seed")->capture_default_str();
  verify->add_option("--count", count, "number of corpus functions")->capture_default_str();
  add_format_flag(verify, verify_flags);

  // expect
  CommonFlags expect_flags;
  certquad::ExpectArgs expect_args;
  std::string theorem_text = "gruss_21";
  auto* expect = app.add_subcommand("expect", "certified expectation bracket for a density");
  expect->add_option("--pdf", expect_args.pdf, "density expression in x")->required();
  add_interval_flags(expect, expect_flags);
  expect->add_option("--x", expect_args.x, "estimator parameter; default (3a+b)/4");
  expect->add_option("--theorem", theorem_text, "bound family tag")->capture_default_str();
  add_format_flag(expect, expect_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (integrate->parsed()) {
      integrate_args.a = certquad::parse_endpoint(integrate_flags.a_text);
      integrate_args.b = certquad::parse_endpoint(integrate_flags.b_text);
      integrate_args.n = integrate_n;
      integrate_args.tol = integrate_tol;
      const certquad::Record record = certquad::run_integrate(integrate_args);
      emit(record, integrate_flags.format);
      if (!record["converged"].get<bool>()) return kExitUnconverged;
    } else if (point->parsed()) {
      point_args.a = certquad::parse_endpoint(point_flags.a_text);
      point_args.b = certquad::parse_endpoint(point_flags.b_text);
      emit(certquad::run_point(point_args), point_flags.format);
    } else if (table->parsed()) {
      emit(certquad::run_table1(), table_flags.format);
    } else if (verify->parsed()) {
      emit(certquad::run_verify(seed, count), verify_flags.format);
    } else if (expect->parsed()) {
      expect_args.a = certquad::parse_endpoint(expect_flags.a_text);
      expect_args.b = certquad::parse_endpoint(expect_flags.b_text);
      const auto tag = certquad::theorem_from_string(theorem_text);
      if (!tag) throw std::invalid_argument("unknown theorem tag '" + theorem_text + "'");
      expect_args.theorem = *tag;
      emit(certquad::run_expect(expect_args), expect_flags.format);
    }
  } catch (const certquad::InvalidDensityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidDensity;
  } catch (const certquad::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnconverged;
  } catch (const certquad::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
