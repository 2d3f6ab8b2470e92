#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "certquad/kernel.hpp"
#include "certquad/reference.hpp"
#include "test_util.hpp"

using namespace certquad;
using testutil::bundle_of;

TEST_CASE("kernel_value piecewise form") {
  const Interval iv(0.0, 1.0);
  CHECK(kernel_value(iv, 0.25, 0.0) == 0.0);
  CHECK(kernel_value(iv, 0.25, 0.5) == 0.0);
  CHECK(kernel_value(iv, 0.25, 0.1) == doctest::Approx(0.005).epsilon(1e-14));
  // breakpoints take the left piece's closure
  CHECK(kernel_value(iv, 0.2, 0.2) == doctest::Approx(0.5 * 0.04).epsilon(1e-14));
  CHECK(kernel_value(iv, 0.2, 0.8) == doctest::Approx(0.5 * 0.09).epsilon(1e-14));
  CHECK(kernel_value(iv, 0.2, 0.81) == doctest::Approx(0.5 * 0.19 * 0.19).epsilon(1e-12));
}

TEST_CASE("kernel_value domain errors") {
  const Interval iv(0.0, 1.0);
  CHECK_THROWS_AS(kernel_value(iv, 0.25, -0.1), std::domain_error);
  CHECK_THROWS_AS(kernel_value(iv, 0.25, 1.1), std::domain_error);
  CHECK_THROWS_AS(kernel_value(iv, 0.6, 0.5), std::domain_error);
  CHECK_THROWS_AS(kernel_value(iv, -0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(kernel_first_moment(iv, 0.51), std::domain_error);
}

TEST_CASE("kernel boundary zeros and nonnegativity") {
  for (const Interval iv : {Interval(0.0, 1.0), Interval(-1.5, 2.25)}) {
    for (double frac : {0.0, 0.17, 0.5, 1.0}) {
      const double x = iv.a() + frac * (iv.midpoint() - iv.a());
      CHECK(kernel_value(iv, x, iv.a()) == 0.0);
      if (x > iv.a()) CHECK(kernel_value(iv, x, iv.b()) == 0.0);
      for (int k = 0; k <= 100; ++k) {
        const double t = iv.a() + iv.length() * k / 100.0;
        CHECK(kernel_value(iv, x, t) >= 0.0);
      }
    }
    // degenerate x = a: the middle piece is (a, b], so its closure rule puts
    // t = b on the middle parabola, which is also where the sup is attained
    CHECK(kernel_value(iv, iv.a(), iv.b()) ==
          doctest::Approx(kernel_sup(iv, iv.a())).epsilon(1e-15));
  }
}

TEST_CASE("kernel reflection symmetry") {
  const Interval iv(-0.75, 1.6);
  for (double frac : {0.0, 0.3, 0.77, 1.0}) {
    const double x = iv.a() + frac * (iv.midpoint() - iv.a());
    for (int k = 1; k < 60; ++k) {
      const double t = iv.a() + iv.length() * k / 60.0;
      const double lhs = kernel_value(iv, x, t);
      const double rhs = kernel_value(iv, x, iv.reflect(t));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
  }
}

TEST_CASE("kernel_first_moment closed form and examples") {
  CHECK(kernel_first_moment(Interval(0, 1), 0.25) == doctest::Approx(1.0 / 96).epsilon(1e-15));
  CHECK(kernel_first_moment(Interval(0, 1), 0.0) == doctest::Approx(1.0 / 24).epsilon(1e-15));
  CHECK(kernel_first_moment(Interval(0, 2), 0.5) == doctest::Approx(1.0 / 24).epsilon(1e-15));
}

TEST_CASE("kernel_sup examples") {
  CHECK(kernel_sup(Interval(0, 1), 0.25) == doctest::Approx(1.0 / 32).epsilon(1e-15));
  CHECK(kernel_sup(Interval(0, 1), 0.0) == doctest::Approx(1.0 / 8).epsilon(1e-15));
  CHECK(kernel_sup(Interval(0, 1), 0.5) == doctest::Approx(1.0 / 8).epsilon(1e-15));
}

TEST_CASE("kernel_centered_sup examples") {
  CHECK(kernel_centered_sup(Interval(0, 1), 0.25) == doctest::Approx(1.0 / 48).epsilon(1e-15));
  CHECK(kernel_centered_sup(Interval(0, 1), 0.0) == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(kernel_centered_sup(Interval(0, 1), 0.5) == doctest::Approx(1.0 / 12).epsilon(1e-15));
}

TEST_CASE("kernel_centered_l2sq closed form") {
  // Cross-checked against the corollary coefficients: sqrt of these values
  // reproduce 1/(48 sqrt 5) and 1/(12 sqrt 5).
  CHECK(kernel_centered_l2sq(Interval(0, 1), 0.25) ==
        doctest::Approx(1.0 / 11520).epsilon(1e-13));
  CHECK(kernel_centered_l2sq(Interval(0, 1), 0.0) == doctest::Approx(1.0 / 720).epsilon(1e-13));
  CHECK(std::sqrt(kernel_centered_l2sq(Interval(0, 1), 0.25)) ==
        doctest::Approx(1.0 / (48 * std::sqrt(5.0))).epsilon(1e-13));
  CHECK(std::sqrt(kernel_centered_l2sq(Interval(0, 1), 0.0)) ==
        doctest::Approx(1.0 / (12 * std::sqrt(5.0))).epsilon(1e-13));
  // nonnegative everywhere
  const Interval iv(-2.0, 1.5);
  for (int j = 0; j <= 20; ++j) {
    const double x = iv.a() + (iv.midpoint() - iv.a()) * j / 20.0;
    CHECK(kernel_centered_l2sq(iv, x) >= 0.0);
  }
}

TEST_CASE("kernel moments match brute-force integration") {
  testutil::Rng rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const double a = rng.in(-2.0, 2.0);
    const Interval iv(a, a + rng.in(0.4, 3.0));
    const double x = iv.a() + rng.next() * (iv.midpoint() - iv.a());

    const double numeric_mean =
        testutil::oracle_kernel_integral(iv, x, [](double) { return 1.0; }) / iv.length();
    CHECK(kernel_first_moment(iv, x) == doctest::Approx(numeric_mean).epsilon(1e-10));

    const double m = kernel_first_moment(iv, x);
    const std::array<double, 2> breaks = {x, iv.reflect(x)};
    const double numeric_l2 =
        reference_integral_split(
            [&](double t) {
              const double d = kernel_value(iv, x, t) - m;
              return d * d;
            },
            iv, breaks, 1e-12)
            .value;
    CHECK(kernel_centered_l2sq(iv, x) ==
          doctest::Approx(numeric_l2).epsilon(1e-10));

    const double grid_sup = testutil::grid_max(
        iv, 10001, [&](double t) { return kernel_value(iv, x, t); }, {x, iv.reflect(x)});
    const double closed_sup = kernel_sup(iv, x);
    CHECK(grid_sup <= closed_sup + 1e-13 * std::max(1.0, closed_sup));
    CHECK(closed_sup - grid_sup <= 1e-6 * iv.length() * iv.length());

    const double grid_centered = testutil::grid_max(
        iv, 10001, [&](double t) { return std::abs(kernel_value(iv, x, t) - m); },
        {x, iv.reflect(x)});
    const double closed_centered = kernel_centered_sup(iv, x);
    CHECK(grid_centered <= closed_centered + 1e-13 * std::max(1.0, closed_centered));
    CHECK(closed_centered - grid_centered <= 1e-6 * iv.length() * iv.length());
  }
}

TEST_CASE("identity_rhs examples") {
  const Interval unit(0.0, 1.0);
  const FunctionBundle linear = bundle_of("x");
  for (double x : {0.0, 0.2, 0.5}) {
    CHECK(std::abs(identity_rhs(linear, unit, x, 0.5)) <= 1e-15);
  }

  const FunctionBundle square = bundle_of("x^2");
  CHECK(identity_rhs(square, unit, 0.25, 1.0 / 3.0) ==
        doctest::Approx(1.0 / 48).epsilon(1e-12));

  const Interval half_pi(0.0, M_PI / 2.0);
  const FunctionBundle cosine = bundle_of("cos(x)");
  const double mean = testutil::oracle_mean(cosine, half_pi, 1e-12);
  const double x = M_PI / 8.0;
  const double lhs =
      testutil::oracle_kernel_integral(half_pi, x, cosine.f2, 1e-12) / half_pi.length();
  CHECK(identity_rhs(cosine, half_pi, x, mean) == doctest::Approx(lhs).epsilon(1e-9));
}

TEST_CASE("kernel identity holds for smooth bundles") {
  const std::vector<std::pair<std::string, Interval>> corpus = {
      {"x^3", Interval(0.0, 1.0)},
      {"x^4-2*x^2+x", Interval(-1.0, 1.5)},
      {"sin(2*x)+0.5*exp(x)", Interval(-0.5, 1.0)},
  };
  for (const auto& [text, iv] : corpus) {
    const FunctionBundle bundle = bundle_of(text);
    const double mean = testutil::oracle_mean(bundle, iv, 1e-12);
    for (int j = 0; j <= 10; ++j) {
      const double x = std::min(iv.a() + (iv.midpoint() - iv.a()) * j / 10.0, iv.midpoint());
      const double lhs =
          testutil::oracle_kernel_integral(iv, x, bundle.f2, 1e-12) / iv.length();
      const double rhs = identity_rhs(bundle, iv, x, mean);
      CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
  }
}
