#include "certquad/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "certquad/parallel.hpp"

namespace certquad {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Odd-indexed abscissae are the Gauss points.
constexpr std::array<double, 8> kAbscissae = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b;
  double value;  // Kronrod estimate
  double err;    // |Kronrod - Gauss|
};

struct PanelLess {
  bool operator()(const Panel& p, const Panel& q) const { return p.err < q.err; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double offset = half * kAbscissae[j];
    const double fsum = f(center - offset) + f(center + offset);
    kronrod += kKronrodWeights[j] * fsum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{a, b, kronrod, std::abs(kronrod - gauss)};
}

constexpr long long kPanelBudget = 1'000'000;

ReferenceIntegral integrate_adaptive(const std::function<double(double)>& f,
                                     std::span<const double> edges, double tol) {
  std::priority_queue<Panel, std::vector<Panel>, PanelLess> queue;
  long long evaluations = 0;
  double total_err = 0.0;

  auto push = [&](double a, double b) {
    Panel p = evaluate_panel(f, a, b);
    evaluations += 15;
    total_err += p.err;
    queue.push(p);
  };

  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    // Two panels per smooth piece so the first error estimate is not an
    // accidental zero of a symmetric integrand.
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    push(edges[i], mid);
    push(mid, edges[i + 1]);
  }

  while (total_err > tol) {
    if (static_cast<long long>(queue.size()) >= kPanelBudget) {
      throw NonConvergenceError("reference integration: panel budget exhausted (error estimate " +
                                std::to_string(total_err) + " > tol " + std::to_string(tol) + ")");
    }
    Panel worst = queue.top();
    const double width = worst.b - worst.a;
    const double scale = std::abs(worst.a) + std::abs(worst.b) + 1.0;
    if (width <= 8.0 * std::numeric_limits<double>::epsilon() * scale) {
      throw NonConvergenceError("reference integration stalled on panel of width " +
                                std::to_string(width));
    }
    queue.pop();
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    push(worst.a, mid);
    push(mid, worst.b);
  }

  std::vector<double> values;
  std::vector<double> errs;
  values.reserve(queue.size());
  errs.reserve(queue.size());
  while (!queue.empty()) {
    values.push_back(queue.top().value);
    errs.push_back(queue.top().err);
    queue.pop();
  }
  return ReferenceIntegral{pairwise_sum(values), pairwise_sum(errs), evaluations};
}

}  // namespace

ReferenceIntegral reference_integral(const std::function<double(double)>& f, const Interval& iv,
                                     double tol) {
  if (!(tol >= 1e-13)) throw std::invalid_argument("reference_integral: tol must be >= 1e-13");
  const std::array<double, 2> edges = {iv.a(), iv.b()};
  return integrate_adaptive(f, edges, tol);
}

ReferenceIntegral reference_integral_split(const std::function<double(double)>& f,
                                           const Interval& iv,
                                           std::span<const double> interior_breaks, double tol) {
  if (!(tol >= 1e-13)) throw std::invalid_argument("reference_integral: tol must be >= 1e-13");
  std::vector<double> edges;
  edges.push_back(iv.a());
  for (double t : interior_breaks) {
    if (t > edges.back() && t < iv.b()) edges.push_back(t);
  }
  edges.push_back(iv.b());
  return integrate_adaptive(f, edges, tol);
}

}  // namespace certquad
