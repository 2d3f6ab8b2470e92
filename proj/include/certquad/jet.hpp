#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace certquad {

/// Raised when an evaluation leaves a function's natural domain
/// (log of a nonpositive value, division by zero, ...).
class EvalDomainError : public std::domain_error {
 public:
  EvalDomainError(const std::string& node, const std::string& what)
      : std::domain_error(node + ": " + what), node_(node) {}
  const std::string& node() const { return node_; }

 private:
  std::string node_;
};

/// Value of a function together with its first three derivatives at a point.
/// Arithmetic propagates derivatives by the truncated Taylor composition
/// rules, e.g. (fg)''' = f'''g + 3f''g' + 3f'g'' + fg'''.
struct Jet3 {
  double v0 = 0.0;  // f(x)
  double v1 = 0.0;  // f'(x)
  double v2 = 0.0;  // f''(x)
  double v3 = 0.0;  // f'''(x)

  static Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
  static Jet3 variable(double x) { return {x, 1.0, 0.0, 0.0}; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.v0 + b.v0, a.v1 + b.v1, a.v2 + b.v2, a.v3 + b.v3};
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.v0 - b.v0, a.v1 - b.v1, a.v2 - b.v2, a.v3 - b.v3};
}

inline Jet3 operator-(const Jet3& a) { return {-a.v0, -a.v1, -a.v2, -a.v3}; }

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.v0 * b.v0,
          a.v1 * b.v0 + a.v0 * b.v1,
          a.v2 * b.v0 + 2.0 * a.v1 * b.v1 + a.v0 * b.v2,
          a.v3 * b.v0 + 3.0 * a.v2 * b.v1 + 3.0 * a.v1 * b.v2 + a.v0 * b.v3};
}

inline Jet3 operator*(double c, const Jet3& a) { return {c * a.v0, c * a.v1, c * a.v2, c * a.v3}; }
inline Jet3 operator*(const Jet3& a, double c) { return c * a; }

/// Chain rule for g(u) given the first three derivatives of g at u.v0.
inline Jet3 jet_compose(const Jet3& u, double g0, double g1, double g2, double g3) {
  return {g0,
          g1 * u.v1,
          g2 * u.v1 * u.v1 + g1 * u.v2,
          g3 * u.v1 * u.v1 * u.v1 + 3.0 * g2 * u.v1 * u.v2 + g1 * u.v3};
}

inline Jet3 jet_reciprocal(const Jet3& u) {
  if (u.v0 == 0.0) throw EvalDomainError("div", "division by zero");
  const double r = 1.0 / u.v0;
  return jet_compose(u, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * jet_reciprocal(b); }

inline Jet3 jet_sin(const Jet3& u) {
  const double s = std::sin(u.v0), c = std::cos(u.v0);
  return jet_compose(u, s, c, -s, -c);
}

inline Jet3 jet_cos(const Jet3& u) {
  const double s = std::sin(u.v0), c = std::cos(u.v0);
  return jet_compose(u, c, -s, -c, s);
}

// tan propagated as sin/cos so the quotient rule carries the derivatives.
inline Jet3 jet_tan(const Jet3& u) {
  const Jet3 c = jet_cos(u);
  if (c.v0 == 0.0) throw EvalDomainError("tan", "pole at odd multiple of pi/2");
  return jet_sin(u) / c;
}

inline Jet3 jet_exp(const Jet3& u) {
  const double e = std::exp(u.v0);
  return jet_compose(u, e, e, e, e);
}

inline Jet3 jet_log(const Jet3& u) {
  if (!(u.v0 > 0.0)) throw EvalDomainError("ln", "argument " + std::to_string(u.v0) + " not positive");
  const double r = 1.0 / u.v0;
  return jet_compose(u, std::log(u.v0), r, -r * r, 2.0 * r * r * r);
}

inline Jet3 jet_sqrt(const Jet3& u) {
  if (u.v0 < 0.0) throw EvalDomainError("sqrt", "argument " + std::to_string(u.v0) + " negative");
  if (u.v0 == 0.0) throw EvalDomainError("sqrt", "derivative singular at 0");
  const double s = std::sqrt(u.v0);
  return jet_compose(u, s, 0.5 / s, -0.25 / (u.v0 * s), 0.375 / (u.v0 * u.v0 * s));
}

/// Integer power by repeated jet multiplication; negative n via reciprocal.
inline Jet3 jet_pow_int(const Jet3& u, long long n) {
  if (n < 0) return jet_reciprocal(jet_pow_int(u, -n));
  Jet3 result = Jet3::constant(1.0);
  Jet3 base = u;
  for (long long k = n; k > 0; k >>= 1) {
    if (k & 1) result = result * base;
    base = base * base;
  }
  return result;
}

/// Real power u^c = exp(c ln u); requires u > 0.
inline Jet3 jet_pow_real(const Jet3& u, double c) {
  if (!(u.v0 > 0.0)) {
    throw EvalDomainError("pow", "base " + std::to_string(u.v0) +
                                     " not positive for non-integer exponent");
  }
  return jet_exp(Jet3::constant(c) * jet_log(u));
}

}  // namespace certquad
