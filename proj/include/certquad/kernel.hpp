#pragma once

#include "certquad/function_model.hpp"
#include "certquad/interval.hpp"

namespace certquad {

// Piecewise quadratic kernel whose weighted integral against f'' equals the
// error of the symmetric two-point estimator. All closed-form bounds in this
// library are moments of it. The estimator parameter x ranges over
// [a, (a+b)/2]; breakpoints sit at t = x and t = a+b-x.

/// K(x,t): (t-a)^2/2 on [a,x], (t-(a+b)/2)^2/2 on (x, a+b-x], (t-b)^2/2 after.
/// Point evaluations at the two breakpoints use the left piece's closure.
double kernel_value(const Interval& iv, double x, double t);

/// m(x) = (x-(3a+b)/4)^2/2 + (b-a)^2/96, the mean of K(x,.) over [a,b].
double kernel_first_moment(const Interval& iv, double x);

/// max of K(x,.) over [a,b]: ((b-a)/4 + |x-(3a+b)/4|)^2 / 2.
double kernel_sup(const Interval& iv, double x);

/// c(x) = (b-a)^2/48 + (b-a)/4 * |x-(3a+b)/4|, the max of |K(x,.) - m(x)|.
double kernel_centered_sup(const Interval& iv, double x);

/// integral of (K(x,.) - m(x))^2 over [a,b]:
/// (a+b-2x)^5/320 + (x-a)^5/10 - (b-a) m(x)^2. Nonnegative; tiny negative
/// rounding residue is clamped, anything materially negative is a bug.
double kernel_centered_l2sq(const Interval& iv, double x);

/// Right-hand side of the kernel identity:
/// ref_mean - [f(x)+f(a+b-x)]/2 + (x-(3a+b)/4) [f'(x)-f'(a+b-x)]/2,
/// which equals the mean of K(x,.) f'' when ref_mean is the mean of f.
double identity_rhs(const FunctionBundle& bundle, const Interval& iv, double x, double ref_mean);

}  // namespace certquad
