#pragma once

#include <cmath>
#include <functional>

#include "fronts/errors.hpp"

namespace fronts {

/// Bisection on a sign-valued (or boolean) predicate. Returns the bracket
/// midpoint once the bracket width is <= x_tol.
inline double bisect(const std::function<double(double)>& s, double lo,
                     double hi, double x_tol) {
  if (!(lo < hi)) throw InvalidArgument("bisect: requires lo < hi");
  double slo = s(lo), shi = s(hi);
  if (slo == 0.0) return lo;
  if (shi == 0.0) return hi;
  if ((slo > 0) == (shi > 0))
    throw InvalidArgument("bisect: no sign change in initial bracket");
  while (hi - lo > x_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;  // double precision exhausted
    const double sm = s(mid);
    if (sm == 0.0) return mid;
    if ((sm > 0) == (slo > 0)) {
      lo = mid;
      slo = sm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Golden-section search for the maximizer of phi on [lo, hi].
inline double golden_section_max(const std::function<double(double)>& phi,
                                 double lo, double hi, double x_tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = phi(c), fd = phi(d);
  while (b - a > x_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = phi(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace fronts
