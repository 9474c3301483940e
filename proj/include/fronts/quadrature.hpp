#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "fronts/errors.hpp"

namespace fronts {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct EndpointFlags {
  bool singular_lo = false;
  bool singular_hi = false;
};

namespace detail {

// One tanh-sinh node: abscissa expressed as distance from the nearer
// endpoint so integrands with endpoint singularities are evaluated at
// accurately tiny arguments.
struct TsNode {
  double dist;    // distance from the endpoint on side `side` of [-1,1]
  int side;       // -1: measured from lower endpoint, +1: from upper
  double weight;  // dx/dt at this node
};

inline void ts_node(double t, TsNode& node) {
  const double y = 1.5707963267948966 * std::sinh(t);
  const double ay = std::abs(y);
  // 1 - tanh|y| = 2 e^{-2|y|} / (1 + e^{-2|y|})
  const double e = std::exp(-2.0 * ay);
  node.dist = 2.0 * e / (1.0 + e);
  node.side = (t >= 0.0) ? 1 : -1;
  const double sech = 2.0 * std::exp(-ay) / (1.0 + e);
  node.weight = 1.5707963267948966 * std::cosh(t) * sech * sech;
}

}  // namespace detail

/// Adaptive tanh-sinh (double-exponential) quadrature on [lo, hi].
///
/// Nodes cluster doubly-exponentially at both endpoints, so integrable
/// endpoint singularities (u^beta with beta > -1) converge at the same
/// rate as smooth integrands. Non-finite integrand values are dropped,
/// which is the correct limit for weight * phi -> 0 at the endpoints.
inline QuadratureResult integrate(const std::function<double(double)>& phi,
                                  double lo, double hi, double rel_tol = 1e-10,
                                  EndpointFlags flags = {},
                                  int max_evaluations = 1 << 15) {
  (void)flags;  // tanh-sinh treats both endpoints as potentially singular
  if (!(lo < hi)) throw InvalidArgument("integrate: requires lo < hi");
  if (!(rel_tol >= 1e-14 && rel_tol <= 1e-2))
    throw InvalidArgument("integrate: rel_tol outside [1e-14, 1e-2]");

  const double half = 0.5 * (hi - lo);
  const double t_max = 4.5;  // sinh(4.5) ~ 45, dist ~ 1e-62: ample

  auto eval_at = [&](const detail::TsNode& n) -> double {
    const double d = half * n.dist;
    const double x = (n.side > 0) ? hi - d : lo + d;
    const double fx = phi(x);
    if (!std::isfinite(fx)) return 0.0;
    return fx * n.weight;
  };

  QuadratureResult res;
  detail::TsNode node;

  // Level 0: h = 1.
  double h = 1.0;
  double sum = 0.0;
  {
    detail::ts_node(0.0, node);
    sum += eval_at(node);
    ++res.evaluations;
    for (int j = 1; j * h <= t_max; ++j) {
      detail::ts_node(j * h, node);
      sum += eval_at(node);
      detail::ts_node(-j * h, node);
      sum += eval_at(node);
      res.evaluations += 2;
    }
  }
  double prev = sum * h * half;
  double prev2 = std::numeric_limits<double>::quiet_NaN();

  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    // Add the new midpoint nodes (odd multiples of h).
    for (int j = 1; j * h <= t_max; j += 2) {
      detail::ts_node(j * h, node);
      sum += eval_at(node);
      detail::ts_node(-j * h, node);
      sum += eval_at(node);
      res.evaluations += 2;
    }
    const double cur = sum * h * half;
    const double diff = std::abs(cur - prev);
    const double scale = std::max(std::abs(cur), 1e-300);
    res.value = cur;
    res.error_estimate =
        std::max(diff, 4.0 * std::numeric_limits<double>::epsilon() * scale);
    if (diff <= rel_tol * scale && level >= 2) {
      res.converged = true;
      return res;
    }
    if (res.evaluations >= max_evaluations) break;
    prev2 = prev;
    prev = cur;
  }
  (void)prev2;
  res.converged = false;
  return res;
}

/// Integral over (0,1) of an integrand behaving like u^beta0 near 0 and
/// (1-u)^beta1 near 1.  Exponents approaching -1 defeat plain tanh-sinh
/// (the surviving mass hides beyond any fixed node range), so each half
/// is regularized by the substitution u = t^m with m chosen from the
/// exponent; overstating the singularity (passing a beta below the true
/// one) is harmless.
inline QuadratureResult integrate_unit_powers(
    const std::function<double(double)>& phi, double beta0, double beta1,
    double rel_tol = 1e-10, int max_evaluations = 1 << 15) {
  if (beta0 <= -1.0 || beta1 <= -1.0)
    throw InvalidArgument(
        "integrate_unit_powers: endpoint exponent <= -1 (divergent)");
  auto half_side = [&](double beta, bool at_one) {
    int m = 1;
    if (beta < 0.0)
      m = static_cast<int>(
          std::clamp(std::ceil(3.0 / (1.0 + beta)), 1.0, 50000.0));
    auto mapped = [&phi, m, at_one](double t) {
      const double d = std::pow(t, m);  // distance from the endpoint
      const double x = at_one ? 1.0 - d : d;
      return phi(x) * m * std::pow(t, m - 1);
    };
    const double upper = std::pow(0.5, 1.0 / m);
    return integrate(mapped, 0.0, upper, rel_tol,
                     {.singular_lo = true, .singular_hi = false},
                     max_evaluations / 2);
  };
  const auto a = half_side(beta0, false);
  const auto b = half_side(beta1, true);
  QuadratureResult res;
  res.value = a.value + b.value;
  res.error_estimate = a.error_estimate + b.error_estimate;
  res.evaluations = a.evaluations + b.evaluations;
  res.converged = a.converged && b.converged;
  return res;
}

/// Quadrature on (0, inf) via the rational map s = t/(1-t).
inline QuadratureResult integrate_semi_infinite(
    const std::function<double(double)>& phi, double rel_tol = 1e-10,
    int max_evaluations = 1 << 15) {
  auto mapped = [&phi](double t) {
    const double om = 1.0 - t;
    const double s = t / om;
    return phi(s) / (om * om);
  };
  return integrate(mapped, 0.0, 1.0, rel_tol,
                   {.singular_lo = true, .singular_hi = true},
                   max_evaluations);
}

/// 7-point Gauss-Legendre on [a, b]; no error estimate, used for
/// cumulative integrals over fine grids.
inline double gauss7(const std::function<double(double)>& phi, double a,
                     double b) {
  static constexpr std::array<double, 4> xs = {
      0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
  static constexpr std::array<double, 4> ws = {
      0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
      0.1294849661688697};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = ws[0] * phi(mid);
  for (int k = 1; k < 4; ++k)
    sum += ws[k] * (phi(mid + half * xs[k]) + phi(mid - half * xs[k]));
  return sum * half;
}

}  // namespace fronts
