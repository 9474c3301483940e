#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "fronts/errors.hpp"

namespace fronts {

struct OdePoint {
  double x;
  double y;
};

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double x_tol = 1e-9;      // stop-location tolerance
  int max_steps = 200000;
  double initial_step = 0.0;  // 0: choose automatically
};

struct OdeResult {
  std::vector<OdePoint> steps;   // accepted step endpoints, including x0
  std::vector<OdePoint> dense;   // dense output at requested abscissae
  bool reached_end = false;
  bool stopped = false;          // stop predicate triggered
  bool step_underflow = false;
  OdePoint last{0.0, 0.0};       // final state (stop point if stopped)
};

/// Adaptive Dormand-Prince 5(4) for a scalar ODE dy/dx = rhs(x, y).
/// Supports backward integration (x1 < x0), a stop predicate located to
/// x_tol on cubic Hermite dense output, and dense sampling at caller
/// abscissae (which must be ordered in the direction of integration).
inline OdeResult ode_solve(const std::function<double(double, double)>& rhs,
                           double x0, double y0, double x1,
                           const OdeOptions& opts = {},
                           const std::function<bool(double, double)>& stop = {},
                           const std::vector<double>& dense_at = {}) {
  // Dormand-Prince coefficients.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeResult res;
  const double dir = (x1 >= x0) ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  if (span == 0.0) {
    res.reached_end = true;
    res.last = {x0, y0};
    res.steps.push_back(res.last);
    return res;
  }

  double x = x0, y = y0;
  double f = rhs(x, y);
  double h = opts.initial_step > 0 ? opts.initial_step * dir
                                   : dir * std::min(1e-3 * span + 1e-12, span);

  res.steps.push_back({x, y});
  std::size_t dense_idx = 0;
  auto record_dense_through = [&](double xa, double ya, double fa, double xb,
                                  double yb, double fb) {
    const double hh = xb - xa;
    while (dense_idx < dense_at.size() &&
           (dense_at[dense_idx] - xb) * dir <= 1e-300 &&
           (dense_at[dense_idx] - xa) * dir >= -1e-300) {
      const double t = (dense_at[dense_idx] - xa) / hh;
      const double t2 = t * t, t3 = t2 * t;
      const double v = (2 * t3 - 3 * t2 + 1) * ya + (t3 - 2 * t2 + t) * hh * fa +
                       (-2 * t3 + 3 * t2) * yb + (t3 - t2) * hh * fb;
      res.dense.push_back({dense_at[dense_idx], v});
      ++dense_idx;
    }
  };

  auto hermite = [](double xa, double ya, double fa, double xb, double yb,
                    double fb, double xq) {
    const double hh = xb - xa;
    const double t = (xq - xa) / hh;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ya + (t3 - 2 * t2 + t) * hh * fa +
           (-2 * t3 + 3 * t2) * yb + (t3 - t2) * hh * fb;
  };

  for (int step = 0; step < opts.max_steps; ++step) {
    // Reaching within rounding distance of x1 counts as arrival; the
    // underflow test below must only fire for genuine step collapse.
    if ((x - x1) * dir >= -1e-14 * std::max(1.0, std::abs(x))) {
      res.reached_end = true;
      y += (x1 - x) * f;
      res.last = {x1, y};
      return res;
    }
    if (std::abs(h) > std::abs(x1 - x)) h = x1 - x;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x))) {
      res.step_underflow = true;
      res.last = {x, y};
      return res;
    }

    const double k1 = f;
    const double k2 = rhs(x + c2 * h, y + h * (a21 * k1));
    const double k3 = rhs(x + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const double k4 = rhs(x + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 =
        rhs(x + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = rhs(
        x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double ynew =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = rhs(x + h, ynew);
    const double err_raw =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sc =
        opts.abs_tol + opts.rel_tol * std::max(std::abs(y), std::abs(ynew));
    const double err = std::abs(err_raw) / sc;

    if (!std::isfinite(ynew) || !std::isfinite(err)) {
      h *= 0.25;
      continue;
    }
    if (err <= 1.0) {
      const double xnew = x + h;
      record_dense_through(x, y, k1, xnew, ynew, k7);
      if (stop && stop(xnew, ynew)) {
        // Locate the first point where the predicate turns true.
        double lo = 0.0, hi = 1.0;
        while ((hi - lo) * std::abs(h) > opts.x_tol) {
          const double mid = 0.5 * (lo + hi);
          const double xm = x + mid * h;
          const double ym = hermite(x, y, k1, xnew, ynew, k7, xm);
          if (stop(xm, ym))
            hi = mid;
          else
            lo = mid;
        }
        const double xs = x + hi * h;
        const double ys = hermite(x, y, k1, xnew, ynew, k7, xs);
        res.stopped = true;
        res.last = {xs, ys};
        res.steps.push_back(res.last);
        return res;
      }
      x = xnew;
      y = ynew;
      f = k7;  // FSAL
      res.steps.push_back({x, y});
      const double fac =
          std::min(5.0, std::max(0.2, 0.9 * std::pow(err + 1e-300, -0.2)));
      h *= fac;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  throw NumericalFailure("ode_solve: max_steps exceeded");
}

}  // namespace fronts
