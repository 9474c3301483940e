#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fronts/errors.hpp"
#include "fronts/interp.hpp"
#include "fronts/ode.hpp"
#include "fronts/quadrature.hpp"
#include "fronts/reaction.hpp"

namespace fronts {

enum class ShootKind {
  hit_axis_p_positive,   // reached u ~ 0 with p > p_tol
  hit_p_zero_interior,   // p vanished at some u* > epsilon
  connected              // reached u ~ 0 with p <= p_tol
};

struct ShootOutcome {
  ShootKind kind;
  double terminal_u = 0.0;
  double terminal_p = 0.0;
};

enum class DecayBranch { steep, shallow, spiral, not_applicable };

inline const char* to_string(DecayBranch b) {
  switch (b) {
    case DecayBranch::steep: return "steep";
    case DecayBranch::shallow: return "shallow";
    case DecayBranch::spiral: return "spiral";
    case DecayBranch::not_applicable: return "not_applicable";
  }
  return "?";
}

/// Sampled heteroclinic trajectory p(u) of the phase-plane equation
/// p p' - c p + f = 0 at speed c, with endpoint linearization data.
struct PhasePlaneSolution {
  double c = 0.0;
  std::vector<double> u_grid;  // strictly increasing in (0,1)
  std::vector<double> p;       // positive on the grid
  double mu1 = 0.0;            // departure slope at u=1
  double lambda_minus = 0.0, lambda_plus = 0.0;  // origin slopes when real
  DecayBranch decay_branch = DecayBranch::not_applicable;
  double origin_slope = 0.0;   // observed p/u near the origin
  ReactionTerm reaction;
  ReactionClass rclass{ReactionTag::monostable_kpp, 0.0, std::nullopt};
  Pchip p_interp;

  /// p(u) with linear endpoint continuation beyond the sampled range.
  double p_at(double u) const {
    if (u <= u_grid.front())
      return p.front() * (u / u_grid.front());
    if (u >= u_grid.back())
      return p.back() * (1.0 - u) / (1.0 - u_grid.back());
    return p_interp(u);
  }
};

/// Spatial front u(z), reconstructed from p(u), gauge u(0) = 1/2.
struct FrontProfile {
  std::vector<double> z_grid;  // increasing
  std::vector<double> u;       // decreasing, in (delta, 1-delta)
  std::vector<double> uz;      // negative, uz = -p(u)
  double c = 0.0;
  double delta = 0.0;
  double lambda_right = 0.0;   // decay rate of u as z -> +inf
  double mu1 = 0.0;            // approach rate of 1-u as z -> -inf
  Pchip u_of_z;
};

namespace detail {

inline double positive_mu1(double c, double fprime1) {
  const double disc = c * c - 4.0 * fprime1;
  if (disc < 0.0)
    throw InvalidArgument(
        "oracle: c^2 - 4 f'(1) < 0; terms with f'(1) > c^2/4 are not "
        "supported");
  return 0.5 * (-c + std::sqrt(disc));
}

struct ShootTrace {
  ShootOutcome outcome;
  OdeResult ode;              // in w = p^2, u decreasing
  double start_u = 0.0, start_w = 0.0;
  double ignition_a = -1.0;   // >= 0 when the (0,a) segment is closed-form
  double p_at_a = 0.0;
};

/// Integrates w = p^2, dw/du = 2 c sqrt(w) - 2 f(u), from u = 1-eps down.
/// The w formulation stays Lipschitz-bounded through p -> 0, so zero
/// crossings in regions with f < 0 are located by the event machinery
/// instead of blowing up the stepper.
inline ShootTrace shoot_impl(const ReactionTerm& f, const ReactionClass& rc,
                             double c, double eps, double p_tol,
                             const std::vector<double>& dense_at = {}) {
  if (!(c > 0.0)) throw InvalidArgument("shoot: requires c > 0");
  if (!(eps >= 1e-10 && eps <= 1e-4))
    throw InvalidArgument("shoot: eps outside [1e-10, 1e-4]");

  ShootTrace tr;
  const double mu1 = positive_mu1(c, f.fprime1());
  tr.start_u = 1.0 - eps;
  tr.start_w = (mu1 * eps) * (mu1 * eps);

  const bool combustion = rc.tag == ReactionTag::combustion;
  const double a = combustion ? *rc.sign_change_point : -1.0;
  const double u_stop = combustion ? a : eps;

  auto rhs = [&f, c](double u, double w) {
    return 2.0 * c * std::sqrt(std::max(w, 0.0)) - 2.0 * f(u);
  };
  auto stop = [](double /*u*/, double w) { return w <= 0.0; };

  OdeOptions opts;
  opts.rel_tol = 1e-10;
  opts.abs_tol = std::min(1e-14, 1e-4 * tr.start_w);
  opts.x_tol = 1e-9;
  tr.ode = ode_solve(rhs, tr.start_u, tr.start_w, u_stop, opts, stop,
                     dense_at);

  auto& out = tr.outcome;
  if (tr.ode.stopped) {
    // w crossed zero at u* ; only possible where f <= 0.
    out.kind = ShootKind::hit_p_zero_interior;
    out.terminal_u = tr.ode.last.x;
    out.terminal_p = 0.0;
    return tr;
  }
  if (tr.ode.step_underflow) {
    // The stepper stalls only when the trajectory grazes w = 0 (the
    // sqrt(w) term is non-smooth there); a graze means the orbit fails
    // to connect, so classify it as a zero hit.
    if (std::sqrt(std::max(tr.ode.last.y, 0.0)) <= 1e3 * p_tol) {
      out.kind = ShootKind::hit_p_zero_interior;
      out.terminal_u = tr.ode.last.x;
      out.terminal_p = 0.0;
      return tr;
    }
    throw NumericalFailure("shoot: step underflow at u = " +
                           std::to_string(tr.ode.last.x));
  }

  double u_end = tr.ode.last.x;
  double p_end = std::sqrt(std::max(tr.ode.last.y, 0.0));
  if (combustion) {
    // On (0,a) where f = 0 the phase equation reads dp/du = c exactly.
    tr.ignition_a = a;
    tr.p_at_a = p_end;
    const double p0 = p_end - c * (a - eps);
    if (p0 < 0.0) {
      out.kind = ShootKind::hit_p_zero_interior;
      out.terminal_u = a - p_end / c;
      out.terminal_p = 0.0;
      return tr;
    }
    u_end = eps;
    p_end = p0;
  }
  out.terminal_u = u_end;
  out.terminal_p = p_end;
  out.kind = (p_end <= p_tol) ? ShootKind::connected
                              : ShootKind::hit_axis_p_positive;
  return tr;
}

/// Grid of u values clustered geometrically at both endpoints.
inline std::vector<double> trajectory_grid(double eps, std::size_t n_lo = 700,
                                           std::size_t n_mid = 1800,
                                           std::size_t n_hi = 700) {
  std::vector<double> g;
  g.reserve(n_lo + n_mid + n_hi + 2);
  const double lo_edge = 0.05, hi_edge = 0.95;
  const double r_lo = std::log(lo_edge / eps) / static_cast<double>(n_lo);
  for (std::size_t i = 0; i <= n_lo; ++i)
    g.push_back(eps * std::exp(r_lo * static_cast<double>(i)));
  for (std::size_t i = 1; i <= n_mid; ++i)
    g.push_back(lo_edge + (hi_edge - lo_edge) * static_cast<double>(i) /
                              static_cast<double>(n_mid));
  const double r_hi = std::log((1.0 - hi_edge) / eps) / static_cast<double>(n_hi);
  for (std::size_t i = 1; i <= n_hi; ++i)
    g.push_back(1.0 -
                (1.0 - hi_edge) * std::exp(-r_hi * static_cast<double>(i)));
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace detail

/// Classifies the phase-plane trajectory departing from (1, 0) at speed c.
inline ShootOutcome shoot(const ReactionTerm& f, double c, double eps = 1e-8,
                          double p_tol = -1.0) {
  const auto rc = classify(f);
  if (p_tol <= 0.0)
    p_tol = 1e-7 * std::max(1.0, detail::positive_mu1(c, f.fprime1()));
  return detail::shoot_impl(f, rc, c, eps, p_tol).outcome;
}

/// Finds the minimal front speed by bisection on the shooting outcome and
/// returns the converged trajectory.
inline PhasePlaneSolution minimal_speed(const ReactionTerm& f,
                                        double c_tol = 1e-6) {
  if (!(c_tol >= 1e-8)) throw InvalidArgument("minimal_speed: c_tol >= 1e-8");
  const auto rc = classify(f);
  const double eps = 1e-8;

  auto too_fast = [&](double c) {
    const double p_tol =
        1e-7 * std::max(1.0, detail::positive_mu1(c, f.fprime1()));
    return detail::shoot_impl(f, rc, c, eps, p_tol).outcome.kind ==
           ShootKind::hit_p_zero_interior;
  };
  // For monostable terms the trajectory keeps p > 0 down to u = eps at
  // every c, so the discriminator is the observed origin slope
  // sigma = p(eps)/eps: the orbit arrives along the steep direction
  // (sigma approaching lambda_plus from above) while c < c0, and falls to
  // the shallow branch once c >= c0.  The steep-direction miss is
  // amplified like eps^{lambda_minus/lambda_plus - 1}, which makes the
  // predicate boundary numerically sharp at c0.
  auto too_slow = [&](double c) {
    const double disc = c * c - 4.0 * rc.fprime0;
    const double lp = 0.5 * (c + std::sqrt(std::max(disc, 0.0)));
    const double mu1 = detail::positive_mu1(c, f.fprime1());
    const double w0 = (mu1 * eps) * (mu1 * eps);
    auto rhs = [&f, c](double u, double w) {
      return 2.0 * c * std::sqrt(std::max(w, 0.0)) - 2.0 * f(u);
    };
    // Below-speed orbits stay above the steep ray p = lambda_plus u, so
    // dropping under half of it proves the orbit is on the shallow
    // branch: verdict "fast enough" is already decided.  Exiting there
    // also avoids the stiffness of riding the shallow branch (severe
    // when f'(0) = 0, where w ~ u^4).
    auto stop = [lp](double u, double w) {
      return u < 0.05 && w < 0.25 * (lp * u) * (lp * u);
    };
    OdeOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = std::min(1e-14, 1e-4 * w0);
    opts.x_tol = 1e-9;
    const auto r = ode_solve(rhs, 1.0 - eps, w0, eps, opts, stop);
    double u_end, w_end;
    if (r.stopped || r.reached_end) {
      u_end = r.last.x;
      w_end = r.last.y;
    } else {
      // Step collapse can only happen grazing w = 0: below-speed verdict.
      return true;
    }
    const double sigma = std::sqrt(std::max(w_end, 0.0)) / u_end;
    return sigma > lp * (1.0 + 1e-6) + 1e-9;
  };

  double c_lo, c_hi;
  std::function<bool(double)> pred;
  bool solution_on_high_side;
  const double kpp = rc.fprime0 > 0.0 ? kpp_speed(f) : 0.0;
  double c_final;
  if (rc.tag == ReactionTag::monostable_kpp) {
    // The KPP condition f <= f'(0) u makes the front pulled: the minimal
    // speed equals the linear spreading speed exactly.  Shooting cannot
    // resolve this case (the axis-hit height decays faster than any power
    // of c0 - c), so the closed form is used directly.
    c_final = kpp;
  } else if (rc.monostable()) {
    const double zfk = zfk_speed(f);
    c_lo = std::max(std::max(kpp, zfk) - 0.5, 1e-3);
    c_hi = aw_upper(f) + 0.5;
    pred = [&](double c) { return !too_slow(c); };
    solution_on_high_side = true;
  } else {
    // Unique-speed classes: too-small c reaches the axis with p > 0,
    // too-large c drives p to zero in the f <= 0 region.
    c_lo = 1e-3;
    c_hi = 1.0;
    pred = too_fast;
    solution_on_high_side = false;
  }

  if (rc.tag != ReactionTag::monostable_kpp) {
    for (int k = 0; k < 8 && pred(c_lo); ++k)
      c_lo = std::max(c_lo * 0.5, 1e-6);
    for (int k = 0; k < 8 && !pred(c_hi); ++k) c_hi *= 2.0;
    if (pred(c_lo) || !pred(c_hi))
      throw NumericalFailure(
          "minimal_speed: could not bracket the speed (predicate "
          "single-signed after expansion)");

    while (c_hi - c_lo > c_tol) {
      const double mid = 0.5 * (c_lo + c_hi);
      if (pred(mid))
        c_hi = mid;
      else
        c_lo = mid;
    }

    // Final trajectory on the side where p stays positive down to u = eps:
    // the not-too-slow side for monostable terms, the slightly-too-slow
    // side for bistable/combustion.
    c_final = solution_on_high_side ? c_hi : c_lo;
    // A general monostable term can still be pulled; the minimal speed is
    // never below the linear spreading speed.
    if (rc.monostable()) c_final = std::max(c_final, kpp);
  }
  auto grid = detail::trajectory_grid(eps);

  PhasePlaneSolution sol;
  sol.c = c_final;
  sol.reaction = f;
  sol.rclass = rc;
  sol.mu1 = detail::positive_mu1(c_final, f.fprime1());

  auto w_rhs = [&f, c_final](double u, double w) {
    return 2.0 * c_final * std::sqrt(std::max(w, 0.0)) - 2.0 * f(u);
  };
  OdeOptions traj_opts;
  traj_opts.rel_tol = 1e-10;
  traj_opts.abs_tol = 1e-20;
  traj_opts.x_tol = 1e-9;

  if (rc.monostable()) {
    const double p_tol = 1e-7 * std::max(1.0, sol.mu1);
    std::vector<double> dense(grid.rbegin(), grid.rend());  // decreasing u
    const auto tr = detail::shoot_impl(f, rc, c_final, eps, p_tol, dense);
    for (auto it = tr.ode.dense.rbegin(); it != tr.ode.dense.rend(); ++it) {
      const double pv = std::sqrt(std::max(it->y, 0.0));
      if (pv <= 0.0) continue;
      sol.u_grid.push_back(it->x);
      sol.p.push_back(pv);
    }
  } else {
    // Bisection leaves c a hair off the connecting speed; a single shot
    // carries an amplified miss into the far tail.  Shoot each half from
    // its own saddle instead: forward from (1,0) down to u = 1/2 and
    // upward from the origin (along p = lambda_plus u, or the exact
    // p = c u segment of an ignition term) up to u = 1/2, so both tails
    // are clean.
    const double lp =
        0.5 * (c_final + std::sqrt(c_final * c_final - 4.0 * rc.fprime0));
    const bool combustion = rc.tag == ReactionTag::combustion;
    const double a = combustion ? *rc.sign_change_point : 0.0;

    std::vector<double> lower_dense, upper_dense;
    double u_low_start = combustion ? a : eps;
    for (double u : grid) {
      if (u < 0.5 && u > u_low_start) lower_dense.push_back(u);
      if (u >= 0.5) upper_dense.push_back(u);
    }
    std::reverse(upper_dense.begin(), upper_dense.end());

    if (combustion) {
      for (double u : grid) {
        if (u > a) break;
        sol.u_grid.push_back(u);
        sol.p.push_back(c_final * u);
      }
    }
    const double w_low0 = combustion ? (c_final * a) * (c_final * a)
                                     : (lp * eps) * (lp * eps);
    if (!combustion) {
      sol.u_grid.push_back(eps);
      sol.p.push_back(lp * eps);
    }
    const auto up = ode_solve(w_rhs, u_low_start, w_low0, 0.5, traj_opts,
                              {}, lower_dense);
    if (!up.reached_end)
      throw NumericalFailure("minimal_speed: upward trajectory pass failed");
    for (const auto& pt : up.dense) {
      const double pv = std::sqrt(std::max(pt.y, 0.0));
      if (pv > 0.0 && pt.x > sol.u_grid.back()) {
        sol.u_grid.push_back(pt.x);
        sol.p.push_back(pv);
      }
    }
    const double w_top0 = (sol.mu1 * eps) * (sol.mu1 * eps);
    const auto down =
        ode_solve(w_rhs, 1.0 - eps, w_top0, 0.5, traj_opts, {}, upper_dense);
    if (!down.reached_end)
      throw NumericalFailure("minimal_speed: downward trajectory pass failed");
    for (auto it = down.dense.rbegin(); it != down.dense.rend(); ++it) {
      const double pv = std::sqrt(std::max(it->y, 0.0));
      if (pv > 0.0 && it->x > sol.u_grid.back()) {
        sol.u_grid.push_back(it->x);
        sol.p.push_back(pv);
      }
    }
  }
  if (sol.u_grid.size() < 16)
    throw NumericalFailure("minimal_speed: degenerate trajectory sample");
  sol.p_interp = Pchip(sol.u_grid, sol.p);

  // Origin linearization and decay branch.  Rounding can push the
  // discriminant a hair negative at the pulled marginal speed; clamp it.
  double disc = c_final * c_final - 4.0 * rc.fprime0;
  if (disc < 0.0 && disc > -1e-10 * std::max(1.0, c_final * c_final))
    disc = 0.0;
  sol.origin_slope = sol.p.front() / sol.u_grid.front();
  if (!rc.monostable()) {
    sol.lambda_minus = 0.5 * (c_final - std::sqrt(disc));
    sol.lambda_plus = 0.5 * (c_final + std::sqrt(disc));
    sol.decay_branch = DecayBranch::not_applicable;
  } else if (disc < 0.0) {
    sol.decay_branch = DecayBranch::spiral;
  } else {
    sol.lambda_minus = 0.5 * (c_final - std::sqrt(disc));
    sol.lambda_plus = 0.5 * (c_final + std::sqrt(disc));
    const double sep = sol.lambda_plus - sol.lambda_minus;
    const bool nearer_plus =
        std::abs(sol.origin_slope - sol.lambda_plus) <
        std::abs(sol.origin_slope - sol.lambda_minus);
    sol.decay_branch = (nearer_plus && sep > 1e-3 * std::max(1.0, c_final))
                           ? DecayBranch::steep
                           : DecayBranch::shallow;
  }
  return sol;
}

/// Maximum midpoint residual of the phase-plane equation on the grid.
inline double residual(const PhasePlaneSolution& sol) {
  if (sol.u_grid.size() < 3)
    throw InvalidArgument("residual: grid needs >= 3 points");
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < sol.u_grid.size(); ++i) {
    const double du = sol.u_grid[i + 1] - sol.u_grid[i];
    const double pm = 0.5 * (sol.p[i] + sol.p[i + 1]);
    const double dpdu = (sol.p[i + 1] - sol.p[i]) / du;
    const double um = 0.5 * (sol.u_grid[i] + sol.u_grid[i + 1]);
    worst = std::max(worst,
                     std::abs(pm * dpdu - sol.c * pm + sol.reaction(um)));
  }
  return worst;
}

/// Reconstructs the spatial profile via z(u) = -int_{1/2}^{u} ds / p(s).
inline FrontProfile front_profile(const PhasePlaneSolution& sol,
                                  double delta = 1e-6) {
  if (!(delta >= 1e-8 && delta <= 1e-3))
    throw InvalidArgument("front_profile: delta outside [1e-8, 1e-3]");
  std::vector<double> us;
  for (double u : sol.u_grid)
    if (u >= delta && u <= 1.0 - delta) us.push_back(u);
  if (us.size() < 8)
    throw NumericalFailure("front_profile: too few points after truncation");
  const bool has_half = std::any_of(us.begin(), us.end(), [](double u) {
    return std::abs(u - 0.5) < 1e-12;
  });
  if (!has_half) {
    us.push_back(0.5);
    std::sort(us.begin(), us.end());
  } else {
    // Snap the grid point to exactly 1/2 so the gauge shift is exact.
    for (double& u : us)
      if (std::abs(u - 0.5) < 1e-12) u = 0.5;
  }
  us.erase(std::unique(us.begin(), us.end(),
                       [](double a, double b) { return b - a < 1e-13; }),
           us.end());
  for (double u : us)
    if (!(sol.p_at(u) > 0.0))
      throw NumericalFailure("front_profile: p has interior zeros");

  auto inv_p = [&sol](double u) { return 1.0 / sol.p_at(u); };
  std::vector<double> cum(us.size(), 0.0);
  for (std::size_t i = 1; i < us.size(); ++i)
    cum[i] = cum[i - 1] + gauss7(inv_p, us[i - 1], us[i]);
  const std::size_t i_half = static_cast<std::size_t>(
      std::lower_bound(us.begin(), us.end(), 0.5) - us.begin());
  const double shift = cum[i_half];

  FrontProfile fp;
  fp.c = sol.c;
  fp.delta = delta;
  fp.lambda_right = sol.origin_slope;
  fp.mu1 = sol.mu1;
  // z decreases as u increases; emit in increasing z (decreasing u).
  for (std::size_t k = us.size(); k-- > 0;) {
    fp.z_grid.push_back(-(cum[k] - shift));
    fp.u.push_back(us[k]);
    fp.uz.push_back(-sol.p_at(us[k]));
  }
  fp.u_of_z = Pchip(fp.z_grid, fp.u);
  return fp;
}

}  // namespace fronts
