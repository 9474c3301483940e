#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fronts/errors.hpp"
#include "fronts/interp.hpp"
#include "fronts/oracle.hpp"
#include "fronts/quadrature.hpp"
#include "fronts/reaction.hpp"
#include "fronts/roots.hpp"
#include "fronts/trial.hpp"

namespace fronts {

enum class Principle { VP1, VP2, VP4, VP4s, ZFK, AW };

inline const char* to_string(Principle p) {
  switch (p) {
    case Principle::VP1: return "VP1";
    case Principle::VP2: return "VP2";
    case Principle::VP4: return "VP4";
    case Principle::VP4s: return "VP4s";
    case Principle::ZFK: return "ZFK";
    case Principle::AW: return "AW";
  }
  return "?";
}

enum class BoundDirection { upper, lower };

struct BoundResult {
  Principle principle;
  BoundDirection direction;
  double value = 0.0;          // speed units
  double value_squared = 0.0;  // retained for VP4/VP4s
  std::string trial;
  double quad_error = 0.0;
};

namespace detail {

inline void require_monostable(const ReactionTerm& f, const char* who) {
  if (!classify(f).monostable())
    throw InvalidArgument(std::string(who) +
                          ": reaction term must be monostable");
}

/// sup over (0,1) of phi by dense grid plus golden-section refinement.
inline double grid_sup(const std::function<double(double)>& phi,
                       int n = 4096) {
  double best = -1e300;
  int best_i = 1;
  for (int i = 1; i < n; ++i) {
    const double u = static_cast<double>(i) / n;
    const double v = phi(u);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = std::max(1e-12, (best_i - 1.0) / n);
  const double hi = std::min(1.0 - 1e-12, (best_i + 1.0) / n);
  const double u_star = golden_section_max(phi, lo, hi, 1e-12);
  return std::max(best, phi(u_star));
}

}  // namespace detail

/// VP1 upper bound: sup_u (alpha'(u) + f(u)/alpha(u)), with analytic
/// limit candidates where alpha vanishes at an endpoint.
inline BoundResult vp1_upper(const ReactionTerm& f, const TrialFunction& alpha) {
  if (alpha.role != TrialRole::alpha)
    throw InvalidArgument("vp1_upper: trial must have role alpha");
  require_admissible(alpha);
  detail::require_monostable(f, "vp1_upper");

  auto phi = [&](double u) {
    return alpha.derivative(u) + f(u) / alpha.value(u);
  };
  double best = detail::grid_sup(phi);
  // u -> 0 limit: alpha ~ alpha'(0) u, so f/alpha -> f'(0)/alpha'(0).
  best = std::max(best, alpha.prime0 + f.fprime0() / alpha.prime0);
  // u -> 1 limit.
  if (alpha.vanishes_at_one()) {
    if (alpha.prime1 != 0.0)
      best = std::max(best, alpha.prime1 + f.fprime1() / alpha.prime1);
  } else {
    best = std::max(best, alpha.derivative(1.0) + 0.0);
  }

  BoundResult r;
  r.principle = Principle::VP1;
  r.direction = BoundDirection::upper;
  r.value = best;
  r.trial = alpha.description;
  r.quad_error = 0.0;
  return r;
}

/// VP2 lower bound: 2 int sqrt(f g h) / int g.
inline BoundResult vp2_lower(const ReactionTerm& f, const TrialFunction& g) {
  if (g.role != TrialRole::g)
    throw InvalidArgument("vp2_lower: trial must have role g");
  require_admissible(g);
  detail::require_monostable(f, "vp2_lower");

  // Both integrands inherit the trial's endpoint exponents: g itself,
  // and sqrt(f g h) ~ sqrt(u * u^b0 * u^(b0-1)) = u^b0 near 0 (same at 1).
  auto denom = integrate_unit_powers([&g](double u) { return g.value(u); },
                                     g.beta0, g.beta1, 1e-9);
  if (!denom.converged)
    throw NumericalFailure("vp2_lower: int g du does not converge for trial " +
                           g.description);
  auto numer = integrate_unit_powers(
      [&](double u) {
        const double prod = f(u) * g.value(u) * g.h(u);
        return prod > 0.0 ? std::sqrt(prod) : 0.0;
      },
      g.beta0, g.beta1, 1e-9);
  if (!numer.converged)
    throw NumericalFailure("vp2_lower: numerator integral does not converge");

  BoundResult r;
  r.principle = Principle::VP2;
  r.direction = BoundDirection::lower;
  r.value = 2.0 * numer.value / denom.value;
  r.trial = g.description;
  r.quad_error = std::abs(r.value) * (numer.error_estimate /
                                          std::max(numer.value, 1e-300) +
                                      denom.error_estimate /
                                          std::max(denom.value, 1e-300));
  return r;
}

/// VP4 lower bound: sqrt( 2 int f g / int g^2/h ), reported as a speed.
inline BoundResult vp4_lower(const ReactionTerm& f, const TrialFunction& g) {
  if (g.role != TrialRole::g)
    throw InvalidArgument("vp4_lower: trial must have role g");
  require_admissible(g);

  const EndpointFlags sing{.singular_lo = true, .singular_hi = true};
  auto numer = integrate([&](double u) { return f(u) * g.value(u); }, 0.0, 1.0,
                         1e-9, sing);
  if (!numer.converged)
    throw NumericalFailure("vp4_lower: int f g du does not converge");
  if (!(numer.value > 0.0))
    throw InvalidArgument(
        "vp4_lower: int f g du <= 0; choose a trial with less weight where "
        "f < 0");
  auto denom = integrate(
      [&g](double u) {
        const double hv = g.h(u);
        const double gv = g.value(u);
        return gv * gv / hv;
      },
      0.0, 1.0, 1e-9, sing);
  if (!denom.converged)
    throw NumericalFailure("vp4_lower: int g^2/h du does not converge");

  BoundResult r;
  r.principle = Principle::VP4;
  r.direction = BoundDirection::lower;
  r.value_squared = 2.0 * numer.value / denom.value;
  r.value = std::sqrt(std::max(r.value_squared, 0.0));
  r.trial = g.description;
  r.quad_error =
      0.5 * r.value *
      (numer.error_estimate / numer.value + denom.error_estimate / denom.value);
  return r;
}

/// ------------------------------------------------------------------------
/// Optimal trial functions from an oracle solution.

namespace detail {

/// Builds a tabulated decreasing trial from log-values accumulated over
/// the solution grid, with power-law endpoint extensions and an analytic
/// h = -g' supplied by the caller via rate(u) = -g'/g.
inline TrialFunction tabulated_g_from_rate(
    const PhasePlaneSolution& sol, const std::function<double(double)>& rate,
    double beta0, double beta1, const std::string& description) {
  const auto& us = sol.u_grid;
  std::vector<double> ln_g(us.size(), 0.0);
  for (std::size_t i = 1; i < us.size(); ++i)
    ln_g[i] = ln_g[i - 1] - gauss7(rate, us[i - 1], us[i]);
  // Gauge: g(1/2) = 1.
  const std::size_t i_half = static_cast<std::size_t>(
      std::lower_bound(us.begin(), us.end(), 0.5) - us.begin());
  double ln_at_half = ln_g[i_half];
  if (us[i_half] != 0.5 && i_half > 0) {
    ln_at_half = ln_g[i_half] + gauss7(rate, 0.5, us[i_half]);
  }
  for (auto& v : ln_g) v -= ln_at_half;

  auto interp = std::make_shared<Pchip>(us, ln_g);
  const double u_min = us.front(), u_max = us.back();
  const double g_min_edge = std::exp(ln_g.front());
  const double g_max_edge = std::exp(ln_g.back());

  auto value = [interp, u_min, u_max, g_min_edge, g_max_edge, beta0,
                beta1](double u) {
    if (u < u_min) return g_min_edge * std::pow(u / u_min, beta0);
    if (u > u_max)
      return g_max_edge * std::pow((1.0 - u) / (1.0 - u_max), beta1);
    return std::exp((*interp)(u));
  };
  auto rate_ext = [rate, u_min, u_max, beta0, beta1](double u) {
    // -g'/g with the same power-law continuation
    if (u < u_min) return -beta0 / u;
    if (u > u_max) return beta1 / (1.0 - u);
    return rate(u);
  };

  TrialFunction t;
  t.role = TrialRole::g;
  t.repr = TrialRepr::tabulated;
  t.description = description;
  t.value = value;
  t.derivative = [value, rate_ext](double u) { return -value(u) * rate_ext(u); };
  t.beta0 = beta0;
  t.beta1 = beta1;
  return t;
}

}  // namespace detail

/// The phase-space optimizer g-hat with g'/g = -c/p (equivalently
/// g(u(z)) = e^{cz}); attains VP4 when the decay branch is steep.
inline TrialFunction optimal_trial(const PhasePlaneSolution& sol) {
  for (double pv : sol.p)
    if (!(pv > 0.0))
      throw InvalidArgument("optimal_trial: p must be positive on the grid");
  const double lambda = sol.origin_slope;
  const double beta0 = -sol.c / lambda;
  const double beta1 = sol.c / sol.mu1;
  auto rate = [&sol](double u) { return sol.c / sol.p_at(u); };
  return detail::tabulated_g_from_rate(sol, rate, beta0, beta1,
                                       "ghat(c/p) from oracle");
}

/// The VP2 maximizer, with g'/g = -f/p^2. Unlike the phase-space g-hat,
/// its integral int_0^1 g du converges for monostable terms (the endpoint
/// exponent is -lambda_-/lambda_+ > -1), so the VP2 ratio is well defined
/// and equals the oracle speed at the exact solution.
inline TrialFunction optimal_trial_vp2(const PhasePlaneSolution& sol) {
  for (double pv : sol.p)
    if (!(pv > 0.0))
      throw InvalidArgument("optimal_trial_vp2: p must be positive on grid");
  const double lambda = sol.origin_slope;
  const double beta0 = -sol.reaction.fprime0() / (lambda * lambda);
  const double beta1 = -sol.reaction.fprime1() / (sol.mu1 * sol.mu1);
  auto rate = [&sol](double u) {
    const double pv = sol.p_at(u);
    return sol.reaction(u) / (pv * pv);
  };
  return detail::tabulated_g_from_rate(sol, rate, beta0, beta1,
                                       "ghat2(f/p^2) from oracle");
}

/// Interpolated oracle trajectory packaged as a VP1 trial alpha = p(u).
inline TrialFunction alpha_from_solution(const PhasePlaneSolution& sol) {
  auto solp = std::make_shared<PhasePlaneSolution>(sol);
  TrialFunction t;
  t.role = TrialRole::alpha;
  t.repr = TrialRepr::tabulated;
  t.description = "alpha=p(u) from oracle";
  t.value = [solp](double u) { return solp->p_at(u); };
  const double h_d = 1e-7;
  t.derivative = [solp, h_d](double u) {
    const double lo = std::max(u - h_d, 1e-12);
    const double hi = std::min(u + h_d, 1.0 - 1e-12);
    return (solp->p_at(hi) - solp->p_at(lo)) / (hi - lo);
  };
  t.beta0 = 1.0;
  t.beta1 = 1.0;
  t.prime0 = sol.origin_slope;
  t.prime1 = -sol.mu1;
  return t;
}

/// ------------------------------------------------------------------------
/// s-variable (VP4s) and xi-variable (VP5) forms.

/// A monotone profile u(s) on (0, infinity) with u(0)=0, u(inf)=1, and its
/// derivative.
struct SProfile {
  std::function<double(double)> u;
  std::function<double(double)> du_ds;
  std::string description;
};

/// The s-image of a decreasing trial with g(1) = 0 under s = 1/g(u).
inline SProfile s_profile_from_trial(const TrialFunction& g) {
  if (g.role != TrialRole::g)
    throw InvalidArgument("s_profile_from_trial: role must be g");
  if (!g.vanishes_at_one())
    throw InvalidArgument(
        "s_profile_from_trial: requires g(1) = 0 (endpoint exponent > 0)");
  auto trial = std::make_shared<TrialFunction>(g);
  auto invert = [trial](double s) -> double {
    // Solve g(u) = 1/s for u in (0,1), g strictly decreasing.  Bisect in
    // x = logit(u) so the result carries relative precision near both
    // endpoints (u can be astronomically small for extreme s).
    const double target = 1.0 / s;
    auto u_of = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    double lo = -700.0, hi = 36.0;
    if (trial->value(u_of(lo)) <= target) return 0.0;
    if (trial->value(u_of(hi)) >= target) return u_of(hi);
    for (int it = 0; it < 120 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (trial->value(u_of(mid)) > target)
        lo = mid;
      else
        hi = mid;
    }
    return u_of(0.5 * (lo + hi));
  };
  SProfile sp;
  sp.description = "s-image of " + g.description;
  sp.u = invert;
  sp.du_ds = [trial, invert](double s) {
    const double u = invert(s);
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double val = trial->value(u);
    return val * val / trial->h(u);
  };
  return sp;
}

/// VP4 in the independent variable s = 1/g: the speed-squared candidate
///   2 int_0^inf V(u(s))/s^2 ds / int_0^inf (du/ds)^2 ds.
/// `restore_factor2` selects the corrected constant; the printed form
/// without the factor 2 is kept available for regression comparison.
inline double vp4s_value(const ReactionTerm& f, const SProfile& profile,
                         bool restore_factor2 = true) {
  auto num = integrate_semi_infinite(
      [&](double s) { return f.V(profile.u(s)) / (s * s); }, 1e-9);
  if (!num.converged)
    throw NumericalFailure("vp4s_value: potential integral does not converge");
  auto den = integrate_semi_infinite(
      [&](double s) {
        const double d = profile.du_ds(s);
        return d * d;
      },
      1e-9);
  if (!den.converged || !(den.value > 0.0))
    throw NumericalFailure("vp4s_value: derivative integral does not converge");
  const double factor = restore_factor2 ? 2.0 : 1.0;
  return factor * num.value / den.value;
}

/// Rosen's action functional Lambda[u] = int (1/2)(du/dxi)^2 / int V/xi^2.
/// Reciprocal of the (factor-2 corrected) s-form by construction; the two
/// share the same pair of integrals.
inline double vp5_action(const ReactionTerm& f, const SProfile& profile) {
  return 1.0 / vp4s_value(f, profile, true);
}

/// ------------------------------------------------------------------------
/// Coordinate-space functionals (VP3 and the X_c ratio).

struct WeightedIntegrals {
  double kinetic = 0.0;    // int e^{cz} u_z^2/2 dz, tails included
  double potential = 0.0;  // int e^{cz} V(u(z)) dz, tails included
  double tail_fraction = 0.0;
  bool tail_flagged = false;  // tail correction exceeded 1% of an integral
};

/// Evaluates both weighted integrals over the truncated profile with
/// closed-form exponential tail corrections from the decay rates.
inline WeightedIntegrals weighted_integrals(const ReactionTerm& f,
                                            const FrontProfile& profile,
                                            double c) {
  if (!(c > 0.0)) throw InvalidArgument("weighted_integrals: c > 0");
  const double lambda = profile.lambda_right;
  if (!(c < 2.0 * lambda * 0.9999))
    throw InvalidArgument(
        "weighted integrand diverges: c >= 2 * decay rate of u_z at z -> "
        "+inf");

  // Interpolants of u and u_z against z.
  Pchip uz_of_z(profile.z_grid, profile.uz);
  const auto& u_of_z = profile.u_of_z;

  auto kin = [&](double z) {
    const double uz = uz_of_z(z);
    return std::exp(c * z) * 0.5 * uz * uz;
  };
  auto pot = [&](double z) {
    return std::exp(c * z) * f.V(u_of_z(z));
  };
  double K = 0.0, P = 0.0;
  for (std::size_t i = 1; i < profile.z_grid.size(); ++i) {
    K += gauss7(kin, profile.z_grid[i - 1], profile.z_grid[i]);
    P += gauss7(pot, profile.z_grid[i - 1], profile.z_grid[i]);
  }

  const double delta = profile.delta;
  const double z_max = profile.z_grid.back();   // u = delta
  const double z_min = profile.z_grid.front();  // u = 1 - delta

  // Right tail, u ~ delta e^{-lambda (z - z_max)}.
  const double wR = std::exp(c * z_max);
  const double K_tail_R =
      wR * 0.5 * lambda * lambda * delta * delta / (2.0 * lambda - c);
  const double V_delta = f.V(delta);
  double P_tail_R = 0.0;
  if (V_delta > 0.0) {
    const double kappa = delta * f(delta) / V_delta;  // local power of V
    if (!(kappa * lambda > c))
      throw InvalidArgument(
          "weighted integrand diverges: potential tail decays too slowly");
    P_tail_R = wR * V_delta / (kappa * lambda - c);
  }

  // Left tail, 1-u ~ delta e^{mu1 (z - z_min)}, V -> V(1).
  const double mu1 = profile.mu1;
  const double wL = std::exp(c * z_min);
  const double K_tail_L =
      wL * 0.5 * mu1 * mu1 * delta * delta / (c + 2.0 * mu1);
  const double V1 = f.V(1.0);
  const double P_tail_L =
      wL * (V1 / c - (V1 - f.V(1.0 - delta)) / (c + 2.0 * mu1));

  WeightedIntegrals w;
  w.kinetic = K + K_tail_R + K_tail_L;
  w.potential = P + P_tail_R + P_tail_L;
  const double tails =
      std::abs(K_tail_R) + std::abs(K_tail_L) + std::abs(P_tail_R) +
      std::abs(P_tail_L);
  w.tail_fraction =
      tails / std::max(std::abs(w.kinetic) + std::abs(w.potential), 1e-300);
  w.tail_flagged = w.tail_fraction > 0.01;
  return w;
}

/// Phi_c[u] = int e^{cz} ( u_z^2/2 - V(u) ) dz.
inline double vp3_functional(const ReactionTerm& f, const FrontProfile& profile,
                             double c) {
  const auto w = weighted_integrals(f, profile, c);
  return w.kinetic - w.potential;
}

/// X_c = int e^{cz} V dz / int e^{cz} u_z^2/2 dz.
inline double xc_ratio(const ReactionTerm& f, const FrontProfile& profile,
                       double c) {
  const auto w = weighted_integrals(f, profile, c);
  return w.potential / w.kinetic;
}

}  // namespace fronts
