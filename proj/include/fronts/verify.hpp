#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fronts/bounds.hpp"
#include "fronts/errors.hpp"
#include "fronts/oracle.hpp"
#include "fronts/quadrature.hpp"
#include "fronts/reaction.hpp"
#include "fronts/trial.hpp"

namespace fronts {

enum class CheckStatus { pass, fail, inconclusive, not_applicable };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
    case CheckStatus::not_applicable: return "not_applicable";
  }
  return "?";
}

struct CheckRecord {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::inconclusive;
  std::string detail;
};

namespace detail {

inline CheckStatus both(CheckStatus a, CheckStatus b) {
  if (a == CheckStatus::fail || b == CheckStatus::fail)
    return CheckStatus::fail;
  if (a == CheckStatus::inconclusive || b == CheckStatus::inconclusive)
    return CheckStatus::inconclusive;
  return CheckStatus::pass;
}

inline double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

/// Integral over (0,1) of an expression built from a trial.  beta0/beta1
/// bound the integrand's endpoint exponents from below (passing a value
/// more singular than the truth only costs a mild substitution).
inline QuadratureResult trial_integral(
    const std::function<double(double)>& phi, double beta0, double beta1,
    double rel_tol = 1e-10) {
  return integrate_unit_powers(phi, beta0, beta1, rel_tol);
}

}  // namespace detail

/// Certifies the two-step derivation of the upper bound from the
/// integral lower bound: with h = -g',
///   2 int sqrt(f g h) / int g  <=  int(alpha h + f g/alpha) / int g
///                              <=  sup(alpha' + f/alpha),
/// where the middle term equals int((alpha' + f/alpha) g)/int g through
/// the integration by parts int alpha h du = int alpha' g du, valid when
/// g(1) = 0 and alpha(0) = 0.  When g(1) != 0 the parts identity becomes
/// the inequality int alpha h <= int alpha' g (the boundary term
/// -alpha(1) g(1) is nonpositive) and only the inequality is checked.
inline CheckRecord check_chain_vp2_implies_vp1(const ReactionTerm& f,
                                               const TrialFunction& g,
                                               const TrialFunction& alpha) {
  detail::require_monostable(f, "check_chain_vp2_implies_vp1");
  require_admissible(g);
  require_admissible(alpha);

  CheckRecord rec;
  rec.id = "chain_vp2_implies_vp1";
  // Tabulated trials interpolate the sampled trajectory; their piecewise
  // polynomials and differenced derivatives cap the attainable quadrature
  // accuracy well above the closed-form case.
  const double qtol = (g.repr == TrialRepr::tabulated ||
                       alpha.repr == TrialRepr::tabulated)
                          ? 1e-7
                          : 1e-10;
  const auto low = vp2_lower(f, g);
  const auto high = vp1_upper(f, alpha);
  const auto denom = detail::trial_integral(
      [&](double u) { return g.value(u); }, g.beta0, g.beta1, qtol);
  // alpha*h ~ u^beta0 near 0 (alpha vanishes linearly) and (1-u)^(beta1-1)
  // near 1 (alpha(1) > 0); f*g/alpha matches or beats both exponents.
  const auto mid_num = detail::trial_integral(
      [&](double u) {
        const double a = alpha.value(u);
        return alpha.value(u) * g.h(u) + f.f(u) * g.value(u) / a;
      },
      g.beta0, g.beta1 - 1.0, qtol);
  if (!denom.converged || !mid_num.converged)
    throw NumericalFailure("check_chain_vp2_implies_vp1: quadrature failed");
  const double mid = mid_num.value / denom.value;

  const double slack_tol =
      std::max(1e-8, 100.0 * qtol) * std::max({1.0, low.value, high.value});
  rec.lhs = low.value;
  rec.rhs = high.value;
  rec.tolerance = slack_tol;
  CheckStatus order = (low.value <= mid + slack_tol &&
                       mid <= high.value + slack_tol)
                          ? CheckStatus::pass
                          : CheckStatus::fail;

  // Integration-by-parts leg.
  const auto parts_lhs = detail::trial_integral(
      [&](double u) { return alpha.value(u) * g.h(u); }, g.beta0,
      g.beta1 - 1.0, qtol);
  const auto parts_rhs = detail::trial_integral(
      [&](double u) { return alpha.derivative(u) * g.value(u); }, g.beta0,
      g.beta1, qtol);
  CheckStatus parts;
  if (g.vanishes_at_one()) {
    parts = detail::rel_gap(parts_lhs.value, parts_rhs.value) <=
                    std::max(1e-8, 100.0 * qtol)
                ? CheckStatus::pass
                : CheckStatus::fail;
  } else {
    parts = parts_lhs.value <= parts_rhs.value + slack_tol
                ? CheckStatus::pass
                : CheckStatus::fail;
  }
  rec.status = detail::both(order, parts);
  rec.detail = "middle=" + std::to_string(mid) +
               (g.vanishes_at_one() ? " parts=equality" : " parts=inequality");
  return rec;
}

/// Certifies the reverse derivation: averaging the sup-bound integrand
/// against g and applying AM-GM,
///   sup(alpha' + f/alpha) >= int((alpha' + f/alpha) g)/int g
///                         >= 2 int sqrt(f g h)/int g,
/// which requires g(1) = 0 for the parts step.
inline CheckRecord check_chain_vp1_implies_vp2(const ReactionTerm& f,
                                               const TrialFunction& alpha,
                                               const TrialFunction& g) {
  detail::require_monostable(f, "check_chain_vp1_implies_vp2");
  require_admissible(alpha);
  require_admissible(g);
  if (!g.vanishes_at_one())
    throw InvalidArgument(
        "check_chain_vp1_implies_vp2: requires g(1) = 0 (integration by "
        "parts hypothesis)");

  CheckRecord rec;
  rec.id = "chain_vp1_implies_vp2";
  const double qtol = (g.repr == TrialRepr::tabulated ||
                       alpha.repr == TrialRepr::tabulated)
                          ? 1e-7
                          : 1e-10;
  const auto high = vp1_upper(f, alpha);
  const auto low = vp2_lower(f, g);
  const auto denom = detail::trial_integral(
      [&](double u) { return g.value(u); }, g.beta0, g.beta1, qtol);
  const auto mid_num = detail::trial_integral(
      [&](double u) {
        const double a = alpha.value(u);
        return (alpha.derivative(u) + f.f(u) / a) * g.value(u);
      },
      g.beta0, g.beta1, qtol);
  if (!denom.converged || !mid_num.converged)
    throw NumericalFailure("check_chain_vp1_implies_vp2: quadrature failed");
  const double mid = mid_num.value / denom.value;

  const double slack_tol =
      std::max(1e-8, 100.0 * qtol) * std::max({1.0, low.value, high.value});
  rec.lhs = high.value;
  rec.rhs = low.value;
  rec.tolerance = slack_tol;
  rec.status = (high.value + slack_tol >= mid && mid + slack_tol >= low.value)
                   ? CheckStatus::pass
                   : CheckStatus::fail;
  rec.detail = "middle=" + std::to_string(mid);
  return rec;
}

namespace detail {

/// ghat-based checks are meaningful only when the front decays along the
/// steep branch (for monostable terms) or unconditionally for
/// bistable/combustion fronts.
inline bool ghat_applicable(const PhasePlaneSolution& sol) {
  if (!sol.rclass.monostable()) return true;
  return sol.decay_branch == DecayBranch::steep;
}

}  // namespace detail

/// Checks that the kinetic-energy integral transforms correctly between
/// the traveling-wave coordinate and the state variable:
///   int_0^1 ghat^2 / (-ghat') du  =  (1/c) int e^{cz} u_z^2 dz,
/// where ghat(u(z)) = e^{cz} (gauge fixed by ghat = 1 at the point z = 0,
/// where u = 1/2).  The two sides are computed by independent routes.
inline CheckRecord check_identity_down(const ReactionTerm& f,
                                       const PhasePlaneSolution& sol) {
  CheckRecord rec;
  rec.id = "identity_down";
  rec.tolerance = 1e-4;
  if (!detail::ghat_applicable(sol)) {
    rec.status = CheckStatus::not_applicable;
    rec.detail = "front decays along the marginal branch; e^{cz} weight "
                 "is not expressible as a function of u";
    return rec;
  }
  const auto ghat = optimal_trial(sol);
  // ghat is tabulated from the computed trajectory, so the quadrature
  // cannot do better than the interpolation error.
  const double qtol = 1e-7;
  // ghat^2 / (-ghat') ~ u^(b0+1): one power milder than ghat itself,
  // which may not be integrable on its own.
  const auto lhs = detail::trial_integral(
      [&](double u) {
        const double gv = ghat.value(u);
        return gv * gv / (-ghat.derivative(u));
      },
      ghat.beta0 + 1.0, ghat.beta1 + 1.0, qtol);
  const auto profile = front_profile(sol);
  const auto wi = weighted_integrals(f, profile, sol.c);
  rec.lhs = lhs.value;
  rec.rhs = 2.0 * wi.kinetic / sol.c;
  if (wi.tail_flagged || !lhs.converged) {
    rec.status = CheckStatus::inconclusive;
    rec.detail = "tail correction or quadrature not trustworthy";
    return rec;
  }
  rec.status = detail::rel_gap(rec.lhs, rec.rhs) <= rec.tolerance
                   ? CheckStatus::pass
                   : CheckStatus::fail;
  return rec;
}

/// Checks the companion identity for the potential integral:
///   int_0^1 f ghat du  =  c int e^{cz} V(u(z)) dz,
/// together with the intermediate integration by parts
///   -int V ghat' du = int f ghat du  (uses V(0) = 0 and ghat(1) = 0).
inline CheckRecord check_identity_up(const ReactionTerm& f,
                                     const PhasePlaneSolution& sol) {
  CheckRecord rec;
  rec.id = "identity_up";
  rec.tolerance = 1e-4;
  if (!detail::ghat_applicable(sol)) {
    rec.status = CheckStatus::not_applicable;
    rec.detail = "front decays along the marginal branch";
    return rec;
  }
  const auto ghat = optimal_trial(sol);
  // ghat is tabulated from the computed trajectory, so the quadrature
  // cannot do better than the interpolation error.
  const double qtol = 1e-7;
  // f contributes one vanishing power at each endpoint, so f*ghat and
  // V*ghat' are integrable even when ghat alone is not.
  const auto lhs = detail::trial_integral(
      [&](double u) { return f.f(u) * ghat.value(u); }, ghat.beta0 + 1.0,
      ghat.beta1 + 1.0, qtol);
  const auto parts = detail::trial_integral(
      [&](double u) { return -f.V(u) * ghat.derivative(u); },
      ghat.beta0 + 1.0, ghat.beta1 - 1.0, qtol);
  const auto profile = front_profile(sol);
  const auto wi = weighted_integrals(f, profile, sol.c);
  rec.lhs = lhs.value;
  rec.rhs = sol.c * wi.potential;
  if (wi.tail_flagged || !lhs.converged) {
    rec.status = CheckStatus::inconclusive;
    rec.detail = "tail correction or quadrature not trustworthy";
    return rec;
  }
  const CheckStatus main = detail::rel_gap(rec.lhs, rec.rhs) <= rec.tolerance
                               ? CheckStatus::pass
                               : CheckStatus::fail;
  const CheckStatus ibp = detail::rel_gap(parts.value, lhs.value) <= 1e-6
                              ? CheckStatus::pass
                              : CheckStatus::fail;
  rec.status = detail::both(main, ibp);
  rec.detail = "parts_integral=" + std::to_string(parts.value);
  return rec;
}

/// Evaluates X_c = P_c / K_c on the minimal-speed profile for each trial
/// speed c. At c = c0 the ratio must be 1 (the weighted energy is
/// stationary); below c0 it must stay >= 1.  Speeds violating the decay
/// precondition c < 2 lambda_right are marked inconclusive.
inline std::vector<CheckRecord> check_phasespace_relation(
    const ReactionTerm& f, const PhasePlaneSolution& sol,
    const std::vector<double>& c_list) {
  const auto profile = front_profile(sol);
  std::vector<CheckRecord> out;
  for (double c : c_list) {
    CheckRecord rec;
    rec.id = "phasespace_X(c=" + std::to_string(c) + ")";
    const bool at_solution = std::abs(c - sol.c) <= 1e-9 * std::max(1.0, sol.c);
    rec.tolerance = 1e-3;
    if (!(c > 0.0) || c >= 2.0 * profile.lambda_right - 1e-12) {
      rec.status = CheckStatus::inconclusive;
      rec.detail = "decay precondition c < 2*lambda_right violated";
      out.push_back(rec);
      continue;
    }
    WeightedIntegrals wi;
    try {
      wi = weighted_integrals(f, profile, c);
    } catch (const FrontsError& e) {
      rec.status = CheckStatus::inconclusive;
      rec.detail = e.what();
      out.push_back(rec);
      continue;
    }
    const double X = wi.potential / wi.kinetic;
    rec.lhs = X;
    rec.rhs = 1.0;
    if (wi.tail_flagged) {
      rec.status = CheckStatus::inconclusive;
      rec.detail = "tail correction exceeded 1%";
    } else if (at_solution) {
      rec.status = std::abs(X - 1.0) <= rec.tolerance ? CheckStatus::pass
                                                      : CheckStatus::fail;
      rec.detail = "at the minimal speed, X must equal 1";
    } else {
      rec.status = X >= 1.0 - rec.tolerance ? CheckStatus::pass
                                            : CheckStatus::fail;
      rec.detail = "below the minimal speed, X must stay >= 1";
    }
    out.push_back(rec);
  }
  return out;
}

/// Factor-of-two adjudication: the s-parameterized functional evaluated at
/// u(s) with s = 1/g must equal the square of the phase-space lower bound
/// evaluated at g.  The restored constant makes the two routes agree; the
/// uncorrected constant misses by a factor of about 2.
inline CheckRecord check_vp4_vp4s_consistency(const ReactionTerm& f,
                                              const TrialFunction& g) {
  require_admissible(g);
  if (!g.vanishes_at_one())
    throw InvalidArgument(
        "check_vp4_vp4s_consistency: requires g(1) = 0 so that s = 1/g "
        "covers (0, inf)");
  CheckRecord rec;
  rec.id = "vp4_vp4s_consistency";
  rec.tolerance = 1e-6;
  try {
    const auto profile = s_profile_from_trial(g);
    rec.lhs = vp4s_value(f, profile);
    rec.rhs = vp4_lower(f, g).value_squared;
  } catch (const FrontsError& e) {
    rec.status = CheckStatus::inconclusive;
    rec.detail = e.what();
    return rec;
  }
  rec.status = detail::rel_gap(rec.lhs, rec.rhs) <= rec.tolerance
                   ? CheckStatus::pass
                   : CheckStatus::fail;
  return rec;
}

struct Report {
  std::string reaction;
  double oracle_c0 = 0.0;
  std::string branch;
  std::vector<BoundResult> bounds;
  std::vector<CheckRecord> checks;
  bool pass = false;
};

inline nlohmann::ordered_json to_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["reaction"] = rep.reaction;
  j["oracle"] = {{"c0", rep.oracle_c0}, {"branch", rep.branch}};
  j["bounds"] = nlohmann::ordered_json::array();
  for (const auto& b : rep.bounds) {
    j["bounds"].push_back({{"principle", to_string(b.principle)},
                           {"direction", b.direction == BoundDirection::upper
                                             ? "upper"
                                             : "lower"},
                           {"value", b.value},
                           {"trial", b.trial}});
  }
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    j["checks"].push_back({{"id", c.id},
                           {"lhs", c.lhs},
                           {"rhs", c.rhs},
                           {"tol", c.tolerance},
                           {"status", to_string(c.status)}});
  }
  j["pass"] = rep.pass;
  return j;
}

/// Runs the oracle, default-trial bound evaluations, and every applicable
/// check for one reaction term.  Individual check failures are recorded,
/// never thrown; `pass` is true iff no check failed.
inline Report full_report(const ReactionTerm& f, double c_tol = 1e-6) {
  Report rep;
  rep.reaction = f.name;
  const auto sol = minimal_speed(f, c_tol);
  rep.oracle_c0 = sol.c;
  rep.branch = to_string(sol.decay_branch);
  const bool mono = sol.rclass.monostable();

  const auto g_default = g_one_minus_u_pow(1);
  const auto alpha_default = alpha_identity();
  // A gentler exponent keeps the VP4 numerator positive when f has a
  // negative region near the origin.
  const auto g_ratio = g_power_ratio(mono ? 1.0 : 0.4);

  auto try_bound = [&rep](const std::function<BoundResult()>& op) {
    try {
      rep.bounds.push_back(op());
    } catch (const FrontsError&) {
    }
  };
  if (mono) {
    try_bound([&] { return vp1_upper(f, alpha_default); });
    try_bound([&] { return vp2_lower(f, g_default); });
  }
  try_bound([&] { return vp4_lower(f, g_ratio); });
  if (detail::ghat_applicable(sol))
    try_bound([&] { return vp4_lower(f, optimal_trial(sol)); });

  auto run = [&rep](const std::function<CheckRecord()>& op,
                    const std::string& id) {
    CheckRecord rec;
    try {
      rec = op();
    } catch (const FrontsError& e) {
      rec.id = id;
      rec.status = CheckStatus::inconclusive;
      rec.detail = e.what();
    }
    rep.checks.push_back(rec);
  };

  if (mono) {
    run([&] { return check_chain_vp2_implies_vp1(f, g_default, alpha_default); },
        "chain_vp2_implies_vp1");
    run([&] { return check_chain_vp1_implies_vp2(f, alpha_default, g_default); },
        "chain_vp1_implies_vp2");
  }
  run([&] { return check_identity_down(f, sol); }, "identity_down");
  run([&] { return check_identity_up(f, sol); }, "identity_up");
  run([&] { return check_vp4_vp4s_consistency(f, g_ratio); },
      "vp4_vp4s_consistency");

  // 5-point speed grid below c0; for degenerate terms the admissible
  // interval extends down to 0, otherwise it starts at the linear-spreading
  // speed.  An empty interval (KPP case, c0 = c_KPP) leaves only c = c0.
  std::vector<double> c_list;
  double c_low = 0.0;
  if (mono && sol.rclass.fprime0 > 0.0) c_low = kpp_speed(f);
  if (sol.c - c_low > 1e-6 * std::max(1.0, sol.c)) {
    for (int i = 1; i <= 5; ++i)
      c_list.push_back(c_low + (sol.c - c_low) * i / 6.0);
  }
  c_list.push_back(sol.c);
  for (auto& rec : check_phasespace_relation(f, sol, c_list))
    rep.checks.push_back(rec);

  rep.pass = true;
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::fail) rep.pass = false;
  return rep;
}

}  // namespace fronts
