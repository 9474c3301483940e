#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fronts/errors.hpp"
#include "fronts/quadrature.hpp"
#include "fronts/roots.hpp"

namespace fronts {

enum class ReactionKind { polynomial, builtin, piecewise };

/// Polynomial segment of a piecewise reaction term: coefficients are in
/// powers of u starting at u^0, valid on [lo, hi].
struct PiecewiseSegment {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> coefficients;
};

/// Plain description record for a reaction term, mirroring the CLI/config
/// schema. Polynomial coefficients c1..cn mean f = sum_i c_i u^i.
struct ReactionSpec {
  std::string kind;  // "builtin" | "polynomial" | "piecewise"
  std::string name;  // builtin name
  std::optional<double> param;
  std::vector<double> coefficients;
  std::vector<PiecewiseSegment> segments;
};

/// A reaction term f on [0,1] with f(0) = f(1) = 0, its derivative, and
/// the potential V(u) = int_0^u f.
class ReactionTerm {
 public:
  ReactionKind kind = ReactionKind::builtin;
  std::string name;
  std::vector<double> parameters;
  std::function<double(double)> f;
  std::function<double(double)> fprime;
  std::function<double(double)> V;

  double operator()(double u) const { return f(u); }
  double fprime0() const { return fprime0_; }
  double fprime1() const { return fprime1_; }
  double V1() const { return V1_; }

  void finalize() {
    constexpr double end_tol = 1e-12;
    if (std::abs(f(0.0)) > end_tol || std::abs(f(1.0)) > end_tol)
      throw InvalidArgument("reaction '" + name +
                            "': f(0) and f(1) must vanish (|.| <= 1e-12)");
    fprime0_ = fprime(0.0);
    fprime1_ = fprime(1.0);
    V1_ = V(1.0);
  }

 private:
  double fprime0_ = 0.0, fprime1_ = 0.0, V1_ = 0.0;
};

enum class ReactionTag {
  monostable_kpp,
  monostable_general,
  monostable_degenerate,
  bistable,
  combustion
};

struct ReactionClass {
  ReactionTag tag;
  double fprime0 = 0.0;
  std::optional<double> sign_change_point;  // `a` for bistable/combustion

  bool monostable() const {
    return tag == ReactionTag::monostable_kpp ||
           tag == ReactionTag::monostable_general ||
           tag == ReactionTag::monostable_degenerate;
  }
};

inline const char* to_string(ReactionTag t) {
  switch (t) {
    case ReactionTag::monostable_kpp: return "monostable_kpp";
    case ReactionTag::monostable_general: return "monostable_general";
    case ReactionTag::monostable_degenerate: return "monostable_degenerate";
    case ReactionTag::bistable: return "bistable";
    case ReactionTag::combustion: return "combustion";
  }
  return "?";
}

namespace detail {

inline double poly_eval(const std::vector<double>& c, double u, int lowest) {
  // c[i] multiplies u^{lowest+i}
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * u + c[i];
  return acc * std::pow(u, lowest);
}

inline ReactionTerm make_polynomial_term(std::vector<double> coeffs,
                                         std::string name) {
  if (coeffs.empty()) throw InvalidArgument("polynomial: empty coefficients");
  double at1 = 0.0;
  for (double c : coeffs) at1 += c;
  if (std::abs(at1) > 1e-12)
    throw InvalidArgument("polynomial: f(1) = " + std::to_string(at1) +
                          " must vanish");
  ReactionTerm t;
  t.kind = ReactionKind::polynomial;
  t.name = std::move(name);
  t.parameters = coeffs;
  std::vector<double> deriv(coeffs.size());
  std::vector<double> anti(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    deriv[i] = coeffs[i] * static_cast<double>(i + 1);
    anti[i] = coeffs[i] / static_cast<double>(i + 2);
  }
  t.f = [coeffs](double u) { return poly_eval(coeffs, u, 1); };
  t.fprime = [deriv](double u) { return poly_eval(deriv, u, 0); };
  t.V = [anti](double u) { return poly_eval(anti, u, 2); };
  t.finalize();
  return t;
}

}  // namespace detail

/// Builtin catalog constructors -------------------------------------------

inline ReactionTerm make_fisher() {
  return detail::make_polynomial_term({1.0, -1.0}, "fisher");
}

inline ReactionTerm make_hadeler_rothe(double nu) {
  // f = u(1-u)(1+nu*u)
  auto t = detail::make_polynomial_term({1.0, nu - 1.0, -nu},
                                        "hadeler_rothe(" + std::to_string(nu) +
                                            ")");
  t.kind = ReactionKind::builtin;
  t.parameters = {nu};
  return t;
}

inline ReactionTerm make_bistable_cubic(double a) {
  if (!(a > 0.0 && a < 1.0))
    throw InvalidArgument("bistable_cubic: a must lie in (0,1)");
  // f = u(1-u)(u-a)
  auto t = detail::make_polynomial_term({-a, 1.0 + a, -1.0},
                                        "bistable_cubic(" + std::to_string(a) +
                                            ")");
  t.kind = ReactionKind::builtin;
  t.parameters = {a};
  return t;
}

inline ReactionTerm make_degenerate_power(double m) {
  if (!(m >= 2.0)) throw InvalidArgument("degenerate_power: requires m >= 2");
  ReactionTerm t;
  t.kind = ReactionKind::builtin;
  t.name = "degenerate_power(" + std::to_string(m) + ")";
  t.parameters = {m};
  t.f = [m](double u) { return std::pow(u, m) * (1.0 - u); };
  t.fprime = [m](double u) {
    if (u == 0.0) return m > 1.0 ? 0.0 : (1.0 - u);
    return std::pow(u, m - 1.0) * (m - (m + 1.0) * u);
  };
  t.V = [m](double u) {
    return std::pow(u, m + 1.0) / (m + 1.0) - std::pow(u, m + 2.0) / (m + 2.0);
  };
  t.finalize();
  return t;
}

inline ReactionTerm make_piecewise(std::vector<PiecewiseSegment> segments,
                                   std::string name = "piecewise") {
  if (segments.empty()) throw InvalidArgument("piecewise: no segments");
  ReactionTerm t;
  t.kind = ReactionKind::piecewise;
  t.name = std::move(name);
  auto segs = std::make_shared<std::vector<PiecewiseSegment>>(
      std::move(segments));
  auto find = [segs](double u) -> const PiecewiseSegment& {
    for (const auto& s : *segs)
      if (u >= s.lo && (u < s.hi || (&s == &segs->back() && u <= s.hi)))
        return s;
    return segs->back();
  };
  t.f = [find](double u) {
    return detail::poly_eval(find(u).coefficients, u, 0);
  };
  // One-sided analytic derivative within the owning segment.
  t.fprime = [find](double u) {
    const auto& s = find(u);
    std::vector<double> d;
    for (std::size_t i = 1; i < s.coefficients.size(); ++i)
      d.push_back(s.coefficients[i] * static_cast<double>(i));
    if (d.empty()) return 0.0;
    return detail::poly_eval(d, u, 0);
  };
  // Piecewise antiderivative, continuous across breakpoints.
  t.V = [segs](double u) {
    auto anti = [](const PiecewiseSegment& s, double x) {
      double acc = 0.0;
      for (std::size_t i = 0; i < s.coefficients.size(); ++i)
        acc += s.coefficients[i] *
               (std::pow(x, static_cast<double>(i + 1)) /
                static_cast<double>(i + 1));
      return acc;
    };
    double total = 0.0;
    for (const auto& s : *segs) {
      if (u <= s.lo) break;
      const double upper = std::min(u, s.hi);
      total += anti(s, upper) - anti(s, s.lo);
    }
    return total;
  };
  t.finalize();
  return t;
}

inline ReactionTerm make_ignition(double a) {
  if (!(a > 0.0 && a < 1.0))
    throw InvalidArgument("ignition: a must lie in (0,1)");
  // f = 0 on [0,a], f = (u-a)(1-u) on (a,1]
  std::vector<PiecewiseSegment> segs;
  segs.push_back({0.0, a, {0.0}});
  // (u-a)(1-u) = -a + (1+a)u - u^2
  segs.push_back({a, 1.0, {-a, 1.0 + a, -1.0}});
  auto t = make_piecewise(std::move(segs), "ignition(" + std::to_string(a) +
                                               ")");
  t.kind = ReactionKind::builtin;
  t.parameters = {a};
  return t;
}

/// Builds a ReactionTerm from a description record.
inline ReactionTerm make_reaction(const ReactionSpec& spec) {
  if (spec.kind == "builtin") {
    const auto need_param = [&]() -> double {
      if (!spec.param)
        throw InvalidArgument("builtin '" + spec.name +
                              "' requires a parameter");
      return *spec.param;
    };
    if (spec.name == "fisher") return make_fisher();
    if (spec.name == "hadeler_rothe") return make_hadeler_rothe(need_param());
    if (spec.name == "bistable_cubic") return make_bistable_cubic(need_param());
    if (spec.name == "ignition") return make_ignition(need_param());
    if (spec.name == "degenerate_power")
      return make_degenerate_power(need_param());
    throw InvalidArgument("unknown builtin reaction '" + spec.name + "'");
  }
  if (spec.kind == "polynomial")
    return detail::make_polynomial_term(spec.coefficients, "polynomial");
  if (spec.kind == "piecewise") return make_piecewise(spec.segments);
  throw InvalidArgument("reaction spec: unknown kind '" + spec.kind + "'");
}

/// Classification -----------------------------------------------------------

inline ReactionClass classify(const ReactionTerm& f, int n_samples = 512) {
  if (n_samples < 100) throw InvalidArgument("classify: n_samples >= 100");
  const double tol = 1e-11;
  const double fp0 = f.fprime0();

  // Sign pattern on a uniform interior grid, as runs of equal sign.
  // Zero runs of one or two samples are grid points landing on isolated
  // roots (sign transitions), not plateaus; drop them so the pattern
  // reflects the intervals between roots.
  struct Run {
    double u;
    int sign;
    int length;
  };
  std::vector<Run> runs;
  for (int i = 1; i < n_samples; ++i) {
    const double u = static_cast<double>(i) / n_samples;
    const double v = f(u);
    const int s = (v > tol) ? 1 : (v < -tol ? -1 : 0);
    if (runs.empty() || runs.back().sign != s)
      runs.push_back({u, s, 1});
    else
      ++runs.back().length;
  }
  std::vector<std::pair<double, int>> pattern;  // (u, sign) at changes
  for (const auto& r : runs) {
    if (r.sign == 0 && r.length <= 2 && runs.size() > 1) continue;
    if (pattern.empty() || pattern.back().second != r.sign)
      pattern.emplace_back(r.u, r.sign);
  }

  auto all_positive = pattern.size() == 1 && pattern[0].second == 1;

  if (all_positive) {
    ReactionClass rc;
    rc.fprime0 = fp0;
    if (std::abs(fp0) <= 1e-9) {
      rc.tag = ReactionTag::monostable_degenerate;
      return rc;
    }
    if (fp0 < 0.0)
      throw InvalidArgument("classify: f > 0 on (0,1) but f'(0) < 0");
    bool kpp = true;
    for (int i = 1; i < n_samples; ++i) {
      const double u = static_cast<double>(i) / n_samples;
      if (f(u) > fp0 * u + 1e-9) {
        kpp = false;
        break;
      }
    }
    rc.tag = kpp ? ReactionTag::monostable_kpp : ReactionTag::monostable_general;
    return rc;
  }

  // bistable: negative then positive
  if (pattern.size() == 2 && pattern[0].second == -1 &&
      pattern[1].second == 1) {
    const double a = bisect([&f](double u) { return f(u); },
                            pattern[0].first, pattern[1].first, 1e-12);
    const auto integral = integrate(f.f, 0.0, 1.0, 1e-10);
    if (integral.value <= 0.0)
      throw InvalidArgument(
          "classify: bistable sign pattern but nonpositive total integral");
    ReactionClass rc;
    rc.tag = ReactionTag::bistable;
    rc.fprime0 = fp0;
    rc.sign_change_point = a;
    return rc;
  }

  // combustion: identically zero then positive
  if (pattern.size() == 2 && pattern[0].second == 0 &&
      pattern[1].second == 1) {
    // refine the ignition point: last u with f(u) <= tol
    double lo = pattern[0].first, hi = pattern[1].first;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) > tol)
        hi = mid;
      else
        lo = mid;
    }
    ReactionClass rc;
    rc.tag = ReactionTag::combustion;
    rc.fprime0 = fp0;
    rc.sign_change_point = 0.5 * (lo + hi);
    return rc;
  }

  throw InvalidArgument(
      "classify: sign pattern matches none of the supported classes");
}

/// Speed functionals ---------------------------------------------------------

/// c_KPP = 2 sqrt(f'(0)).
inline double kpp_speed(const ReactionTerm& f) {
  const double fp0 = f.fprime0();
  if (fp0 < -1e-12)
    throw InvalidArgument("kpp_speed: f'(0) < 0 (no KPP speed)");
  return 2.0 * std::sqrt(std::max(fp0, 0.0));
}

/// c_ZFK = sqrt(2 int_0^1 f).
inline double zfk_speed(const ReactionTerm& f) {
  const auto q = integrate(f.f, 0.0, 1.0, 1e-10);
  if (!(q.value > 0.0))
    throw InvalidArgument("zfk_speed: int_0^1 f du must be positive");
  return std::sqrt(2.0 * q.value);
}

/// Aronson-Weinberger upper bound 2 sqrt(sup f(u)/u).
inline double aw_upper(const ReactionTerm& f) {
  const auto rc = classify(f);
  if (!rc.monostable())
    throw InvalidArgument("aw_upper: reaction term must be monostable");
  auto ratio = [&f](double u) { return f(u) / u; };
  const int n = 10000;
  double best = f.fprime0();  // u -> 0 limit
  int best_i = 0;
  for (int i = 1; i <= n; ++i) {
    const double u = static_cast<double>(i) / n;
    const double r = ratio(u);
    if (r > best) {
      best = r;
      best_i = i;
    }
  }
  if (best_i > 0) {
    const double lo = std::max(1e-12, static_cast<double>(best_i - 1) / n);
    const double hi = std::min(1.0, static_cast<double>(best_i + 1) / n);
    const double u_star = golden_section_max(ratio, lo, hi, 1e-12);
    best = std::max(best, ratio(u_star));
  }
  return 2.0 * std::sqrt(std::max(best, 0.0));
}

}  // namespace fronts
