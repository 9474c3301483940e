#pragma once

#include <cmath>
#include <functional>
#include <regex>
#include <string>
#include <utility>

#include "fronts/errors.hpp"

namespace fronts {

enum class TrialRole { alpha, g };
enum class TrialRepr { closed_form, tabulated };

/// An upper-bound trial alpha(u) or lower-bound trial g(u).
///
/// `value` and `derivative` must be evaluable on (0,1); the endpoint
/// exponents describe the leading behavior value ~ u^beta0 near 0 and
/// value ~ (1-u)^beta1 near 1 (beta < 0 means blow-up) and are used both
/// for singular quadrature reasoning and for extending tabulated trials
/// beyond their grid.
struct TrialFunction {
  TrialRole role = TrialRole::g;
  TrialRepr repr = TrialRepr::closed_form;
  std::string description;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double beta0 = 0.0;
  double beta1 = 0.0;
  double prime0 = 0.0;  // alpha'(0+) limit, alpha role only
  double prime1 = 0.0;  // alpha'(1-) limit, alpha role only

  double h(double u) const { return -derivative(u); }
  bool vanishes_at_one() const { return beta1 > 0.0; }
};

/// alpha(u) = u.
inline TrialFunction alpha_identity() {
  TrialFunction t;
  t.role = TrialRole::alpha;
  t.description = "alpha=u";
  t.value = [](double u) { return u; };
  t.derivative = [](double) { return 1.0; };
  t.beta0 = 1.0;
  t.beta1 = 0.0;
  t.prime0 = 1.0;
  t.prime1 = 1.0;
  return t;
}

/// alpha(u) = a u (1 - b u); admissible for a > 0, b <= 1.
inline TrialFunction alpha_power(double a, double b) {
  if (!(a > 0.0)) throw InvalidArgument("alpha_power: a must be positive");
  if (!(b <= 1.0))
    throw InvalidArgument("alpha_power: b > 1 makes alpha vanish inside (0,1)");
  TrialFunction t;
  t.role = TrialRole::alpha;
  t.description = "alpha=" + std::to_string(a) + "*u*(1-" + std::to_string(b) +
                  "*u)";
  t.value = [a, b](double u) { return a * u * (1.0 - b * u); };
  t.derivative = [a, b](double u) { return a * (1.0 - 2.0 * b * u); };
  t.beta0 = 1.0;
  t.beta1 = (b == 1.0) ? 1.0 : 0.0;
  t.prime0 = a;
  t.prime1 = a * (1.0 - 2.0 * b);
  return t;
}

/// alpha(u) = u (a0 + a1 u + a2 u^2); caller must keep it positive on (0,1).
inline TrialFunction alpha_poly(double a0, double a1, double a2) {
  TrialFunction t;
  t.role = TrialRole::alpha;
  t.description = "alpha=u*(" + std::to_string(a0) + "+" + std::to_string(a1) +
                  "u+" + std::to_string(a2) + "u^2)";
  t.value = [a0, a1, a2](double u) {
    return u * (a0 + u * (a1 + u * a2));
  };
  t.derivative = [a0, a1, a2](double u) {
    return a0 + u * (2.0 * a1 + 3.0 * a2 * u);
  };
  const double at1 = a0 + a1 + a2;
  t.beta0 = 1.0;
  t.beta1 = (std::abs(at1) < 1e-14) ? 1.0 : 0.0;
  t.prime0 = a0;
  t.prime1 = a0 + 2.0 * a1 + 3.0 * a2;
  return t;
}

/// g(u) = (1-u)^k for integer k >= 1.
inline TrialFunction g_one_minus_u_pow(int k) {
  if (k < 1) throw InvalidArgument("g_one_minus_u_pow: k >= 1");
  TrialFunction t;
  t.description = (k == 1) ? "g=1-u" : "g=(1-u)^" + std::to_string(k);
  t.value = [k](double u) { return std::pow(1.0 - u, k); };
  t.derivative = [k](double u) {
    return -static_cast<double>(k) * std::pow(1.0 - u, k - 1);
  };
  t.beta0 = 0.0;
  t.beta1 = static_cast<double>(k);
  return t;
}

/// g(u) = ((1-u)/u)^lambda, lambda > 0.
inline TrialFunction g_power_ratio(double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("g_power_ratio: lambda > 0");
  TrialFunction t;
  t.description = "g=((1-u)/u)^" + std::to_string(lambda);
  t.value = [lambda](double u) {
    return std::pow((1.0 - u) / u, lambda);
  };
  t.derivative = [lambda](double u) {
    // g' = -lambda g / (u(1-u))
    return -lambda * std::pow((1.0 - u) / u, lambda) / (u * (1.0 - u));
  };
  t.beta0 = -lambda;
  t.beta1 = lambda;
  return t;
}

/// g(u) = u^{-l0} (1-u)^{l1}, l0 >= 0, l1 > 0.
inline TrialFunction g_beta(double l0, double l1) {
  if (!(l0 >= 0.0 && l1 > 0.0))
    throw InvalidArgument("g_beta: requires l0 >= 0, l1 > 0");
  TrialFunction t;
  t.description = "g=u^-" + std::to_string(l0) + "*(1-u)^" +
                  std::to_string(l1);
  t.value = [l0, l1](double u) {
    return std::pow(u, -l0) * std::pow(1.0 - u, l1);
  };
  t.derivative = [l0, l1](double u) {
    return std::pow(u, -l0) * std::pow(1.0 - u, l1) *
           (-l0 / u - l1 / (1.0 - u));
  };
  t.beta0 = -l0;
  t.beta1 = l1;
  return t;
}

/// Runtime admissibility check at interior sample points.
inline bool admissible(const TrialFunction& t, int n_samples = 64) {
  for (int i = 1; i < n_samples; ++i) {
    const double u = static_cast<double>(i) / n_samples;
    const double v = t.value(u);
    if (!(v > 0.0) || !std::isfinite(v)) return false;
    if (t.role == TrialRole::g) {
      if (!(-t.derivative(u) > 0.0)) return false;  // strictly decreasing
    }
  }
  if (t.role == TrialRole::alpha) {
    // alpha(0) = 0 with positive initial slope
    if (!(t.beta0 > 0.0)) return false;
    if (!(t.prime0 > 0.0)) return false;
  }
  return true;
}

inline void require_admissible(const TrialFunction& t) {
  if (!admissible(t))
    throw InvalidArgument("trial '" + t.description + "' is not admissible");
}

/// Parses the CLI trial mini-language:
///   alpha=u | alpha=A*u*(1-u) | g=1-u | g=(1-u)^K | g=((1-u)/u)^L
inline TrialFunction parse_trial(const std::string& text) {
  static const std::regex re_alpha_scaled(
      R"(alpha=([0-9.eE+\-]+)\*u\*\(1-u\))");
  static const std::regex re_power_g(R"(g=\(\(1-u\)/u\)\^([0-9.eE+\-]+))");
  static const std::regex re_pow_one_minus_u(R"(g=\(1-u\)\^([0-9]+))");
  std::smatch m;
  if (text == "alpha=u") return alpha_identity();
  if (text == "g=1-u") return g_one_minus_u_pow(1);
  if (std::regex_match(text, m, re_alpha_scaled))
    return alpha_power(std::stod(m[1].str()), 1.0);
  if (std::regex_match(text, m, re_power_g))
    return g_power_ratio(std::stod(m[1].str()));
  if (std::regex_match(text, m, re_pow_one_minus_u))
    return g_one_minus_u_pow(std::stoi(m[1].str()));
  throw InvalidArgument("unrecognized trial expression '" + text + "'");
}

}  // namespace fronts
