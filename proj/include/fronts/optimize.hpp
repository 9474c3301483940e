#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fronts/bounds.hpp"
#include "fronts/errors.hpp"
#include "fronts/oracle.hpp"
#include "fronts/reaction.hpp"
#include "fronts/trial.hpp"

namespace fronts {

enum class FamilyId { power_alpha, poly_alpha, power_g, beta_g };

/// A parameterized trial family over a box of admissible parameters.
struct TrialFamily {
  FamilyId id;
  TrialRole role;
  std::string name;
  std::vector<std::pair<double, double>> box;  // per-parameter [lo, hi]
  std::function<TrialFunction(const std::vector<double>&)> make;

  bool inside(const std::vector<double>& x) const {
    for (std::size_t i = 0; i < box.size(); ++i)
      if (x[i] < box[i].first || x[i] > box[i].second) return false;
    return true;
  }
};

/// alpha = a u (1 - b u)
inline TrialFamily family_power_alpha() {
  TrialFamily fam;
  fam.id = FamilyId::power_alpha;
  fam.role = TrialRole::alpha;
  fam.name = "power_alpha";
  fam.box = {{0.05, 5.0}, {-2.0, 1.0}};
  fam.make = [](const std::vector<double>& x) {
    return alpha_power(x[0], x[1]);
  };
  return fam;
}

/// alpha = u (a0 + a1 u + a2 u^2)
inline TrialFamily family_poly_alpha() {
  TrialFamily fam;
  fam.id = FamilyId::poly_alpha;
  fam.role = TrialRole::alpha;
  fam.name = "poly_alpha";
  fam.box = {{0.1, 4.0}, {-2.0, 4.0}, {-2.0, 4.0}};
  fam.make = [](const std::vector<double>& x) {
    return alpha_poly(x[0], x[1], x[2]);
  };
  return fam;
}

/// g = ((1-u)/u)^lambda; VP2 additionally needs lambda < 1 for int g to
/// converge, so the box depends on the principle.
inline TrialFamily family_power_g(Principle principle = Principle::VP4) {
  TrialFamily fam;
  fam.id = FamilyId::power_g;
  fam.role = TrialRole::g;
  fam.name = "power_g";
  // The VP2 cap sits below 1: as the exponent approaches 1 the trial's
  // integrals put most of their mass at u values below the smallest
  // positive double, so no pointwise quadrature can evaluate them.
  fam.box = {(principle == Principle::VP2)
                 ? std::pair<double, double>{0.05, 0.95}
                 : std::pair<double, double>{0.05, 3.0}};
  fam.make = [](const std::vector<double>& x) { return g_power_ratio(x[0]); };
  return fam;
}

/// g = u^{-l0} (1-u)^{l1}
inline TrialFamily family_beta_g(Principle principle = Principle::VP4) {
  TrialFamily fam;
  fam.id = FamilyId::beta_g;
  fam.role = TrialRole::g;
  fam.name = "beta_g";
  fam.box = {{0.0, (principle == Principle::VP2) ? 0.95 : 3.0}, {0.05, 4.0}};
  fam.make = [](const std::vector<double>& x) { return g_beta(x[0], x[1]); };
  return fam;
}

namespace detail {

/// Nelder-Mead simplex minimization with one restart from the best vertex.
inline std::vector<double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn,
    std::vector<double> x0, const std::vector<double>& step, int budget) {
  const std::size_t n = x0.size();
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return fn(x);
  };

  auto run = [&](std::vector<double> start) {
    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    while (evals < budget) {
      std::vector<std::size_t> order(n + 1);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      std::vector<std::vector<double>> spts(n + 1);
      std::vector<double> svals(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        spts[i] = pts[order[i]];
        svals[i] = vals[order[i]];
      }
      pts = spts;
      vals = svals;
      if (std::abs(vals[n] - vals[0]) <
          1e-10 * (1.0 + std::abs(vals[0])))
        break;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;

      auto blend = [&](double t) {
        std::vector<double> x(n);
        for (std::size_t j = 0; j < n; ++j)
          x[j] = centroid[j] + t * (centroid[j] - pts[n][j]);
        return x;
      };
      auto xr = blend(1.0);
      const double fr = eval(xr);
      if (fr < vals[0]) {
        auto xe = blend(2.0);
        const double fe = eval(xe);
        if (fe < fr) {
          pts[n] = xe;
          vals[n] = fe;
        } else {
          pts[n] = xr;
          vals[n] = fr;
        }
      } else if (fr < vals[n - 1]) {
        pts[n] = xr;
        vals[n] = fr;
      } else {
        auto xc = blend(fr < vals[n] ? 0.5 : -0.5);
        const double fc = eval(xc);
        if (fc < std::min(fr, vals[n])) {
          pts[n] = xc;
          vals[n] = fc;
        } else {
          for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
              pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
            vals[i] = eval(pts[i]);
            if (evals >= budget) break;
          }
        }
      }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
      if (vals[i] < vals[best]) best = i;
    return pts[best];
  };

  auto first = run(std::move(x0));
  if (evals < budget) return run(first);  // one restart from the best vertex
  return first;
}

}  // namespace detail

/// Tightens a bound by derivative-free search over a trial family.
/// Inadmissible parameter points receive a penalty and are never passed
/// through the bound operations; the best admissible result found within
/// the budget is returned.
inline BoundResult optimize_bound(const ReactionTerm& f,
                                  const TrialFamily& family,
                                  Principle principle, int budget = 200) {
  if (budget < 50) throw InvalidArgument("optimize_bound: budget >= 50");
  const bool upper = principle == Principle::VP1;
  if ((upper && family.role != TrialRole::alpha) ||
      (!upper && family.role != TrialRole::g))
    throw InvalidArgument("optimize_bound: family role does not match "
                          "principle");

  double penalty_scale = 10.0;
  try {
    penalty_scale = 10.0 * aw_upper(f);
  } catch (const FrontsError&) {
    penalty_scale = 100.0;  // bistable/combustion: any large finite value
  }
  const double penalty = upper ? penalty_scale : -penalty_scale;

  std::optional<BoundResult> best;
  // Out-of-box points are projected onto the box (with a drift penalty)
  // rather than flat-penalized, so the simplex keeps a gradient signal
  // when the optimum sits on a box face.
  auto objective = [&](const std::vector<double>& x) -> double {
    std::vector<double> xc(x.size());
    double drift = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      xc[i] = std::clamp(x[i], family.box[i].first, family.box[i].second);
      drift += (x[i] - xc[i]) * (x[i] - xc[i]);
    }
    TrialFunction t;
    try {
      t = family.make(xc);
      if (!admissible(t)) return upper ? penalty : -penalty;
      BoundResult r;
      switch (principle) {
        case Principle::VP1: r = vp1_upper(f, t); break;
        case Principle::VP2: r = vp2_lower(f, t); break;
        case Principle::VP4: r = vp4_lower(f, t); break;
        default:
          throw InvalidArgument("optimize_bound: principle must be VP1, VP2 "
                                "or VP4");
      }
      if (!best || (upper ? r.value < best->value : r.value > best->value))
        best = r;
      return (upper ? r.value : -r.value) + 10.0 * drift;
    } catch (const FrontsError&) {
      return upper ? penalty : -penalty;
    }
  };

  // Coarse scan seeds the simplex: bound evaluations can fail on large
  // regions of the box (e.g. a sign-indefinite numerator), where a flat
  // penalty alone would strand the search.
  const std::size_t dim = family.box.size();
  const int levels = dim >= 3 ? 4 : 6;
  std::vector<double> x0(dim), probe(dim);
  double best_probe = std::numeric_limits<double>::infinity();
  const int total = static_cast<int>(std::pow(levels, dim));
  for (int k = 0; k < total; ++k) {
    int rem = k;
    for (std::size_t i = 0; i < dim; ++i) {
      const int idx = rem % levels;
      rem /= levels;
      const auto& [lo, hi] = family.box[i];
      probe[i] = lo + (hi - lo) * (idx + 0.5) / levels;
    }
    const double v = objective(probe);
    if (v < best_probe) {
      best_probe = v;
      x0 = probe;
    }
  }
  std::vector<double> step;
  for (const auto& [lo, hi] : family.box) step.push_back(0.1 * (hi - lo));
  detail::nelder_mead(objective, x0, step, budget);
  if (!best)
    throw NumericalFailure("optimize_bound: no admissible point found in box");
  return *best;
}

struct GapResult {
  std::optional<BoundResult> best_upper;
  std::optional<BoundResult> best_lower;
  double oracle_c = 0.0;
  double gap = std::numeric_limits<double>::quiet_NaN();
};

/// Runs optimize_bound across all compatible families and reports the
/// tightest bracket around the oracle speed.  jobs > 1 optimizes the
/// families concurrently; the reduction order is fixed, so the result is
/// identical either way.
inline GapResult bound_gap(const ReactionTerm& f, int budget = 200,
                           double c_tol = 1e-6, int jobs = 1) {
  GapResult res;
  const auto rc = classify(f);
  res.oracle_c = minimal_speed(f, c_tol).c;

  struct Task {
    TrialFamily family;
    Principle principle;
  };
  std::vector<Task> tasks;
  if (rc.monostable()) {
    tasks.push_back({family_power_alpha(), Principle::VP1});
    tasks.push_back({family_poly_alpha(), Principle::VP1});
    tasks.push_back({family_power_g(Principle::VP2), Principle::VP2});
    tasks.push_back({family_beta_g(Principle::VP2), Principle::VP2});
  }
  tasks.push_back({family_power_g(Principle::VP4), Principle::VP4});
  tasks.push_back({family_beta_g(Principle::VP4), Principle::VP4});

  std::vector<std::optional<BoundResult>> outcomes(tasks.size());
  auto run_task = [&](std::size_t i) {
    try {
      outcomes[i] = optimize_bound(f, tasks[i].family, tasks[i].principle,
                                   budget);
    } catch (const FrontsError&) {
    }
  };
  if (jobs > 1) {
    std::vector<std::future<void>> futures;
    for (std::size_t i = 0; i < tasks.size(); ++i)
      futures.push_back(std::async(std::launch::async, run_task, i));
    for (auto& fu : futures) fu.get();
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!outcomes[i]) continue;
    const auto& r = *outcomes[i];
    if (tasks[i].principle == Principle::VP1) {
      if (!res.best_upper || r.value < res.best_upper->value)
        res.best_upper = r;
    } else {
      if (!res.best_lower || r.value > res.best_lower->value)
        res.best_lower = r;
    }
  }
  if (res.best_upper && res.best_lower)
    res.gap = res.best_upper->value - res.best_lower->value;
  return res;
}

}  // namespace fronts
