#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "fronts/errors.hpp"
#include "fronts/reaction.hpp"

namespace fronts {

enum class InitialCondition { step, compact_bump };

struct EvolveResult {
  std::vector<double> x_grid;
  std::vector<double> u_final;
  std::vector<double> track_t;        // one sample per unit time, plus t_end
  std::vector<double> track_x_level;  // location of the u = 0.5 crossing
  double dt = 0.0;
  double t_end = 0.0;
};

namespace detail {

inline double level_crossing(const std::vector<double>& x,
                             const std::vector<double>& u, double level) {
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if ((u[i] >= level) != (u[i + 1] >= level)) {
      const double t = (level - u[i]) / (u[i + 1] - u[i]);
      return x[i] + t * (x[i + 1] - x[i]);
    }
  }
  throw NumericalFailure("evolve: no u = 0.5 crossing in the domain");
}

}  // namespace detail

/// Integrates u_t = u_xx + f(u) on [0, L] with boundary values u(0)=1,
/// u(L)=0, using second-order central differences in space and classical
/// RK4 in time with dt = 0.2 dx^2.  Records the location of the u = 0.5
/// level set once per unit time.
inline EvolveResult evolve(const ReactionTerm& f, InitialCondition ic,
                           double L = 400.0, double dx = 0.1,
                           double t_end = 150.0) {
  if (L <= 40.0 || dx <= 0.0 || t_end < 0.0)
    throw InvalidArgument("evolve: require L > 40, dx > 0, t_end >= 0");
  const std::size_t n = static_cast<std::size_t>(std::llround(L / dx)) + 1;
  EvolveResult res;
  res.t_end = t_end;
  res.x_grid.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.x_grid[i] = i * dx;

  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = res.x_grid[i];
    if (ic == InitialCondition::step) {
      u[i] = (x <= 20.0) ? 1.0 : 0.0;
    } else {  // 1 on [0,10], cosine ramp down on [10,20], 0 beyond
      if (x <= 10.0)
        u[i] = 1.0;
      else if (x >= 20.0)
        u[i] = 0.0;
      else
        u[i] = 0.5 * (1.0 + std::cos(std::numbers::pi * (x - 10.0) / 10.0));
    }
  }
  u.front() = 1.0;
  u.back() = 0.0;

  const double dt_raw = 0.2 * dx * dx;
  const long long steps_per_unit =
      std::max<long long>(1, static_cast<long long>(std::ceil(1.0 / dt_raw)));
  const double dt = 1.0 / static_cast<double>(steps_per_unit);
  res.dt = dt;

  const double inv_dx2 = 1.0 / (dx * dx);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  auto rhs = [&](const std::vector<double>& v, std::vector<double>& out) {
    out.front() = 0.0;
    out.back() = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
      out[i] = (v[i - 1] - 2.0 * v[i] + v[i + 1]) * inv_dx2 + f.f(v[i]);
  };

  auto record = [&](double t) {
    const double xl = detail::level_crossing(res.x_grid, u, 0.5);
    if (xl > L - 10.0)
      throw NumericalFailure(
          "evolve: front reached the right boundary margin; enlarge L");
    res.track_t.push_back(t);
    res.track_x_level.push_back(xl);
  };

  record(0.0);
  const long long total_units = static_cast<long long>(std::llround(t_end));
  for (long long unit = 0; unit < total_units; ++unit) {
    for (long long s = 0; s < steps_per_unit; ++s) {
      rhs(u, k1);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
      rhs(tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
      rhs(tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
      rhs(tmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    for (double v : u)
      if (!(v >= -1e-6 && v <= 1.0 + 1e-6))
        throw NumericalFailure(
            "evolve: solution left [0,1] beyond tolerance (instability)");
    record(static_cast<double>(unit + 1));
  }
  res.u_final = u;
  return res;
}

/// Least-squares slope of the level-set track over the last fraction of
/// the recorded times; with the default window this averages over the
/// final third, after transients have decayed.
inline double spreading_speed(const EvolveResult& ev,
                              double window_fraction = 1.0 / 3.0) {
  const std::size_t m = ev.track_t.size();
  if (m < 3) throw InvalidArgument("spreading_speed: need at least 3 samples");
  const std::size_t start =
      m - std::max<std::size_t>(2, static_cast<std::size_t>(
                                       std::llround(window_fraction * m)));
  double st = 0, sx = 0, stt = 0, stx = 0;
  std::size_t k = 0;
  for (std::size_t i = start; i < m; ++i, ++k) {
    st += ev.track_t[i];
    sx += ev.track_x_level[i];
    stt += ev.track_t[i] * ev.track_t[i];
    stx += ev.track_t[i] * ev.track_x_level[i];
  }
  const double denom = k * stt - st * st;
  if (denom == 0.0) throw NumericalFailure("spreading_speed: degenerate fit");
  return (k * stx - st * sx) / denom;
}

/// Writes the level-set track as CSV with header `t,x_level`.
inline void write_track_csv(const EvolveResult& ev, std::ostream& os) {
  os << "t,x_level\n";
  os.precision(12);
  for (std::size_t i = 0; i < ev.track_t.size(); ++i)
    os << ev.track_t[i] << "," << ev.track_x_level[i] << "\n";
}

}  // namespace fronts
