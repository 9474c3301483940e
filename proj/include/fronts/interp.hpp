#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fronts/errors.hpp"

namespace fronts {

/// Piecewise cubic Hermite interpolant with Fritsch-Carlson slopes.
/// Shape preserving on monotone data; C1 everywhere.
class Pchip {
 public:
  Pchip() = default;

  Pchip(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
      throw InvalidArgument("Pchip: need >= 2 points with matching sizes");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw InvalidArgument("Pchip: abscissae must be strictly increasing");
    d_.resize(n);
    compute_slopes();
  }

  double operator()(double x) const { return eval(x).first; }
  double derivative(double x) const { return eval(x).second; }

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  const std::vector<double>& abscissae() const { return x_; }
  const std::vector<double>& ordinates() const { return y_; }

 private:
  void compute_slopes() {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        // Weighted harmonic mean of adjacent secants.
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    d_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  static double edge_slope(double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0)
      d = 0.0;
    else if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0))
      d = 3.0 * del0;
    return d;
  }

  std::pair<double, double> eval(double x) const {
    const std::size_t n = x_.size();
    std::size_t i;
    if (x <= x_.front())
      i = 0;
    else if (x >= x_.back())
      i = n - 2;
    else {
      i = static_cast<std::size_t>(
              std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) -
          1;
    }
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    const double v = h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] +
                     h11 * h * d_[i + 1];
    const double dh00 = 6 * t2 - 6 * t;
    const double dh10 = 3 * t2 - 4 * t + 1;
    const double dh01 = -6 * t2 + 6 * t;
    const double dh11 = 3 * t2 - 2 * t;
    const double dv = (dh00 * y_[i] + dh01 * y_[i + 1]) / h + dh10 * d_[i] +
                      dh11 * d_[i + 1];
    return {v, dv};
  }

  std::vector<double> x_, y_, d_;
};

}  // namespace fronts
