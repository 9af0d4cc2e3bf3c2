#pragma once

// Slow reference computations used to cross-check the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

inline void for_each_isotonic(std::size_t n, const std::vector<double>& levels,
                              const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<double> f(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == n) {
      visit(f);
      return;
    }
    for (std::size_t j = from; j < levels.size(); ++j) {
      f[pos] = levels[j];
      rec(pos + 1, j);
    }
  };
  rec(0, 0);
}

inline std::vector<double> grid(std::size_t resolution) {
  std::vector<double> g(resolution + 1);
  for (std::size_t j = 0; j <= resolution; ++j) g[j] = static_cast<double>(j) / resolution;
  return g;
}

inline std::size_t count_isotonic(std::size_t n, std::size_t levels) {
  std::size_t c = 0;
  std::vector<double> lv(levels);
  for_each_isotonic(n, lv, [&](const std::vector<double>&) { ++c; });
  return c;
}

/// Minimum of sum w (v - f)^2 over non-decreasing f on the given levels.
inline std::vector<double> best_on_levels(const std::vector<double>& v, const std::vector<double>& w,
                                          const std::vector<double>& levels) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> arg;
  for_each_isotonic(v.size(), levels, [&](const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * (v[i] - f[i]) * (v[i] - f[i]);
    if (s < best) {
      best = s;
      arg = f;
    }
  });
  return arg;
}

inline double sq_loss(const std::vector<double>& y, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - f[i]) * (y[i] - f[i]);
  return s;
}

inline double abs_loss(const std::vector<double>& y, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::abs(y[i] - f[i]);
  return s;
}

/// Mean of phi(z) = (1 - z)^(T - t) G(z)^(t - 1), G(z) = int_0^z exp(-u^2/2) du,
/// by composite Simpson on a uniform mesh in log space.
inline double continuous_ew_simpson(std::size_t t, std::size_t horizon, std::size_t intervals = 20000) {
  auto log_phi = [&](double z) {
    const double g = std::sqrt(M_PI / 2.0) * std::erf(z / std::sqrt(2.0));
    double lp = 0.0;
    if (horizon > t) lp += static_cast<double>(horizon - t) * std::log1p(-z);
    if (t > 1) lp += static_cast<double>(t - 1) * std::log(g);
    return lp;
  };
  const double h = 1.0 / static_cast<double>(intervals);
  std::vector<double> lv(intervals + 1);
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double z = i * h;
    lv[i] = (z <= 0.0 && t > 1) || (z >= 1.0 && horizon > t) ? -std::numeric_limits<double>::infinity()
                                                               : log_phi(z);
    mx = std::max(mx, lv[i]);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double e = std::exp(lv[i] - mx);
    num += c * i * h * e;
    den += c * e;
  }
  return num / den;
}

}  // namespace oracle
