#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace qmeur::detail {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SimplexOptions {
  double initial_step = 0.1;
  double diameter_tol = 1e-7;
  int max_iterations = 5000;
};

/// Derivative-free minimization with the standard reflection / expansion /
/// contraction / shrink coefficients (1, 2, 1/2, 1/2). Stops when the largest
/// vertex distance from the best vertex drops below diameter_tol.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& start,
                             const SimplexOptions& opt = {}) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> pts;
  std::array<double, N + 1> vals;
  pts[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += opt.initial_step;
  }
  for (std::size_t i = 0; i <= N; ++i) vals[i] = f(pts[i]);

  auto combine = [](const Point& a, const Point& b, double t) {
    Point out;
    for (std::size_t k = 0; k < N; ++k) out[k] = a[k] + t * (b[k] - a[k]);
    return out;
  };

  std::array<std::size_t, N + 1> order;
  SimplexResult<N> res;
  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[N - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= N; ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < N; ++k) d2 += std::pow(pts[i][k] - pts[best][k], 2);
      diameter = std::max(diameter, std::sqrt(d2));
    }
    if (diameter < opt.diameter_tol) {
      res.converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / static_cast<double>(N);
    }

    const Point reflected = combine(centroid, pts[worst], -1.0);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const Point expanded = combine(centroid, pts[worst], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded, vals[worst] = fe;
      } else {
        pts[worst] = reflected, vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected, vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Point contracted = combine(centroid, outside ? reflected : pts[worst], 0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted, vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == best) continue;
      pts[i] = combine(pts[best], pts[i], 0.5);
      vals[i] = f(pts[i]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  res.x = pts[best];
  res.value = vals[best];
  return res;
}

}  // namespace qmeur::detail
