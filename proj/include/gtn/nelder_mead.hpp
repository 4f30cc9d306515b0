#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace gtn::detail {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder–Mead minimization with the standard coefficients (reflection 1,
/// expansion 2, contraction 1/2, shrink 1/2). Stops when the spread of the
/// vertex values falls below `ftol` and the simplex diameter below `xtol`,
/// or after `max_evaluations`.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& start, double step,
                             double ftol, double xtol, int max_evaluations) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> pts;
  std::array<double, N + 1> vals;
  int evals = 0;
  auto eval = [&](const Point& p) {
    ++evals;
    return f(p);
  };

  pts[0] = start;
  vals[0] = eval(start);
  for (std::size_t k = 0; k < N; ++k) {
    pts[k + 1] = start;
    pts[k + 1][k] += step;
    vals[k + 1] = eval(pts[k + 1]);
  }

  std::array<std::size_t, N + 1> order;
  auto along = [](const Point& from, const Point& to, double t) {
    Point out;
    for (std::size_t k = 0; k < N; ++k) out[k] = from[k] + t * (to[k] - from[k]);
    return out;
  };

  bool converged = false;
  while (evals < max_evaluations) {
    for (std::size_t k = 0; k <= N; ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order[0], worst = order[N], second = order[N - 1];

    double diameter = 0.0;
    for (std::size_t k = 1; k <= N; ++k) {
      for (std::size_t d = 0; d < N; ++d) {
        diameter = std::max(diameter, std::abs(pts[k][d] - pts[0][d]));
      }
    }
    if (vals[worst] - vals[best] <= ftol && diameter <= xtol) {
      converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t k = 0; k <= N; ++k) {
      if (k == worst) continue;
      for (std::size_t d = 0; d < N; ++d) centroid[d] += pts[k][d] / N;
    }

    const Point reflected = along(pts[worst], centroid, 2.0);
    const double fr = eval(reflected);
    if (fr < vals[best]) {
      const Point expanded = along(pts[worst], centroid, 3.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Point contracted =
        outside ? along(pts[worst], centroid, 1.5) : along(pts[worst], centroid, 0.5);
    const double fc = eval(contracted);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= N; ++k) {
      if (k == best) continue;
      pts[k] = along(pts[best], pts[k], 0.5);
      vals[k] = eval(pts[k]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], evals, converged};
}

}  // namespace gtn::detail
