// SPDX-License-Identifier: Apache-2.0
//
// Element-wise one-dimensional position search shared by the penalty and ZF
// solvers: neighbour-limited search interval, grid enumeration, optional
// off-grid refinement for continuous activation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "pass/channel.hpp"

namespace pass::search {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty(double tol = 0.0) const { return lo > hi + tol; }
};

/// [x_{m-1} + dx, x_{m+1} - dx] intersected with [0, x_max]; the first
/// antenna is bounded below by 0 and the last above by x_max.
inline Interval neighbor_interval(const RMat& x, std::size_t m, std::size_t n, double min_spacing,
                                  double x_max) {
  const auto mm = static_cast<Eigen::Index>(m);
  const auto nn = static_cast<Eigen::Index>(n);
  Interval iv{0.0, x_max};
  if (m > 0) iv.lo = std::max(0.0, x(mm - 1, nn) + min_spacing);
  if (mm + 1 < x.rows()) iv.hi = std::min(x_max, x(mm + 1, nn) - min_spacing);
  return iv;
}

inline double grid_tolerance(const FeasibleSet& fs) { return 1e-9 * std::max(1.0, fs.x_max); }

/// Number of grid samples used for the given feasible set: the discrete grid
/// itself, or `continuous_points` over [0, x_max].
inline std::size_t grid_size(const FeasibleSet& fs, std::size_t continuous_points) {
  return fs.is_discrete() ? fs.q_points : std::max<std::size_t>(2, continuous_points);
}

/// Grid points of a `points`-sample grid over [0, x_max] that fall in iv.
inline void fill_candidates(const FeasibleSet& fs, std::size_t points, Interval iv,
                            std::vector<double>& out) {
  out.clear();
  const double tol = grid_tolerance(fs);
  if (iv.empty(tol)) return;
  const double step = fs.x_max / static_cast<double>(points - 1);
  const auto first = static_cast<std::int64_t>(std::ceil((iv.lo - tol) / step));
  const auto last = static_cast<std::int64_t>(std::floor((iv.hi + tol) / step));
  const std::int64_t lo = std::max<std::int64_t>(0, first);
  const std::int64_t hi = std::min<std::int64_t>(static_cast<std::int64_t>(points) - 1, last);
  if (hi < lo) return;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t i = lo; i <= hi; ++i) {
    const double x = fs.grid_value(static_cast<std::size_t>(i), points);
    if (x >= iv.lo - tol && x <= iv.hi + tol) out.push_back(x);
  }
}

struct Outcome {
  double x = 0.0;
  double value = 0.0;
  bool moved = false;
  bool empty = false;  ///< no grid point in the interval; incumbent kept
};

/// Reusable buffers for one solver run.
struct Workspace {
  std::vector<double> xs;
  std::vector<double> values;
};

/// Minimises a single-coordinate objective over the grid points inside iv.
/// `batch(xs, out)` scores a span of candidates, `scalar(x)` scores one point.
/// Ties go to the smaller x. The incumbent is only replaced by a strictly
/// better point, so the objective never increases. With `refine` (continuous
/// activation only) the best grid point is polished by Brent's method within
/// one grid step.
template <class Batch, class Scalar>
Outcome minimize_coordinate(Batch&& batch, Scalar&& scalar, const FeasibleSet& fs,
                            std::size_t points, Interval iv, double incumbent, bool refine,
                            Workspace& ws) {
  Outcome out;
  out.x = incumbent;
  out.value = scalar(incumbent);

  fill_candidates(fs, points, iv, ws.xs);
  if (ws.xs.empty()) {
    out.empty = true;
    return out;
  }
  ws.values.resize(ws.xs.size());
  batch(std::span<const double>(ws.xs), std::span<double>(ws.values));

  std::size_t best = 0;
  for (std::size_t i = 1; i < ws.values.size(); ++i)
    if (ws.values[i] < ws.values[best]) best = i;
  double best_x = ws.xs[best];
  double best_v = ws.values[best];

  if (refine && !fs.is_discrete()) {
    const double step = fs.x_max / static_cast<double>(points - 1);
    const double a = std::max(iv.lo, best_x - step);
    const double b = std::min(iv.hi, best_x + step);
    if (b > a) {
      std::uintmax_t iters = 60;
      const auto [rx, rv] = boost::math::tools::brent_find_minima(scalar, a, b, 40, iters);
      if (rv < best_v) {
        best_x = rx;
        best_v = rv;
      }
    }
  }

  if (best_v < out.value) {
    out.x = best_x;
    out.value = best_v;
    out.moved = true;
  }
  return out;
}

}  // namespace pass::search
