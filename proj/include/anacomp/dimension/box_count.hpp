#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "anacomp/dimension/point_set.hpp"
#include "anacomp/errors.hpp"

namespace anacomp::dimension {

namespace detail {

// Coordinates within this many cell widths of a grid line count as lying on it.
inline constexpr double kSnap = 1e-9;

inline double snap(double t) {
  double r = std::round(t);
  return std::abs(t - r) <= kSnap * std::max(1.0, std::abs(t)) ? r : t;
}

inline std::int64_t cells_along(double extent, double rho) {
  double e = snap(extent / rho);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(e)));
}

}  // namespace detail

// Number of occupied cells of the side-`rho` grid anchored at the bounding
// box minimum. Cells are half-open [a, a + rho) except the last cell along
// each axis, which is closed so the box maximum is counted.
inline std::size_t box_count(const PointSet& points, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidInput("box_count: rho must be positive");
  const std::size_t d = points.ambient_dim();
  const std::size_t n = points.size();
  const auto& lo = points.lower();
  const auto& hi = points.upper();

  std::vector<std::int64_t> cells_per_axis(d);
  for (std::size_t j = 0; j < d; ++j) cells_per_axis[j] = detail::cells_along(hi[j] - lo[j], rho);

  std::vector<std::int64_t> keys(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = points.point(i);
    for (std::size_t j = 0; j < d; ++j) {
      double t = detail::snap((p[j] - lo[j]) / rho);
      auto idx = static_cast<std::int64_t>(std::floor(t));
      keys[i * d + j] = std::clamp<std::int64_t>(idx, 0, cells_per_axis[j] - 1);
    }
  }

  if (d == 1) {
    std::sort(keys.begin(), keys.end());
    return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(keys.begin() + a * d, keys.begin() + (a + 1) * d,
                                        keys.begin() + b * d, keys.begin() + (b + 1) * d);
  };
  std::sort(order.begin(), order.end(), less);
  std::size_t distinct = 1;
  for (std::size_t i = 1; i < n; ++i)
    if (less(order[i - 1], order[i])) ++distinct;
  return distinct;
}

// Median distance from each point to its nearest other point; 0 for a
// single point. Uses a sweep along the first axis.
inline double median_nearest_neighbor_spacing(const PointSet& points) {
  const std::size_t n = points.size();
  const std::size_t d = points.ambient_dim();
  if (n < 2) return 0.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points.point(a)[0] < points.point(b)[0];
  });

  auto dist2 = [&](std::size_t a, std::size_t b) {
    auto p = points.point(a);
    auto q = points.point(b);
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += (p[j] - q[j]) * (p[j] - q[j]);
    return s;
  };

  std::vector<double> nn(n, std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t a = order[r];
    const double xa = points.point(a)[0];
    double best = nn[a];
    for (std::size_t s = r + 1; s < n; ++s) {
      const std::size_t b = order[s];
      double dx = points.point(b)[0] - xa;
      if (dx * dx >= best) break;
      double dd = dist2(a, b);
      best = std::min(best, dd);
      nn[b] = std::min(nn[b], dd);
    }
    for (std::size_t s = r; s-- > 0;) {
      const std::size_t b = order[s];
      double dx = xa - points.point(b)[0];
      if (dx * dx >= best) break;
      best = std::min(best, dist2(a, b));
    }
    nn[a] = best;
  }
  auto mid = nn.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(nn.begin(), mid, nn.end());
  return std::sqrt(*mid);
}

}  // namespace anacomp::dimension
