#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anacomp/dimension/box_count.hpp"
#include "anacomp/dimension/point_set.hpp"
#include "anacomp/errors.hpp"
#include "anacomp/parallel.hpp"

namespace anacomp::dimension {

// Strictly decreasing radii rho_1 > ... > rho_T plus the length of the
// sliding regression window used for the lower/upper slope surrogates.
class ScaleLadder {
 public:
  ScaleLadder(std::vector<double> radii, std::size_t window = 2)
      : radii_(std::move(radii)), window_(window) {
    if (radii_.size() < 2) throw InvalidInput("ScaleLadder: fewer than 2 scales");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i]))
        throw InvalidInput("ScaleLadder: radii must be positive");
      if (i > 0 && !(radii_[i] < radii_[i - 1]))
        throw InvalidInput("ScaleLadder: radii must be strictly decreasing");
    }
    if (window_ < 2) throw InvalidInput("ScaleLadder: window must be at least 2");
    if (window_ > radii_.size()) throw InvalidInput("ScaleLadder: window longer than ladder");
  }

  // base^-first, ..., base^-last for integer base >= 2 and first < last.
  // Computed as 1/base^k so consecutive radii nest exactly.
  static ScaleLadder geometric(int base, int first, int last, std::size_t window = 2) {
    if (base < 2) throw InvalidInput("ScaleLadder::geometric: base must be >= 2");
    if (first >= last) throw InvalidInput("ScaleLadder::geometric: need first < last");
    std::vector<double> r;
    for (int k = first; k <= last; ++k)
      r.push_back(k >= 0 ? 1.0 / std::pow(static_cast<double>(base), k)
                         : std::pow(static_cast<double>(base), -k));
    return ScaleLadder(std::move(r), window);
  }

  const std::vector<double>& radii() const { return radii_; }
  std::size_t window() const { return window_; }
  std::size_t size() const { return radii_.size(); }

 private:
  std::vector<double> radii_;
  std::size_t window_;
};

struct ScaleCount {
  double rho;
  std::size_t count;
  bool operator==(const ScaleCount&) const = default;
};

// Finite-scale surrogates for the lower/upper box-counting dimension.
// slope_lower / slope_upper are the min / max least-squares slopes of
// log N against log(1/rho) over contiguous windows; slope_global is the
// slope over every accepted scale. Reported slopes are clamped to
// [0, ambient_dim]; the raw values are kept alongside.
struct DimensionEstimate {
  std::vector<ScaleCount> counts;
  double slope_lower = 0.0;
  double slope_upper = 0.0;
  double slope_global = 0.0;
  double raw_lower = 0.0;
  double raw_upper = 0.0;
  double raw_global = 0.0;
  std::vector<double> rejected_scales;
  bool out_of_range = false;
  bool non_monotone_counts = false;
  std::vector<std::string> warnings;
};

inline double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

// Raw slopes leave this far outside [0, ambient_dim] before being flagged.
inline constexpr double kSlopeRangeSlack = 0.15;

inline DimensionEstimate estimate_minkowski(const PointSet& points, const ScaleLadder& ladder) {
  DimensionEstimate est;

  // Below the sample's resolution every finite set looks 0-dimensional.
  const double spacing = median_nearest_neighbor_spacing(points);
  std::vector<double> radii;
  for (double rho : ladder.radii()) {
    if (rho < 2.0 * spacing)
      est.rejected_scales.push_back(rho);
    else
      radii.push_back(rho);
  }
  if (!est.rejected_scales.empty())
    est.warnings.push_back("rejected " + std::to_string(est.rejected_scales.size()) +
                           " scale(s) below twice the median nearest-neighbor spacing");
  if (radii.size() < 2)
    throw InvalidInput("estimate_minkowski: fewer than 2 scales above the sample resolution");

  std::vector<std::size_t> counts(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) { counts[i] = box_count(points, radii[i]); });

  std::vector<double> x(radii.size()), y(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    est.counts.push_back({radii[i], counts[i]});
    x[i] = std::log(1.0 / radii[i]);
    y[i] = std::log(static_cast<double>(counts[i]));
    if (i > 0 && counts[i] < counts[i - 1]) est.non_monotone_counts = true;
  }
  if (est.non_monotone_counts)
    est.warnings.push_back("box counts not monotone in rho; use a nested ladder");

  std::size_t window = std::min(ladder.window(), radii.size());
  est.raw_global = least_squares_slope(x, y);
  est.raw_lower = std::numeric_limits<double>::infinity();
  est.raw_upper = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s + window <= radii.size(); ++s) {
    double slope = least_squares_slope(std::span(x).subspan(s, window),
                                       std::span(y).subspan(s, window));
    est.raw_lower = std::min(est.raw_lower, slope);
    est.raw_upper = std::max(est.raw_upper, slope);
  }

  const double top = static_cast<double>(points.ambient_dim());
  for (double raw : {est.raw_lower, est.raw_upper, est.raw_global})
    if (raw < -kSlopeRangeSlack || raw > top + kSlopeRangeSlack) est.out_of_range = true;
  if (est.out_of_range) est.warnings.push_back("raw slope outside [0, ambient_dim]");
  est.slope_lower = std::clamp(est.raw_lower, 0.0, top);
  est.slope_upper = std::clamp(est.raw_upper, 0.0, top);
  est.slope_global = std::clamp(est.raw_global, 0.0, top);
  return est;
}

// Combined estimate over a covering plus the per-piece estimates it came from.
struct ModifiedEstimate {
  DimensionEstimate combined;
  std::vector<DimensionEstimate> pieces;
  std::size_t argmax_piece = 0;
};

// Supremum of per-piece slopes over the supplied covering. The covering is
// the witness for the infimum over coverings; a finer covering can only
// lower the value.
inline ModifiedEstimate estimate_modified(const Partition& partition, const ScaleLadder& ladder) {
  ModifiedEstimate out;
  out.pieces.resize(partition.size());
  parallel_for(partition.size(), [&](std::size_t i) {
    out.pieces[i] = estimate_minkowski(partition.pieces()[i], ladder);
  });

  DimensionEstimate& c = out.combined;
  for (std::size_t i = 0; i < out.pieces.size(); ++i)
    if (out.pieces[i].slope_global > out.pieces[out.argmax_piece].slope_global)
      out.argmax_piece = i;
  c = out.pieces[out.argmax_piece];
  c.warnings.clear();
  c.rejected_scales.clear();
  for (const auto& p : out.pieces) {
    c.slope_lower = std::max(c.slope_lower, p.slope_lower);
    c.slope_upper = std::max(c.slope_upper, p.slope_upper);
    c.raw_lower = std::max(c.raw_lower, p.raw_lower);
    c.raw_upper = std::max(c.raw_upper, p.raw_upper);
    c.raw_global = std::max(c.raw_global, p.raw_global);
    c.out_of_range = c.out_of_range || p.out_of_range;
    c.non_monotone_counts = c.non_monotone_counts || p.non_monotone_counts;
    c.warnings.insert(c.warnings.end(), p.warnings.begin(), p.warnings.end());
  }
  std::sort(c.warnings.begin(), c.warnings.end());
  c.warnings.erase(std::unique(c.warnings.begin(), c.warnings.end()), c.warnings.end());
  return out;
}

}  // namespace anacomp::dimension
