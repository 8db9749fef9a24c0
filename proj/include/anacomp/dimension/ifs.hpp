#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "anacomp/dimension/point_set.hpp"
#include "anacomp/errors.hpp"
#include "anacomp/seeding.hpp"

namespace anacomp::dimension {

// x -> linear * x + offset
struct AffineMap {
  Eigen::MatrixXd linear;
  Eigen::VectorXd offset;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const { return linear * x + offset; }

  double operator_norm() const {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(linear).singularValues()(0);
  }
};

// Finite system of contractions together with their Lipschitz ratios.
class IfsSystem {
 public:
  IfsSystem(std::vector<AffineMap> maps, std::vector<double> ratios)
      : maps_(std::move(maps)), ratios_(std::move(ratios)) {
    if (maps_.empty()) throw InvalidInput("IfsSystem: no maps");
    if (maps_.size() != ratios_.size()) throw InvalidInput("IfsSystem: one ratio per map required");
    dim_ = static_cast<std::size_t>(maps_.front().offset.size());
    for (std::size_t i = 0; i < maps_.size(); ++i) {
      const auto& m = maps_[i];
      if (static_cast<std::size_t>(m.linear.rows()) != dim_ ||
          static_cast<std::size_t>(m.linear.cols()) != dim_ ||
          static_cast<std::size_t>(m.offset.size()) != dim_)
        throw InvalidInput("IfsSystem: map " + std::to_string(i) + " has inconsistent shape");
      if (!(ratios_[i] > 0.0 && ratios_[i] < 1.0))
        throw InvalidInput("IfsSystem: ratio " + std::to_string(i) + " outside (0,1)");
    }
  }

  // Contractions x/3 and x/3 + 2/3 on the line.
  static IfsSystem cantor() {
    return uniform_scaling(1, 1.0 / 3.0, {{0.0}, {2.0 / 3.0}});
  }

  // Three half-scale copies with corners (0,0), (1,0), (1/2, sqrt(3)/2).
  static IfsSystem sierpinski() {
    return uniform_scaling(2, 0.5, {{0.0, 0.0}, {0.5, 0.0}, {0.25, std::sqrt(3.0) / 4.0}});
  }

  // Ratios (1/2, 1/4, 1/4) on the line; the attractor is [0, 1].
  static IfsSystem unequal_interval() {
    auto scale = [](double c, double b) {
      return AffineMap{Eigen::MatrixXd::Constant(1, 1, c), Eigen::VectorXd::Constant(1, b)};
    };
    return IfsSystem({scale(0.5, 0.0), scale(0.25, 0.5), scale(0.25, 0.75)}, {0.5, 0.25, 0.25});
  }

  static IfsSystem uniform_scaling(std::size_t dim, double ratio,
                                   const std::vector<std::vector<double>>& offsets) {
    std::vector<AffineMap> maps;
    for (const auto& b : offsets) {
      if (b.size() != dim) throw InvalidInput("IfsSystem: offset dimension mismatch");
      maps.push_back({ratio * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim),
                                                        static_cast<Eigen::Index>(dim)),
                      Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(dim))});
    }
    return IfsSystem(std::move(maps), std::vector<double>(offsets.size(), ratio));
  }

  const std::vector<AffineMap>& maps() const { return maps_; }
  const std::vector<double>& ratios() const { return ratios_; }
  std::size_t ambient_dim() const { return dim_; }

  // max_i |ratio_i - ||linear_i||_2|
  double ratio_mismatch() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < maps_.size(); ++i)
      worst = std::max(worst, std::abs(ratios_[i] - maps_[i].operator_norm()));
    return worst;
  }

  // Fixed point of the first map, (I - M) x = b.
  Eigen::VectorXd first_fixed_point() const {
    const auto& m = maps_.front();
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m.linear.rows(), m.linear.cols());
    return (id - m.linear).fullPivLu().solve(m.offset);
  }

 private:
  std::vector<AffineMap> maps_;
  std::vector<double> ratios_;
  std::size_t dim_ = 0;
};

struct Deterministic {
  int depth;
};

struct ChaosGame {
  std::size_t n_points;
  std::uint64_t seed;
};

using IfsMode = std::variant<Deterministic, ChaosGame>;

inline constexpr std::size_t kChaosBurnIn = 100;
inline constexpr std::size_t kMaxDeterministicPoints = std::size_t{1} << 26;

// Deterministic: every composition s_{i_1} o ... o s_{i_depth} applied to the
// fixed point of map 1, enumerated level by level (point-major, map-minor).
// Chaos game: seeded random map choice after a fixed burn-in.
inline PointSet ifs_generate(const IfsSystem& system, const IfsMode& mode) {
  const std::size_t d = system.ambient_dim();
  const Eigen::VectorXd x0 = system.first_fixed_point();
  std::vector<double> coords;

  if (const auto* det = std::get_if<Deterministic>(&mode)) {
    if (det->depth < 1) throw InvalidInput("ifs_generate: depth must be >= 1");
    double total = std::pow(static_cast<double>(system.maps().size()), det->depth);
    if (total > static_cast<double>(kMaxDeterministicPoints))
      throw InvalidInput("ifs_generate: depth would produce more than 2^26 points");
    std::vector<Eigen::VectorXd> level{x0};
    for (int k = 0; k < det->depth; ++k) {
      std::vector<Eigen::VectorXd> next;
      next.reserve(level.size() * system.maps().size());
      for (const auto& p : level)
        for (const auto& map : system.maps()) next.push_back(map(p));
      level = std::move(next);
    }
    coords.reserve(level.size() * d);
    for (const auto& p : level) coords.insert(coords.end(), p.data(), p.data() + d);
    return PointSet(d, std::move(coords));
  }

  const auto& chaos = std::get<ChaosGame>(mode);
  if (chaos.n_points < 1) throw InvalidInput("ifs_generate: n_points must be >= 1");
  Rng rng(chaos.seed);
  Eigen::VectorXd x = x0;
  const std::size_t k = system.maps().size();
  for (std::size_t i = 0; i < kChaosBurnIn; ++i) x = system.maps()[uniform_index(rng, k)](x);
  coords.reserve(chaos.n_points * d);
  for (std::size_t i = 0; i < chaos.n_points; ++i) {
    x = system.maps()[uniform_index(rng, k)](x);
    coords.insert(coords.end(), x.data(), x.data() + d);
  }
  return PointSet(d, std::move(coords));
}

struct AttractorDimension {
  double value = 0.0;
  bool degenerate = false;
  std::string warning;
};

inline constexpr int kMaxBracketDoublings = 64;

// Solves sum_i c_i^d = 1 by bisection on the strictly decreasing map
// d -> sum_i c_i^d. The upper end of the bracket starts at 1 and doubles
// until the sum drops below 1.
inline AttractorDimension attractor_dimension(std::span<const double> ratios) {
  if (ratios.empty()) throw InvalidInput("attractor_dimension: empty ratio list");
  for (double c : ratios)
    if (!(c > 0.0 && c < 1.0)) throw InvalidInput("attractor_dimension: ratio outside (0,1)");
  if (ratios.size() == 1)
    return {0.0, true, "single contraction: sum c^d = 1 only at d = 0"};

  auto excess = [&](double d) {
    double s = 0.0;
    for (double c : ratios) s += std::pow(c, d);
    return s - 1.0;
  };

  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (excess(hi) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > kMaxBracketDoublings)
      throw InternalInconsistency("attractor_dimension: bracket did not close");
  }
  while (true) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  double best = std::abs(excess(lo)) <= std::abs(excess(hi)) ? lo : hi;
  return {best, false, {}};
}

}  // namespace anacomp::dimension
