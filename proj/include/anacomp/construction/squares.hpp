#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "anacomp/construction/real.hpp"
#include "anacomp/errors.hpp"

namespace anacomp::construction {

// a_k = 1/2 + 1/2^k
inline Rational a_k(int k) {
  if (k < 1) throw InvalidInput("a_k: depth must be >= 1");
  return Rational(1, 2) + Rational(Integer(1), Integer(1) << k);
}

// Side length a_k / 2^(k-1) of every depth-k square.
inline Rational side_at_depth(int k) { return a_k(k) / Rational(Integer(1) << (k - 1)); }

// Total area of Q_k: 4^(k-1) squares of side a_k/2^(k-1), i.e. a_k^2.
inline Rational area_of_Qk(int k) {
  Rational side = side_at_depth(k);
  return Rational(Integer(1) << (2 * (k - 1))) * side * side;
}

// Smallest distance between two distinct depth-k squares: the gap between
// siblings, parent side minus two child sides. Depth 1 has one square; the
// same closed form 4^(1-k) is used there.
inline Rational min_gap_at_depth(int k) {
  if (k < 1) throw InvalidInput("min_gap_at_depth: depth must be >= 1");
  if (k == 1) return Rational(1);
  return side_at_depth(k - 1) - 2 * side_at_depth(k);
}

// Bump margin: one quarter of the minimum same-depth gap.
inline Rational bump_margin(int k) { return min_gap_at_depth(k) / 4; }

// Closed square Q_{k,i}; index is 1-based. Children of Q_{k,i} are
// Q_{k+1, 4(i-1)+c} for c = 1..4 in the corner order (0,0), (1,0), (0,1), (1,1).
struct SquareNode {
  int depth = 1;
  std::uint64_t index = 1;
  Rational center_x{1, 2};
  Rational center_y{1, 2};
  Rational half_side{1, 2};

  Rational min_x() const { return center_x - half_side; }
  Rational min_y() const { return center_y - half_side; }
  Rational max_x() const { return center_x + half_side; }
  Rational max_y() const { return center_y + half_side; }

  bool operator==(const SquareNode&) const = default;
};

inline SquareNode root_square() { return {}; }

inline SquareNode child_square(const SquareNode& parent, int corner) {
  const int k = parent.depth + 1;
  const Rational side = side_at_depth(k);
  const Rational half = side / 2;
  const Rational x0 = parent.min_x();
  const Rational y0 = parent.min_y();
  const Rational far = 2 * parent.half_side - side;
  SquareNode c;
  c.depth = k;
  c.index = 4 * (parent.index - 1) + static_cast<std::uint64_t>(corner) + 1;
  c.center_x = x0 + ((corner & 1) ? far : Rational(0)) + half;
  c.center_y = y0 + ((corner & 2) ? far : Rational(0)) + half;
  c.half_side = half;
  return c;
}

// Index of the depth-j ancestor of Q_{k,i}, j <= k.
inline std::uint64_t ancestor_index(int k, std::uint64_t i, int j) {
  return ((i - 1) >> (2 * (k - j))) + 1;
}

// First depth at which Q_{k,i} and Q_{k,j} lie in different squares.
inline int first_differing_depth(int k, std::uint64_t i, std::uint64_t j) {
  for (int d = 1; d <= k; ++d)
    if (ancestor_index(k, i, d) != ancestor_index(k, j, d)) return d;
  return k + 1;
}

inline void check_depth(int k, const Precision& precision) {
  if (k < 1) throw InvalidInput("depth must be >= 1");
  if (!precision.big && k > kMaxDoubleDepth)
    throw PrecisionError("depth " + std::to_string(k) + " exceeds the double-precision limit of " +
                         std::to_string(kMaxDoubleDepth) + "; enable big precision (--big <bits>)");
}

// All 4^(k-1) squares of depth k in index order.
inline std::vector<SquareNode> squares_at_depth(int k,
                                                const Precision& precision = Precision::double_precision()) {
  check_depth(k, precision);
  std::vector<SquareNode> level{root_square()};
  for (int d = 1; d < k; ++d) {
    std::vector<SquareNode> next;
    next.reserve(level.size() * 4);
    for (const auto& p : level)
      for (int c = 0; c < 4; ++c) next.push_back(child_square(p, c));
    level = std::move(next);
  }
  return level;
}

// Q_1, ..., Q_L kept level by level.
class NestedSquares {
 public:
  explicit NestedSquares(int depth, const Precision& precision = Precision::double_precision()) {
    check_depth(depth, precision);
    levels_.push_back({root_square()});
    for (int d = 1; d < depth; ++d) {
      std::vector<SquareNode> next;
      next.reserve(levels_.back().size() * 4);
      for (const auto& p : levels_.back())
        for (int c = 0; c < 4; ++c) next.push_back(child_square(p, c));
      levels_.push_back(std::move(next));
    }
  }

  int depth() const { return static_cast<int>(levels_.size()); }
  const std::vector<SquareNode>& at(int k) const { return levels_.at(static_cast<std::size_t>(k - 1)); }
  const SquareNode& square(int k, std::uint64_t i) const { return at(k).at(static_cast<std::size_t>(i - 1)); }
  // Indices of the four depth-(k+1) children of square (k, i).
  std::array<std::uint64_t, 4> children([[maybe_unused]] int k, std::uint64_t i) const {
    std::uint64_t b = 4 * (i - 1) + 1;
    return {b, b + 1, b + 2, b + 3};
  }

 private:
  std::vector<std::vector<SquareNode>> levels_;
};

template <typename Real>
bool contains(const SquareNode& s, const Real& x, const Real& y, const Rational& margin = Rational(0)) {
  return x >= to_real<Real>(s.min_x() - margin) && x <= to_real<Real>(s.max_x() + margin) &&
         y >= to_real<Real>(s.min_y() - margin) && y <= to_real<Real>(s.max_y() + margin);
}

// Square of Q_k containing z, if any; unique because same-depth squares are disjoint.
template <typename Real>
std::optional<SquareNode> membership(const Real& x, const Real& y, int k) {
  if (k < 1) throw InvalidInput("membership: depth must be >= 1");
  SquareNode node = root_square();
  if (!contains(node, x, y)) return std::nullopt;
  for (int d = 1; d < k; ++d) {
    bool found = false;
    for (int c = 0; c < 4 && !found; ++c) {
      SquareNode child = child_square(node, c);
      if (contains(child, x, y)) {
        node = std::move(child);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return node;
}

}  // namespace anacomp::construction
