#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "anacomp/construction/kappa.hpp"
#include "anacomp/construction/squares.hpp"
#include "anacomp/errors.hpp"

namespace anacomp::construction {

struct E3DecodeResult {
  // Empty means the error symbol: no depth-L square is consistent with y.
  std::optional<SquareNode> square;
  std::size_t nodes_visited = 0;

  bool is_error_symbol() const { return !square.has_value(); }
};

// Recovers the depth-L square of z from the single measurement y = kappa(z).
// On Q_{L,i} the truncated kappa equals sum_k (i_k / 4^(k-1)) w_k with i_k
// the depth-k ancestor index, so the square tree is descended keeping every
// child whose reachable value interval meets [y - tol, y + tol]. Leaf values
// are accumulated exactly as kappa() accumulates them.
template <typename Real>
E3DecodeResult decode_from_e3(const Real& y, const KappaTruncation<Real>& trunc, const Real& tol) {
  const int L = trunc.L;
  if (!(tol > 0)) throw InvalidInput("decode_from_e3: tol must be positive");
  Real limit = separation_lower_bound(L, trunc) / 2;
  if (!(tol < limit))
    throw InvalidInput("decode_from_e3: tol must be below half the depth-L separation bound");

  using std::abs;
  // rest_lo[k] / rest_hi[k]: range of sum_{j>k} phi_j * w_j over Q_L.
  std::vector<Real> rest_lo(static_cast<std::size_t>(L) + 1, Real(0));
  std::vector<Real> rest_hi(static_cast<std::size_t>(L) + 1, Real(0));
  for (int k = L - 1; k >= 0; --k) {
    rest_lo[static_cast<std::size_t>(k)] =
        rest_lo[static_cast<std::size_t>(k) + 1] + index_level<Real>(1, k + 1) * trunc.weight(k + 1);
    rest_hi[static_cast<std::size_t>(k)] = rest_hi[static_cast<std::size_t>(k) + 1] + trunc.weight(k + 1);
  }
  const Real slack = tol + Real(64) * machine_epsilon<Real>() * abs(y);

  E3DecodeResult result;
  std::vector<SquareNode> hits;

  struct Frame {
    SquareNode node;
    Real partial;
  };
  std::vector<Frame> stack;
  stack.push_back({root_square(), Real(0) + index_level<Real>(1, 1) * trunc.weight(1)});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    ++result.nodes_visited;
    const int k = f.node.depth;
    if (k == L) {
      if (abs(y - f.partial) <= tol) hits.push_back(f.node);
      continue;
    }
    if (y + slack < f.partial + rest_lo[static_cast<std::size_t>(k)] ||
        y - slack > f.partial + rest_hi[static_cast<std::size_t>(k)])
      continue;
    for (int c = 3; c >= 0; --c) {
      SquareNode child = child_square(f.node, c);
      Real partial = f.partial + index_level<Real>(child.index, k + 1) * trunc.weight(k + 1);
      stack.push_back({std::move(child), std::move(partial)});
    }
  }

  if (hits.size() > 1)
    throw InternalInconsistency("decode_from_e3: " + std::to_string(hits.size()) +
                                " depth-L squares consistent with y; separation bound violated");
  if (hits.size() == 1) result.square = hits.front();
  return result;
}

}  // namespace anacomp::construction
