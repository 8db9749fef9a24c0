#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>

#include "anacomp/construction/bump.hpp"
#include "anacomp/construction/real.hpp"
#include "anacomp/construction/squares.hpp"
#include "anacomp/errors.hpp"

namespace anacomp::construction {

// Finite-difference step, in units of delta^2, used when estimating
// derivative bounds. The smooth step's transition has width ~ delta^2.
inline constexpr double kDefaultGridStep = 1.0 / 64.0;

// sup_t |d^n/dt^n smooth_step(t; a, delta)| for n = 0..max_order, by central
// differences of step h = grid_step * delta^2 on a half-step lattice that
// covers the transition [a, a + delta] plus stencil margins. The value does
// not depend on a.
inline std::vector<double> step_derivative_sups(double delta, int max_order, double grid_step) {
  if (!(grid_step > 0.0)) throw InvalidInput("grid_step must be positive");
  if (max_order < 0) throw InvalidInput("max_order must be nonnegative");
  std::vector<double> sups(static_cast<std::size_t>(max_order) + 1, 0.0);
  sups[0] = 1.0;
  if (max_order == 0) return sups;

  const double h = grid_step * delta * delta;
  const double hh = 0.5 * h;
  const double a = delta;
  const auto interior = static_cast<std::int64_t>(std::ceil(delta / hh));
  const std::int64_t pad = max_order + 1;
  std::vector<double> f(static_cast<std::size_t>(interior + 2 * pad + 1));
  for (std::size_t m = 0; m < f.size(); ++m) {
    double t = a + (static_cast<double>(m) - static_cast<double>(pad)) * hh;
    f[m] = smooth_step<double>(t, a, delta);
  }

  for (int n = 1; n <= max_order; ++n) {
    std::vector<double> coef(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
      coef[static_cast<std::size_t>(j)] =
          ((j % 2) ? -1.0 : 1.0) * boost::math::binomial_coefficient<double>(static_cast<unsigned>(n),
                                                                             static_cast<unsigned>(j));
    const double scale = std::pow(h, -n);
    double best = 0.0;
    for (std::int64_t m = n; m + n < static_cast<std::int64_t>(f.size()); ++m) {
      double acc = 0.0;
      for (int j = 0; j <= n; ++j) acc += coef[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(m + n - 2 * j)];
      best = std::max(best, std::abs(acc) * scale);
    }
    sups[static_cast<std::size_t>(n)] = best;
  }
  return sups;
}

// Estimated sup over R^2 of the order-j partials of phi_i for j = 1..max_order.
// phi_i is a sum of disjointly supported products step(z1-w1) step(z2-w2)
// whose largest coefficient is 1, so the mixed partial of orders (p, q) is
// bounded by sup|step^(p)| * sup|step^(q)|.
inline std::vector<double> phi_derivative_sups(int i, int max_order, double grid_step) {
  const double delta = bump_margin(i).convert_to<double>();
  auto s = step_derivative_sups(delta, max_order, grid_step);
  std::vector<double> d(static_cast<std::size_t>(max_order) + 1, 0.0);
  for (int j = 1; j <= max_order; ++j)
    for (int p = 0; p <= j; ++p)
      d[static_cast<std::size_t>(j)] =
          std::max(d[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(p)] * s[static_cast<std::size_t>(j - p)]);
  return d;
}

// Estimates of M_1..M_L, M_k = max_{i<=k} max_{1<=j<k} d(i, j), made
// nondecreasing by a running maximum. M_1 = 0 (empty inner range).
inline std::vector<double> estimate_M_sequence(int L, double grid_step = kDefaultGridStep) {
  if (L < 1) throw InvalidInput("estimate_M_sequence: depth must be >= 1");
  if (!(grid_step > 0.0)) throw InvalidInput("estimate_Mk: grid_step must be positive");
  std::vector<std::vector<double>> d;
  for (int i = 1; i <= L; ++i) d.push_back(phi_derivative_sups(i, L - 1, grid_step));
  std::vector<double> m(static_cast<std::size_t>(L), 0.0);
  for (int k = 2; k <= L; ++k) {
    double best = 0.0;
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j < k; ++j) best = std::max(best, d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]);
    m[static_cast<std::size_t>(k - 1)] = std::max(best, m[static_cast<std::size_t>(k - 2)]);
  }
  return m;
}

inline double estimate_Mk(int k, double grid_step = kDefaultGridStep) {
  return estimate_M_sequence(k, grid_step).back();
}

// Finite-depth data for kappa: depth L, derivative-bound estimates, bump
// margins and the series weights 1 / (8^(2^k) (M_k + 1)) at working precision.
template <typename Real>
struct KappaTruncation {
  int L = 3;
  std::vector<double> m_hat;
  std::vector<Rational> delta;
  std::vector<Real> weights;
  Precision precision;
  double grid_step = kDefaultGridStep;

  double m(int k) const { return m_hat.at(static_cast<std::size_t>(k - 1)); }
  const Real& weight(int k) const { return weights.at(static_cast<std::size_t>(k - 1)); }
};

// 8^(2^k) = 2^(3 * 2^k)
template <typename Real>
Real eight_pow_two_pow(int k) {
  using std::ldexp;
  return ldexp(Real(1), 3 * (1 << k));
}

// For Real = BigFloat the caller must hold a BigPrecisionScope matching
// `precision.bits`.
template <typename Real>
KappaTruncation<Real> make_truncation(int L, Precision precision = Precision::double_precision(),
                                      double grid_step = kDefaultGridStep) {
  constexpr bool is_double = std::is_same_v<Real, double>;
  precision.big = !is_double;
  check_depth(L, precision);
  KappaTruncation<Real> t;
  t.L = L;
  t.precision = precision;
  t.grid_step = grid_step;
  t.m_hat = estimate_M_sequence(L, grid_step);
  for (int k = 1; k <= L; ++k) {
    t.delta.push_back(bump_margin(k));
    Real denom = eight_pow_two_pow<Real>(k) * (Real(t.m_hat[static_cast<std::size_t>(k - 1)]) + Real(1));
    if constexpr (is_double) {
      if (!std::isfinite(denom))
        throw PrecisionError("8^(2^k) overflows double; enable big precision");
    }
    t.weights.push_back(Real(1) / denom);
  }
  return t;
}

// Depth-k square whose bump support (square grown by delta_k) contains z.
// Supports are pairwise disjoint within a depth and nested across depths.
template <typename Real>
std::optional<SquareNode> locate_support(int k, const Real& x, const Real& y,
                                         const KappaTruncation<Real>& trunc) {
  SquareNode node = root_square();
  if (!contains(node, x, y, trunc.delta[0])) return std::nullopt;
  for (int d = 2; d <= k; ++d) {
    bool found = false;
    for (int c = 0; c < 4 && !found; ++c) {
      SquareNode child = child_square(node, c);
      if (contains(child, x, y, trunc.delta[static_cast<std::size_t>(d - 1)])) {
        node = std::move(child);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return node;
}

template <typename Real>
BumpParams<Real> bump_for(const SquareNode& s, const Rational& delta) {
  return BumpParams<Real>(to_real<Real>(delta), to_real<Real>(s.half_side),
                          {to_real<Real>(s.center_x), to_real<Real>(s.center_y)});
}

template <typename Real>
Real index_level(std::uint64_t i, int k) {
  return Real(i) / Real(std::uint64_t{1} << (2 * (k - 1)));
}

// phi_k(z) = sum_i (i / 4^(k-1)) psi_{k,i}(z); equals i / 4^(k-1) on Q_{k,i}.
template <typename Real>
Real phi_k(int k, const Real& x, const Real& y, const KappaTruncation<Real>& trunc) {
  if (k < 1 || k > trunc.L) throw InvalidInput("phi_k: depth outside 1..L");
  auto node = locate_support(k, x, y, trunc);
  if (!node) return Real(0);
  Real psi = bump_psi(bump_for<Real>(*node, trunc.delta[static_cast<std::size_t>(k - 1)]), x, y);
  return index_level<Real>(node->index, k) * psi;
}

// Truncated series sum_{k=1}^{L} phi_k(z) * weight_k, accumulated in order k = 1..L.
template <typename Real>
Real kappa(const Real& x, const Real& y, const KappaTruncation<Real>& trunc) {
  Real acc(0);
  for (int k = 1; k <= trunc.L; ++k) acc += phi_k(k, x, y, trunc) * trunc.weight(k);
  return acc;
}

// 4 / ((M_k0 + 1) 8^(2^k0)) * (1/4^k0 - 1/8^(2^k0))
template <typename Real>
Real separation_lower_bound(int k0, const KappaTruncation<Real>& trunc) {
  if (k0 < 1 || k0 > trunc.L) throw InvalidInput("separation_lower_bound: k0 outside 1..L");
  Real big = eight_pow_two_pow<Real>(k0);
  Real lead = Real(4) / ((Real(trunc.m(k0)) + Real(1)) * big);
  return lead * (Real(1) / Real(std::uint64_t{1} << (2 * k0)) - Real(1) / big);
}

// h(z) = (z1, z2, kappa(z)) for z in Q_L.
template <typename Real>
std::array<Real, 3> embed_h(const Real& x, const Real& y, const KappaTruncation<Real>& trunc) {
  if (!membership(x, y, trunc.L)) throw DomainError("embed_h: point lies outside Q_L");
  return {x, y, kappa(x, y, trunc)};
}

}  // namespace anacomp::construction
