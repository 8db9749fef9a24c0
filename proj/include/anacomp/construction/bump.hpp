#pragma once

#include <array>
#include <cmath>

#include "anacomp/errors.hpp"

namespace anacomp::construction {

template <typename Real = double>
struct BumpParams {
  Real delta;
  Real a;
  std::array<Real, 2> w;

  BumpParams(Real delta_, Real a_, std::array<Real, 2> w_)
      : delta(std::move(delta_)), a(std::move(a_)), w(std::move(w_)) {
    if (!(delta > 0) || !(a > 0)) throw InvalidInput("BumpParams: delta and a must be positive");
  }
};

// One-dimensional smooth step: 1 on |t| <= a, 0 on |t| >= a + delta, and
// f(a+delta-|t|) / (f(a+delta-|t|) + f(|t|-a)) with f(t) = exp(-1/t) between.
// The ratio is evaluated as a logistic so neither exponential underflows.
template <typename Real>
Real smooth_step(const Real& t, const Real& a, const Real& delta) {
  using std::abs;
  using std::exp;
  Real r = abs(t);
  if (r <= a) return Real(1);
  if (r >= a + delta) return Real(0);
  Real inner = (a + delta) - r;
  Real outer = r - a;
  return Real(1) / (Real(1) + exp(Real(1) / inner - Real(1) / outer));
}

// psi(z) = step(z1 - w1) * step(z2 - w2). The product vanishes as soon as
// either coordinate deviation reaches a + delta.
template <typename Real>
Real bump_psi(const BumpParams<Real>& p, const Real& z1, const Real& z2) {
  Real f1 = smooth_step<Real>(z1 - p.w[0], p.a, p.delta);
  if (f1 == 0) return Real(0);
  return f1 * smooth_step<Real>(z2 - p.w[1], p.a, p.delta);
}

}  // namespace anacomp::construction
