#pragma once

#include <cstdint>
#include <vector>

#include "anacomp/construction/kappa.hpp"
#include "anacomp/construction/squares.hpp"
#include "anacomp/parallel.hpp"

namespace anacomp::construction {

template <typename Real>
struct PairCertificate {
  std::uint64_t first = 0;
  std::uint64_t second = 0;
  int k0 = 0;
  Real gap{};        // |kappa(c1) - kappa(c2)| summed term by term
  Real naive_gap{};  // difference of the two separately evaluated kappa values
  Real bound{};
  bool pass = false;
};

template <typename Real>
struct InjectivityCertificate {
  int L = 0;
  std::vector<PairCertificate<Real>> pairs;
  std::size_t passed = 0;

  bool all_pass() const { return passed == pairs.size(); }
};

// Checks |kappa(c_i) - kappa(c_j)| >= separation_lower_bound(k0) for every
// pair of depth-L square centers, k0 being the first depth at which the two
// squares separate. The gap is accumulated from per-depth differences of
// the series terms; those for k < k0 vanish exactly, so the shared leading
// terms cause no cancellation. BigFloat runs single-threaded because the
// working precision is thread-local.
template <typename Real>
InjectivityCertificate<Real> certify_injectivity(const KappaTruncation<Real>& trunc) {
  const int L = trunc.L;
  auto squares = squares_at_depth(L, trunc.precision);
  const std::size_t n = squares.size();

  std::vector<std::vector<Real>> terms(n);
  std::vector<Real> values(n);
  parallel_for(n, [&](std::size_t s) {
    Real x = to_real<Real>(squares[s].center_x);
    Real y = to_real<Real>(squares[s].center_y);
    Real acc(0);
    for (int k = 1; k <= L; ++k) {
      Real term = phi_k(k, x, y, trunc) * trunc.weight(k);
      terms[s].push_back(term);
      acc += term;
    }
    values[s] = acc;
  }, std::is_same_v<Real, double> ? 0u : 1u);

  std::vector<Real> bounds;
  for (int k = 1; k <= L; ++k) bounds.push_back(separation_lower_bound(k, trunc));

  InjectivityCertificate<Real> cert;
  cert.L = L;
  cert.pairs.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      PairCertificate<Real> p;
      p.first = squares[a].index;
      p.second = squares[b].index;
      p.k0 = first_differing_depth(L, p.first, p.second);
      Real diff(0);
      for (int k = 1; k <= L; ++k)
        diff += terms[a][static_cast<std::size_t>(k - 1)] - terms[b][static_cast<std::size_t>(k - 1)];
      using std::abs;
      p.gap = abs(diff);
      p.naive_gap = abs(values[a] - values[b]);
      p.bound = bounds[static_cast<std::size_t>(p.k0 - 1)];
      p.pass = p.gap >= p.bound;
      if (p.pass) ++cert.passed;
      cert.pairs.push_back(std::move(p));
    }
  }
  return cert;
}

}  // namespace anacomp::construction
