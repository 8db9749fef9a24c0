#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "anacomp/errors.hpp"
#include "anacomp/parallel.hpp"
#include "anacomp/recovery/decode_result.hpp"
#include "anacomp/recovery/ensemble.hpp"
#include "anacomp/seeding.hpp"

namespace anacomp::nullspace {

inline constexpr double kDefaultThreshold = 1e-8;

struct SupportMinimum {
  std::vector<std::size_t> support;
  double sigma_min = 0.0;
};

// Restricted smallest singular values of A over all size-s supports.
// verdict == (global_min > threshold). boundary_caveat marks s == n, which
// lies outside the strict dimension inequality of the null-space result.
struct NullspaceReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  double threshold = kDefaultThreshold;
  std::vector<SupportMinimum> per_support;
  double global_min = 0.0;
  bool verdict = false;
  std::string reason;
  bool boundary_caveat = false;
  // Monte Carlo mode only.
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::vector<double> trial_minima;
};

inline double sigma_min(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return std::numeric_limits<double>::infinity();
  if (m.cols() > m.rows()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

inline NullspaceReport check_sparse_nullspace(const Eigen::MatrixXd& a, std::size_t s,
                                              double threshold = kDefaultThreshold) {
  if (!(threshold > 0.0)) throw InvalidInput("check_sparse_nullspace: threshold must be positive");
  if (s == 0 || s > static_cast<std::size_t>(a.cols())) throw InvalidInput("check_sparse_nullspace: need 1 <= s <= m");
  NullspaceReport rep;
  rep.n = static_cast<std::size_t>(a.rows());
  rep.m = static_cast<std::size_t>(a.cols());
  rep.s = s;
  rep.threshold = threshold;
  rep.boundary_caveat = s == rep.n;
  if (s > rep.n) {
    rep.global_min = 0.0;
    rep.verdict = false;
    rep.reason = "dimension forces nontrivial kernel";
    return rep;
  }

  std::vector<std::vector<std::size_t>> supports;
  recovery::detail::for_each_subset(rep.m, s, [&](const std::vector<std::size_t>& sup) { supports.push_back(sup); });
  rep.per_support.resize(supports.size());
  parallel_for(supports.size(), [&](std::size_t i) {
    rep.per_support[i] = {supports[i], sigma_min(recovery::detail::columns(a, supports[i]))};
  });
  rep.global_min = std::numeric_limits<double>::infinity();
  for (const auto& p : rep.per_support) rep.global_min = std::min(rep.global_min, p.sigma_min);
  rep.verdict = rep.global_min > threshold;
  rep.reason = rep.verdict ? "all restricted singular values above threshold"
                           : "restricted singular value at or below threshold";
  if (rep.boundary_caveat) rep.reason += "; s == n is outside the strict inequality s < n";
  return rep;
}

// Gaussian draws A_t = gaussian(n, m, derive_seed(seed, t)); a trial fails
// when its verdict is false.
inline NullspaceReport monte_carlo_nullspace(std::size_t n, std::size_t m, std::size_t s, std::size_t trials,
                                             std::uint64_t seed, double threshold = kDefaultThreshold) {
  if (trials == 0) throw InvalidInput("monte_carlo_nullspace: trials must be >= 1");
  if (s == 0 || s > m) throw InvalidInput("monte_carlo_nullspace: need 1 <= s <= m");
  NullspaceReport rep;
  rep.n = n;
  rep.m = m;
  rep.s = s;
  rep.threshold = threshold;
  rep.trials = trials;
  rep.boundary_caveat = s == n;
  rep.trial_minima.resize(trials);
  std::vector<char> pass(trials);
  std::vector<std::string> reasons(trials);
  parallel_for(trials, [&](std::size_t t) {
    auto a = recovery::MeasurementEnsemble::gaussian(n, m, derive_seed(seed, t));
    NullspaceReport one = check_sparse_nullspace(a.matrix, s, threshold);
    rep.trial_minima[t] = one.global_min;
    pass[t] = one.verdict;
    reasons[t] = one.reason;
  });
  rep.global_min = *std::min_element(rep.trial_minima.begin(), rep.trial_minima.end());
  for (char p : pass) rep.failures += p ? 0 : 1;
  rep.verdict = rep.failures == 0;
  rep.reason = s > n ? "dimension forces nontrivial kernel"
                     : (rep.verdict ? "no failing draw" : std::to_string(rep.failures) + " failing draws");
  if (rep.boundary_caveat) rep.reason += "; s == n is outside the strict inequality s < n";
  return rep;
}

// ker(A) meets V - x only at 0, for V the s-sparse union of subspaces:
// every A restricted to supp(x) u S, |S| = s, must be injective.
inline bool check_signal_kernel(const Eigen::MatrixXd& a, const Eigen::VectorXd& x, std::size_t s,
                                double threshold = kDefaultThreshold) {
  if (x.size() != a.cols()) throw InvalidInput("check_signal_kernel: x length does not match A");
  const auto m = static_cast<std::size_t>(a.cols());
  if (s == 0 || s > m) throw InvalidInput("check_signal_kernel: need 1 <= s <= m");
  std::vector<char> in_x(m, 0);
  for (std::size_t i = 0; i < m; ++i) in_x[i] = x(static_cast<Eigen::Index>(i)) != 0.0;
  bool ok = true;
  recovery::detail::for_each_subset(m, s, [&](const std::vector<std::size_t>& sup) {
    if (!ok) return;
    std::vector<char> mark = in_x;
    for (std::size_t j : sup) mark[j] = 1;
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < m; ++i)
      if (mark[i]) cols.push_back(i);
    if (!(sigma_min(recovery::detail::columns(a, cols)) > threshold)) ok = false;
  });
  return ok;
}

inline nlohmann::json to_json(const NullspaceReport& r) {
  nlohmann::json j = {{"n", r.n},
                      {"m", r.m},
                      {"s", r.s},
                      {"threshold", r.threshold},
                      {"supports_checked", r.per_support.size()},
                      {"global_min", r.global_min},
                      {"verdict", r.verdict},
                      {"reason", r.reason},
                      {"boundary_caveat", r.boundary_caveat}};
  if (r.trials > 0) {
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    j["trial_minima"] = r.trial_minima;
  }
  return j;
}

inline void write_support_minima_csv(std::ostream& out, const NullspaceReport& r) {
  out << "support,sigma_min\n";
  char buf[64];
  for (const auto& p : r.per_support) {
    std::string sup;
    for (std::size_t i = 0; i < p.support.size(); ++i) sup += (i ? " " : "") + std::to_string(p.support[i] + 1);
    std::snprintf(buf, sizeof buf, "%.17g", p.sigma_min);
    out << sup << ',' << buf << '\n';
  }
}

}  // namespace anacomp::nullspace
