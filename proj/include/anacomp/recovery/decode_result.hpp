#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace anacomp::recovery {

enum class DecodeStatus { recovered, error_symbol, ambiguous };

inline const char* to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::recovered: return "recovered";
    case DecodeStatus::error_symbol: return "error_symbol";
    case DecodeStatus::ambiguous: return "ambiguous";
  }
  return "unknown";
}

struct DecodeWork {
  std::size_t supports_tried = 0;
  std::size_t solver_iterations = 0;

  std::size_t total() const { return supports_tried + solver_iterations; }
};

// Outcome of a consistency decoder. error_symbol is the designated value
// declaring a decoding error; ambiguous lists the distinct consistent
// candidates in canonical (support enumeration) order.
struct DecodeResult {
  DecodeStatus status = DecodeStatus::error_symbol;
  Eigen::VectorXd x_hat;
  std::vector<Eigen::VectorXd> candidates;
  double residual = std::numeric_limits<double>::infinity();
  DecodeWork work;
  bool solver_failure = false;
  std::vector<std::string> diagnostics;
};

// ||u - v|| <= tol (1 + max(||u||, ||v||))
inline bool same_within(const Eigen::VectorXd& u, const Eigen::VectorXd& v, double tol) {
  return (u - v).norm() <= tol * (1.0 + std::max(u.norm(), v.norm()));
}

// Consistency threshold tol (1 + ||y||).
inline double consistency_threshold(const Eigen::VectorXd& y, double tol) {
  return tol * (1.0 + y.norm());
}

namespace detail {

// Keeps the first representative of every group of candidates equal
// within tol; candidate order is preserved.
inline void add_candidate(std::vector<Eigen::VectorXd>& cands, std::vector<double>& residuals,
                          Eigen::VectorXd x, double residual, double tol) {
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (same_within(cands[i], x, tol)) {
      residuals[i] = std::min(residuals[i], residual);
      return;
    }
  }
  cands.push_back(std::move(x));
  residuals.push_back(residual);
}

inline void classify(DecodeResult& out, std::vector<Eigen::VectorXd> cands, const std::vector<double>& residuals) {
  if (cands.empty()) {
    out.status = DecodeStatus::error_symbol;
    return;
  }
  out.residual = *std::min_element(residuals.begin(), residuals.end());
  if (cands.size() == 1) {
    out.status = DecodeStatus::recovered;
    out.x_hat = cands.front();
    out.residual = residuals.front();
  } else {
    out.status = DecodeStatus::ambiguous;
  }
  out.candidates = std::move(cands);
}

// Calls f(indices) for every s-subset of {0..m-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t m, std::size_t s, F&& f) {
  if (s > m) return;
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == m - s + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline Eigen::MatrixXd columns(const Eigen::MatrixXd& a, const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd out(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(cols[j]));
  return out;
}

}  // namespace detail

}  // namespace anacomp::recovery
