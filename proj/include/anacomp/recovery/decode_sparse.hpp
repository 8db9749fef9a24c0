#pragma once

#include <vector>

#include <Eigen/Dense>

#include "anacomp/errors.hpp"
#include "anacomp/recovery/decode_result.hpp"

namespace anacomp::recovery {

// Consistency decoder for the s-sparse union of subspaces. Every support of
// size s is tried; the least-squares solution on A_S (complete orthogonal
// decomposition, minimum norm when A_S is rank deficient) is a candidate if
// ||A_S u - y|| <= tol (1 + ||y||). Candidates equal within tol are merged.
inline DecodeResult decode_sparse(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, std::size_t s,
                                  double tol = 1e-8) {
  if (!(tol > 0.0)) throw InvalidInput("decode_sparse: tol must be positive");
  if (y.size() != a.rows()) throw InvalidInput("decode_sparse: y length does not match A");
  const auto m = static_cast<std::size_t>(a.cols());
  if (s == 0 || s > m) throw InvalidInput("decode_sparse: need 1 <= s <= m");

  DecodeResult out;
  const double threshold = consistency_threshold(y, tol);
  std::vector<Eigen::VectorXd> cands;
  std::vector<double> residuals;

  detail::for_each_subset(m, s, [&](const std::vector<std::size_t>& support) {
    ++out.work.supports_tried;
    ++out.work.solver_iterations;
    Eigen::MatrixXd as = detail::columns(a, support);
    Eigen::VectorXd u = as.completeOrthogonalDecomposition().solve(y);
    double residual = (as * u - y).norm();
    if (residual > threshold) return;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < support.size(); ++j) x(static_cast<Eigen::Index>(support[j])) = u(static_cast<Eigen::Index>(j));
    detail::add_candidate(cands, residuals, std::move(x), residual, tol);
  });

  detail::classify(out, std::move(cands), residuals);
  return out;
}

}  // namespace anacomp::recovery
