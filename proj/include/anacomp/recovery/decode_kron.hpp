#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "anacomp/errors.hpp"
#include "anacomp/recovery/decode_result.hpp"
#include "anacomp/recovery/models.hpp"
#include "anacomp/seeding.hpp"

namespace anacomp::recovery {

inline constexpr int kMaxAlsSweeps = 200;

struct KronSolveOptions {
  double tol = 1e-8;
  int restarts = 8;
  std::uint64_t seed = 0;
  int max_sweeps = kMaxAlsSweeps;
};

namespace detail {

struct KronPairResult {
  bool accepted = false;
  double best_residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd a;
  Eigen::VectorXd b;
};

// y ~ sum_{i in Sa, j in Sb} a_i b_j A(:, i*l + j). Iterates keep a at
// unit norm; the first-entry gauge a_0 = 1 is applied to the final answer
// only, since pinning it during the solve makes the problem badly scaled
// whenever |a_0| is small relative to the other entries.
class KronPairSolver {
 public:
  KronPairSolver(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, std::size_t l,
                 const std::vector<std::size_t>& sa, const std::vector<std::size_t>& sb)
      : y_(y), r_(sa.size()), t_(sb.size()) {
    blocks_.resize(r_);
    for (std::size_t i = 0; i < r_; ++i) {
      blocks_[i].resize(a.rows(), static_cast<Eigen::Index>(t_));
      for (std::size_t j = 0; j < t_; ++j)
        blocks_[i].col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(sa[i] * l + sb[j]));
    }
  }

  Eigen::VectorXd prediction(const Eigen::VectorXd& av, const Eigen::VectorXd& bv) const { return mixed(av) * bv; }

  double residual(const Eigen::VectorXd& av, const Eigen::VectorXd& bv) const {
    return (prediction(av, bv) - y_).norm();
  }

  // sum_i a_i B_i
  Eigen::MatrixXd mixed(const Eigen::VectorXd& av) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(y_.size(), static_cast<Eigen::Index>(t_));
    for (std::size_t i = 0; i < r_; ++i) m += av(static_cast<Eigen::Index>(i)) * blocks_[i];
    return m;
  }

  // b-step: y = (sum_i a_i B_i) b
  Eigen::VectorXd solve_b(const Eigen::VectorXd& av) const { return mixed(av).completeOrthogonalDecomposition().solve(y_); }

  // [B_0 b ... B_{r-1} b], the Jacobian with respect to a
  Eigen::MatrixXd applied(const Eigen::VectorXd& bv) const {
    Eigen::MatrixXd m(y_.size(), static_cast<Eigen::Index>(r_));
    for (std::size_t i = 0; i < r_; ++i) m.col(static_cast<Eigen::Index>(i)) = blocks_[i] * bv;
    return m;
  }

  // a-step: y = [B_0 b ... B_{r-1} b] a
  Eigen::VectorXd solve_a(const Eigen::VectorXd& bv) const { return applied(bv).completeOrthogonalDecomposition().solve(y_); }

  // Linear relaxation: a (x) b lies in the span of all r*t columns, so a
  // pair whose span misses y cannot be consistent.
  double relaxed_residual() const {
    Eigen::MatrixXd m(y_.size(), static_cast<Eigen::Index>(r_ * t_));
    for (std::size_t i = 0; i < r_; ++i) m.middleCols(static_cast<Eigen::Index>(i * t_), static_cast<Eigen::Index>(t_)) = blocks_[i];
    Eigen::VectorXd c = m.completeOrthogonalDecomposition().solve(y_);
    return (m * c - y_).norm();
  }

  const Eigen::MatrixXd& block(std::size_t i) const { return blocks_[i]; }
  const Eigen::VectorXd& target() const { return y_; }
  std::size_t r() const { return r_; }
  std::size_t t() const { return t_; }

 private:
  Eigen::VectorXd y_;
  std::size_t r_;
  std::size_t t_;
  std::vector<Eigen::MatrixXd> blocks_;
};

// Levenberg-Marquardt on (a, b) from the current iterate. The scale
// direction (c a, b / c) is a null direction of the Jacobian; damping
// keeps the steps well defined.
// Returns the final residual; av and bv are updated in place.
inline double lm_refine(const KronPairSolver& solver, Eigen::VectorXd& av, Eigen::VectorXd& bv, double threshold,
                        int max_iter, DecodeWork& work) {
  const auto r = static_cast<Eigen::Index>(solver.r());
  const auto t = static_cast<Eigen::Index>(solver.t());
  double res = solver.residual(av, bv);
  double mu = 1e-3;
  for (int it = 0; it < max_iter && res > threshold; ++it) {
    ++work.solver_iterations;
    Eigen::VectorXd f = solver.prediction(av, bv) - solver.target();
    Eigen::MatrixXd jac(f.size(), r + t);
    jac.leftCols(r) = solver.applied(bv);
    jac.rightCols(t) = solver.mixed(av);
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * f;
    bool improved = false;
    while (mu < 1e12) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      Eigen::VectorXd step = damped.ldlt().solve(-g);
      Eigen::VectorXd na = av + step.head(r);
      Eigen::VectorXd nb = bv + step.tail(t);
      double next = solver.residual(na, nb);
      if (next < res) {
        improved = res - next > 1e-12 * res;
        double scale = na.norm();
        av = na / scale;
        bv = nb * scale;
        res = next;
        mu = std::max(mu * 0.3, 1e-15);
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  return res;
}

inline constexpr int kAlsWarmSweeps = 5;

// Alternating least squares warm start, then a damped Gauss-Newton polish;
// plain ALS crawls through flat valleys and often stalls short of an exact
// fit. Iteration budget per start is max_sweeps.
inline KronPairResult solve_kron_pair(const KronPairSolver& solver, double threshold, const KronSolveOptions& opt,
                                      std::uint64_t pair_seed, DecodeWork& work) {
  KronPairResult out;
  std::normal_distribution<double> normal;
  for (int restart = 0; restart < opt.restarts; ++restart) {
    Rng rng(derive_seed(pair_seed, static_cast<std::uint64_t>(restart)));
    Eigen::VectorXd av(static_cast<Eigen::Index>(solver.r()));
    for (Eigen::Index i = 0; i < av.size(); ++i) av(i) = normal(rng);
    av.normalize();
    Eigen::VectorXd bv = solver.solve_b(av);
    double res = solver.residual(av, bv);
    ++work.solver_iterations;
    int sweeps = 0;
    for (; sweeps < std::min(kAlsWarmSweeps, opt.max_sweeps) && res > threshold; ++sweeps) {
      av = solver.solve_a(bv);
      double scale = av.norm();
      if (!(scale > 0.0)) break;
      av /= scale;
      bv = solver.solve_b(av);
      res = solver.residual(av, bv);
      ++work.solver_iterations;
    }
    if (res > threshold) res = lm_refine(solver, av, bv, threshold, opt.max_sweeps - sweeps, work);
    if (res < out.best_residual) {
      out.best_residual = res;
      out.a = av;
      out.b = bv;
    }
    if (res <= threshold) {
      out.accepted = true;
      if (out.a(0) != 0.0) {
        out.b *= out.a(0);
        out.a /= out.a(0);
      }
      return out;
    }
  }
  return out;
}

}  // namespace detail

// Consistency decoder for a (x) b with |supp a| = r, |supp b| = t. Support
// pairs are enumerated lexicographically (a-support major). Each pair is
// solved by alternating least squares from `restarts` seeded starts, and
// accepted candidates are reported under the gauge a_0 = 1.
inline DecodeResult decode_kron(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, const KronModel& dims,
                                const KronSolveOptions& opt = {}) {
  if (!(opt.tol > 0.0)) throw InvalidInput("decode_kron: tol must be positive");
  if (opt.restarts < 1) throw InvalidInput("decode_kron: restarts must be >= 1");
  validate(SignalModel{dims});
  if (static_cast<std::size_t>(a.cols()) != dims.k * dims.l)
    throw InvalidInput("decode_kron: A must have k*l columns");
  if (y.size() != a.rows()) throw InvalidInput("decode_kron: y length does not match A");

  DecodeResult out;
  const double threshold = consistency_threshold(y, opt.tol);
  std::vector<Eigen::VectorXd> cands;
  std::vector<double> residuals;
  double best_rejected = std::numeric_limits<double>::infinity();
  std::uint64_t pair_index = 0;

  if (y.norm() <= threshold) {
    // x = 0 is consistent and is the only point of the model with Ax = 0 when
    // the restricted maps are injective; ALS with a_0 = 1 would never reach it.
    out.work.supports_tried = 1;
    detail::add_candidate(cands, residuals, Eigen::VectorXd::Zero(a.cols()), y.norm(), opt.tol);
    detail::classify(out, std::move(cands), residuals);
    return out;
  }

  detail::for_each_subset(dims.k, dims.r, [&](const std::vector<std::size_t>& sa) {
    detail::for_each_subset(dims.l, dims.t, [&](const std::vector<std::size_t>& sb) {
      const std::uint64_t this_pair = pair_index++;
      ++out.work.supports_tried;
      detail::KronPairSolver solver(a, y, dims.l, sa, sb);
      if (dims.r * dims.t < static_cast<std::size_t>(a.rows()) && solver.relaxed_residual() > threshold) {
        ++out.work.solver_iterations;
        return;
      }
      auto res = detail::solve_kron_pair(solver, threshold, opt, derive_seed(opt.seed, this_pair), out.work);
      if (!res.accepted) {
        best_rejected = std::min(best_rejected, res.best_residual);
        return;
      }
      Eigen::VectorXd full_a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dims.k));
      Eigen::VectorXd full_b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dims.l));
      for (std::size_t i = 0; i < sa.size(); ++i) full_a(static_cast<Eigen::Index>(sa[i])) = res.a(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < sb.size(); ++j) full_b(static_cast<Eigen::Index>(sb[j])) = res.b(static_cast<Eigen::Index>(j));
      detail::add_candidate(cands, residuals, kron(full_a, full_b), res.best_residual, opt.tol);
    });
  });

  if (cands.empty()) {
    // Near-consistent stagnation points suggest the solver, not the data.
    if (best_rejected < std::sqrt(opt.tol) * (1.0 + y.norm())) {
      out.solver_failure = true;
      out.diagnostics.push_back("solver_failure");
    } else {
      out.diagnostics.push_back("no_consistent_support");
    }
    out.residual = best_rejected;
  }
  detail::classify(out, std::move(cands), residuals);
  return out;
}

}  // namespace anacomp::recovery
