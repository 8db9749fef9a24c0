#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "anacomp/errors.hpp"
#include "anacomp/recovery/decode_result.hpp"

namespace anacomp::recovery {

inline constexpr int kCircleGrid = 4096;
inline constexpr int kCircleNewtonSteps = 60;

namespace detail {

struct CircleObjective {
  const Eigen::MatrixXd& a;
  const Eigen::VectorXd& y;

  Eigen::VectorXd residual(double z) const { return a * Eigen::Vector2d(std::cos(z), std::sin(z)) - y; }
  double value(double z) const { return 0.5 * residual(z).squaredNorm(); }

  // f' and f'' of f(z) = |A u(z) - y|^2 / 2 with u'' = -u.
  std::pair<double, double> derivatives(double z) const {
    Eigen::Vector2d u(std::cos(z), std::sin(z));
    Eigen::Vector2d du(-u(1), u(0));
    Eigen::VectorXd r = a * u - y;
    Eigen::VectorXd adu = a * du;
    return {r.dot(adu), adu.squaredNorm() - r.dot(a * u)};
  }
};

// Safeguarded Newton on f' with backtracking on f.
inline double newton_refine(const CircleObjective& f, double z, double max_step, std::size_t& iterations) {
  double fz = f.value(z);
  for (int it = 0; it < kCircleNewtonSteps; ++it) {
    ++iterations;
    auto [g, h] = f.derivatives(z);
    if (g == 0.0) break;
    double step = h > 0.0 ? -g / h : -std::copysign(max_step, g);
    if (std::abs(step) > max_step) step = std::copysign(max_step, step);
    bool moved = false;
    for (int half = 0; half < 60; ++half) {
      double next = f.value(z + step);
      if (next < fz) {
        z += step;
        fz = next;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return z;
}

inline double wrap_angle(double z) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  z = std::fmod(z, two_pi);
  return z < 0.0 ? z + two_pi : z;
}

}  // namespace detail

// Decoder for x = (cos z, sin z): every cyclic local minimum of the residual
// on a 4096-point grid is refined by Newton's method; refined points passing
// the consistency threshold are the candidates.
inline DecodeResult decode_circle(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, double tol = 1e-8) {
  if (!(tol > 0.0)) throw InvalidInput("decode_circle: tol must be positive");
  if (a.cols() != 2) throw InvalidInput("decode_circle: A must have 2 columns");
  if (y.size() != a.rows()) throw InvalidInput("decode_circle: y length does not match A");

  DecodeResult out;
  detail::CircleObjective f{a, y};
  const double h = 2.0 * std::numbers::pi / kCircleGrid;
  std::vector<double> values(kCircleGrid);
  for (int i = 0; i < kCircleGrid; ++i) values[static_cast<std::size_t>(i)] = f.value(i * h);

  const double threshold = consistency_threshold(y, tol);
  std::vector<Eigen::VectorXd> cands;
  std::vector<double> residuals;
  for (int i = 0; i < kCircleGrid; ++i) {
    double prev = values[static_cast<std::size_t>((i + kCircleGrid - 1) % kCircleGrid)];
    double next = values[static_cast<std::size_t>((i + 1) % kCircleGrid)];
    double here = values[static_cast<std::size_t>(i)];
    // Plateaus count once, at their first grid point.
    if (!(here < prev && here <= next)) continue;
    ++out.work.supports_tried;
    double z = detail::wrap_angle(detail::newton_refine(f, i * h, 2.0 * h, out.work.solver_iterations));
    double residual = f.residual(z).norm();
    if (residual > threshold) continue;
    detail::add_candidate(cands, residuals, Eigen::Vector2d(std::cos(z), std::sin(z)), residual, tol);
  }

  detail::classify(out, std::move(cands), residuals);
  return out;
}

}  // namespace anacomp::recovery
