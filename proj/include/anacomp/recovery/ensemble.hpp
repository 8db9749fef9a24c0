#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "anacomp/errors.hpp"
#include "anacomp/seeding.hpp"

namespace anacomp::recovery {

// n x m measurement matrix with the seed and distribution it was drawn from.
struct MeasurementEnsemble {
  Eigen::MatrixXd matrix;
  std::uint64_t seed = 0;
  std::string distribution = "standard_normal";

  std::size_t n() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t m() const { return static_cast<std::size_t>(matrix.cols()); }

  static MeasurementEnsemble gaussian(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0 || m == 0) throw InvalidInput("MeasurementEnsemble: empty shape");
    if (n > m) throw InvalidInput("MeasurementEnsemble: need n <= m");
    Rng rng(seed);
    std::normal_distribution<double> normal;
    MeasurementEnsemble e;
    e.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    // Row-major fill order is part of the reproducibility contract.
    for (Eigen::Index i = 0; i < e.matrix.rows(); ++i)
      for (Eigen::Index j = 0; j < e.matrix.cols(); ++j) e.matrix(i, j) = normal(rng);
    e.seed = seed;
    return e;
  }

  static MeasurementEnsemble from_matrix(Eigen::MatrixXd a, std::string tag = "fixed") {
    if (!a.allFinite()) throw InvalidInput("MeasurementEnsemble: non-finite entry");
    MeasurementEnsemble e;
    e.matrix = std::move(a);
    e.distribution = std::move(tag);
    return e;
  }

  // Single row e_j^T of R^m (1-based j).
  static MeasurementEnsemble coordinate_row(std::size_t m, std::size_t j) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(1, static_cast<Eigen::Index>(m));
    a(0, static_cast<Eigen::Index>(j - 1)) = 1.0;
    return from_matrix(std::move(a), "e" + std::to_string(j));
  }
};

inline Eigen::VectorXd measure(const MeasurementEnsemble& a, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != a.m())
    throw InvalidInput("measure: signal has " + std::to_string(x.size()) + " entries, matrix has " +
                       std::to_string(a.m()) + " columns");
  return a.matrix * x;
}

}  // namespace anacomp::recovery
