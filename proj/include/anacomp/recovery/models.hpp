#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "anacomp/construction/kappa.hpp"
#include "anacomp/construction/squares.hpp"
#include "anacomp/errors.hpp"
#include "anacomp/seeding.hpp"

namespace anacomp::recovery {

// s-sparse vectors in R^m: uniform support, standard normal amplitudes.
struct SparseModel {
  std::size_t m = 0;
  std::size_t s = 0;
};

// a (x) b with a in R^k r-sparse and b in R^l t-sparse.
struct KronModel {
  std::size_t k = 0;
  std::size_t l = 0;
  std::size_t r = 0;
  std::size_t t = 0;
};

// (cos z, sin z) with z uniform on [0, 2 pi).
struct CircleModel {};

// h(z) = (z, kappa(z)) with z uniform on Q_L.
struct GraphModel {
  int L = 3;
};

using SignalModel = std::variant<SparseModel, KronModel, CircleModel, GraphModel>;

inline void validate(const SignalModel& model) {
  std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, SparseModel>) {
          if (m.s == 0 || m.m == 0 || m.s > m.m) throw InvalidInput("sparse model: need 1 <= s <= m");
        } else if constexpr (std::is_same_v<M, KronModel>) {
          if (m.r == 0 || m.t == 0 || m.r > m.k || m.t > m.l)
            throw InvalidInput("kron model: need 1 <= r <= k and 1 <= t <= l");
        } else if constexpr (std::is_same_v<M, GraphModel>) {
          if (m.L < 1 || m.L > construction::kMaxDoubleDepth)
            throw InvalidInput("graphG model: need 1 <= L <= 8");
        }
      },
      model);
}

inline std::size_t ambient_dim(const SignalModel& model) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, SparseModel>) return m.m;
        else if constexpr (std::is_same_v<M, KronModel>) return m.k * m.l;
        else if constexpr (std::is_same_v<M, CircleModel>) return 2;
        else return 3;
      },
      model);
}

inline std::string model_name(const SignalModel& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, SparseModel>)
          return "sparse{m=" + std::to_string(m.m) + ",s=" + std::to_string(m.s) + "}";
        else if constexpr (std::is_same_v<M, KronModel>)
          return "kron{k=" + std::to_string(m.k) + ",l=" + std::to_string(m.l) + ",r=" + std::to_string(m.r) +
                 ",t=" + std::to_string(m.t) + "}";
        else if constexpr (std::is_same_v<M, CircleModel>)
          return "circle";
        else
          return "graphG{L=" + std::to_string(m.L) + "}";
      },
      model);
}

// stochastic_sparsity: smallest s with x supported on finitely many
// subspaces of dimension <= s. rect_parameter: rectifiability parameter.
// converse_floor: analyticity parameter where known, i.e. the number of
// measurements below which recovery must fail.
struct ModelMetadata {
  std::size_t stochastic_sparsity = 0;
  std::size_t rect_parameter = 0;
  std::size_t min_measurements_achievable = 0;
  std::size_t converse_floor = 0;
};

inline ModelMetadata model_metadata(const SignalModel& model) {
  validate(model);
  ModelMetadata md = std::visit(
      [](const auto& m) -> ModelMetadata {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, SparseModel>)
          return {m.s, m.s, 0, m.s};
        else if constexpr (std::is_same_v<M, KronModel>)
          return {m.r * m.t, m.r + m.t - 1, 0, m.r + m.t - 1};
        else if constexpr (std::is_same_v<M, CircleModel>)
          return {2, 1, 0, 1};
        else
          return {3, 2, 0, 1};
      },
      model);
  md.min_measurements_achievable = md.rect_parameter + 1;
  return md;
}

namespace detail {

inline std::vector<std::size_t> random_support(Rng& rng, std::size_t m, std::size_t s) {
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  for (std::size_t i = 0; i < s; ++i) std::swap(idx[i], idx[i + uniform_index(rng, m - i)]);
  idx.resize(s);
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline Eigen::VectorXd sparse_vector(Rng& rng, std::size_t m, std::size_t s) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t i : random_support(rng, m, s)) v(static_cast<Eigen::Index>(i)) = normal(rng);
  return v;
}

}  // namespace detail

// kron(a, b)_(i*l + j) = a_i b_j
inline Eigen::VectorXd kron(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd x(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) x.segment(i * b.size(), b.size()) = a(i) * b;
  return x;
}

struct GraphPoint {
  double z1 = 0.0;
  double z2 = 0.0;
  std::uint64_t square = 0;
};

// Uniform point of Q_L: uniform square, then uniform position inside it.
inline GraphPoint sample_graph_point(Rng& rng, int L) {
  std::uint64_t count = std::uint64_t{1} << (2 * (L - 1));
  construction::SquareNode node = construction::root_square();
  std::uint64_t target = uniform_index(rng, count);
  for (int d = 2; d <= L; ++d) {
    int corner = static_cast<int>((target >> (2 * (L - d))) & 3u);
    node = construction::child_square(node, corner);
  }
  double lo_x = node.min_x().convert_to<double>();
  double lo_y = node.min_y().convert_to<double>();
  double side = (2 * node.half_side).convert_to<double>();
  return {lo_x + side * uniform01(rng), lo_y + side * uniform01(rng), node.index};
}

// Reproducible draw from the model under `seed`. graphG needs the truncation
// that defines kappa.
inline Eigen::VectorXd sample_signal(const SignalModel& model, std::uint64_t seed,
                                     const construction::KappaTruncation<double>* trunc = nullptr) {
  validate(model);
  Rng rng(seed);
  return std::visit(
      [&](const auto& m) -> Eigen::VectorXd {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, SparseModel>) {
          return detail::sparse_vector(rng, m.m, m.s);
        } else if constexpr (std::is_same_v<M, KronModel>) {
          Eigen::VectorXd a = detail::sparse_vector(rng, m.k, m.r);
          Eigen::VectorXd b = detail::sparse_vector(rng, m.l, m.t);
          return kron(a, b);
        } else if constexpr (std::is_same_v<M, CircleModel>) {
          double z = 2.0 * std::numbers::pi * uniform01(rng);
          return Eigen::Vector2d(std::cos(z), std::sin(z));
        } else {
          if (!trunc || trunc->L != m.L) throw InvalidInput("graphG sampling needs a depth-L truncation");
          GraphPoint p = sample_graph_point(rng, m.L);
          auto h = construction::embed_h(p.z1, p.z2, *trunc);
          return Eigen::Vector3d(h[0], h[1], h[2]);
        }
      },
      model);
}

}  // namespace anacomp::recovery
