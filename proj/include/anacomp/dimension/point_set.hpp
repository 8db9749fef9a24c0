#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "anacomp/errors.hpp"

namespace anacomp::dimension {

// Finite sample of a subset of R^m stored row-major, with its tight
// axis-aligned bounding box.
class PointSet {
 public:
  PointSet(std::size_t ambient_dim, std::vector<double> coords)
      : dim_(ambient_dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw InvalidInput("PointSet: ambient dimension must be positive");
    if (coords_.empty()) throw InvalidInput("PointSet: empty point set");
    if (coords_.size() % dim_ != 0)
      throw InvalidInput("PointSet: coordinate count is not a multiple of the dimension");
    lower_.assign(dim_, 0.0);
    upper_.assign(dim_, 0.0);
    for (std::size_t j = 0; j < dim_; ++j) lower_[j] = upper_[j] = coords_[j];
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      double v = coords_[i];
      if (!std::isfinite(v)) throw InvalidInput("PointSet: non-finite coordinate");
      std::size_t j = i % dim_;
      lower_[j] = std::min(lower_[j], v);
      upper_[j] = std::max(upper_[j], v);
    }
  }

  static PointSet from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidInput("PointSet: empty point set");
    std::size_t d = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * d);
    for (const auto& r : rows) {
      if (r.size() != d) throw InvalidInput("PointSet: ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return PointSet(d, std::move(flat));
  }

  static PointSet from_values(const std::vector<double>& values) {
    return PointSet(1, values);
  }

  std::size_t size() const { return coords_.size() / dim_; }
  std::size_t ambient_dim() const { return dim_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coords() const { return coords_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  PointSet translated(std::span<const double> shift) const {
    if (shift.size() != dim_) throw InvalidInput("PointSet::translated: dimension mismatch");
    std::vector<double> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += shift[i % dim_];
    return PointSet(dim_, std::move(c));
  }

  bool operator==(const PointSet&) const = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

// A covering of a point set by finitely many pieces.
class Partition {
 public:
  explicit Partition(std::vector<PointSet> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InvalidInput("Partition: no pieces");
    std::size_t d = pieces_.front().ambient_dim();
    for (const auto& p : pieces_)
      if (p.ambient_dim() != d) throw InvalidInput("Partition: pieces of different dimension");
  }

  // One piece per distinct point.
  static Partition singletons(const PointSet& points) {
    std::vector<PointSet> pieces;
    pieces.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto p = points.point(i);
      pieces.emplace_back(points.ambient_dim(), std::vector<double>(p.begin(), p.end()));
    }
    return Partition(std::move(pieces));
  }

  const std::vector<PointSet>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  // True if the union of the pieces equals `points` after deduplication.
  bool covers(const PointSet& points) const {
    auto rows = [](const PointSet& s, std::vector<std::vector<double>>& out) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto p = s.point(i);
        out.emplace_back(p.begin(), p.end());
      }
    };
    std::vector<std::vector<double>> a, b;
    rows(points, a);
    for (const auto& piece : pieces_) rows(piece, b);
    for (auto* v : {&a, &b}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return a == b;
  }

 private:
  std::vector<PointSet> pieces_;
};

}  // namespace anacomp::dimension
