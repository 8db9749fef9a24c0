#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "anacomp/dimension/estimate.hpp"
#include "anacomp/dimension/ifs.hpp"
#include "anacomp/dimension/point_set.hpp"
#include "anacomp/errors.hpp"

namespace anacomp::dimension {

namespace detail {

inline std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
  }
  return out;
}

inline double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidInput("not a number: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput("not a number: '" + s + "'");
  }
}

}  // namespace detail

// CSV with header x1,...,xm and one point per row.
inline PointSet read_point_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("point CSV: missing header");
  auto header = detail::split_commas(line);
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] != "x" + std::to_string(j + 1))
      throw InvalidInput("point CSV: header must be x1,...,xm");
  const std::size_t d = header.size();
  std::vector<double> coords;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = detail::split_commas(line);
    if (cells.size() != d)
      throw InvalidInput("point CSV: row " + std::to_string(row) + " has wrong arity");
    for (const auto& c : cells) coords.push_back(detail::parse_double(c));
  }
  return PointSet(d, std::move(coords));
}

inline void write_point_csv(std::ostream& out, const PointSet& points) {
  for (std::size_t j = 0; j < points.ambient_dim(); ++j)
    out << (j ? "," : "") << 'x' << (j + 1);
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto p = points.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      auto res = std::to_chars(buf, buf + sizeof(buf), p[j]);
      out << (j ? "," : "") << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

// {"maps": [{"matrix": [[...],...], "offset": [...]}, ...], "ratios": [...]}
inline IfsSystem ifs_from_json(const nlohmann::json& j) {
  try {
    std::vector<AffineMap> maps;
    for (const auto& m : j.at("maps")) {
      auto rows = m.at("matrix").get<std::vector<std::vector<double>>>();
      auto off = m.at("offset").get<std::vector<double>>();
      const auto d = static_cast<Eigen::Index>(off.size());
      if (static_cast<Eigen::Index>(rows.size()) != d)
        throw InvalidInput("IFS JSON: matrix/offset dimension mismatch");
      AffineMap map{Eigen::MatrixXd(d, d), Eigen::VectorXd(d)};
      for (Eigen::Index r = 0; r < d; ++r) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != d)
          throw InvalidInput("IFS JSON: matrix is not square");
        for (Eigen::Index c = 0; c < d; ++c)
          map.linear(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        map.offset(r) = off[static_cast<std::size_t>(r)];
      }
      maps.push_back(std::move(map));
    }
    return IfsSystem(std::move(maps), j.at("ratios").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("IFS JSON: ") + e.what());
  }
}

inline nlohmann::json to_json(const IfsSystem& system) {
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& m : system.maps()) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.linear.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.linear.cols(); ++c) row.push_back(m.linear(r, c));
      rows.push_back(row);
    }
    maps.push_back({{"matrix", rows},
                    {"offset", std::vector<double>(m.offset.data(), m.offset.data() + m.offset.size())}});
  }
  return {{"maps", maps}, {"ratios", system.ratios()}};
}

inline nlohmann::json to_json(const DimensionEstimate& est) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& c : est.counts) counts.push_back({{"rho", c.rho}, {"count", c.count}});
  return {{"counts", counts},
          {"slope_lower", est.slope_lower},
          {"slope_upper", est.slope_upper},
          {"slope_global", est.slope_global},
          {"raw_slope_lower", est.raw_lower},
          {"raw_slope_upper", est.raw_upper},
          {"raw_slope_global", est.raw_global},
          {"rejected_scales", est.rejected_scales},
          {"out_of_range", est.out_of_range},
          {"non_monotone_counts", est.non_monotone_counts},
          {"warnings", est.warnings},
          {"surrogate", "finite-scale grid box counts; windowed min/max slopes stand in for liminf/limsup"}};
}

inline void write_counts_csv(std::ostream& out, const DimensionEstimate& est) {
  out << "rho,count\n";
  char buf[32];
  for (const auto& c : est.counts) {
    auto res = std::to_chars(buf, buf + sizeof(buf), c.rho);
    out << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << ',' << c.count << '\n';
  }
}

}  // namespace anacomp::dimension
