#pragma once

#include "json.hpp"

#include "anacomp/construction/certificate.hpp"
#include "anacomp/construction/kappa.hpp"
#include "anacomp/construction/squares.hpp"

namespace anacomp::construction {

inline nlohmann::json rational_json(const Rational& q) {
  return {{"num", boost::multiprecision::numerator(q).str()},
          {"den", boost::multiprecision::denominator(q).str()}};
}

inline nlohmann::json to_json(const SquareNode& s) {
  return {{"depth", s.depth},
          {"index", s.index},
          {"center", {rational_json(s.center_x), rational_json(s.center_y)}},
          {"half_side", rational_json(s.half_side)}};
}

inline nlohmann::json to_json(const NestedSquares& nested) {
  nlohmann::json levels = nlohmann::json::array();
  for (int k = 1; k <= nested.depth(); ++k) {
    nlohmann::json squares = nlohmann::json::array();
    for (const auto& s : nested.at(k)) squares.push_back(to_json(s));
    levels.push_back({{"depth", k},
                      {"count", nested.at(k).size()},
                      {"side", rational_json(side_at_depth(k))},
                      {"area", rational_json(area_of_Qk(k))},
                      {"squares", squares}});
  }
  return {{"depth", nested.depth()}, {"levels", levels}};
}

template <typename Real>
nlohmann::json to_json(const KappaTruncation<Real>& t) {
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json deltas = nlohmann::json::array();
  for (int k = 1; k <= t.L; ++k) {
    weights.push_back(to_decimal(t.weight(k)));
    deltas.push_back(rational_json(t.delta[static_cast<std::size_t>(k - 1)]));
  }
  return {{"L", t.L},
          {"precision", t.precision.label()},
          {"grid_step", t.grid_step},
          {"m_hat", t.m_hat},
          {"delta", deltas},
          {"weights", weights}};
}

template <typename Real>
nlohmann::json to_json(const InjectivityCertificate<Real>& cert) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : cert.pairs) {
    pairs.push_back({{"pair", {p.first, p.second}},
                     {"k0", p.k0},
                     {"gap", to_decimal(p.gap)},
                     {"naive_gap", to_decimal(p.naive_gap)},
                     {"bound", to_decimal(p.bound)},
                     {"pass", p.pass}});
  }
  return {{"L", cert.L},
          {"pairs_total", cert.pairs.size()},
          {"pairs_passed", cert.passed},
          {"all_pass", cert.all_pass()},
          {"pairs", pairs}};
}

}  // namespace anacomp::construction
