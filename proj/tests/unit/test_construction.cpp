#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "anacomp/construction/bump.hpp"
#include "anacomp/construction/certificate.hpp"
#include "anacomp/construction/decode.hpp"
#include "anacomp/construction/io.hpp"
#include "anacomp/construction/kappa.hpp"
#include "anacomp/construction/real.hpp"
#include "anacomp/construction/squares.hpp"
#include "anacomp/errors.hpp"
#include "../support/oracles.hpp"

using namespace anacomp;
using namespace anacomp::construction;

namespace {

double to_d(const Rational& q) { return q.convert_to<double>(); }

// Uniform point inside square s, shrunk by `inset` (fraction of the side).
std::pair<double, double> point_in(const SquareNode& s, std::mt19937_64& rng, double inset = 0.0) {
  std::uniform_real_distribution<double> u(inset, 1.0 - inset);
  double side = 2 * to_d(s.half_side);
  return {to_d(s.min_x()) + side * u(rng), to_d(s.min_y()) + side * u(rng)};
}

}  // namespace

TEST(Squares, DepthOneIsUnitSquare) {
  auto q = squares_at_depth(1);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0].min_x(), 0);
  EXPECT_EQ(q[0].min_y(), 0);
  EXPECT_EQ(q[0].max_x(), 1);
  EXPECT_EQ(q[0].max_y(), 1);
}

TEST(Squares, DepthTwoHasFourCornerSquaresOfSideThreeEighths) {
  auto q = squares_at_depth(2);
  ASSERT_EQ(q.size(), 4u);
  EXPECT_EQ(side_at_depth(2), Rational(3, 8));
  std::set<std::pair<double, double>> corners;
  for (const auto& s : q) {
    EXPECT_EQ(2 * s.half_side, Rational(3, 8));
    // Each square touches one corner of the unit square.
    double cx = s.min_x() == 0 ? 0.0 : to_d(s.max_x());
    double cy = s.min_y() == 0 ? 0.0 : to_d(s.max_y());
    corners.insert({cx, cy});
  }
  EXPECT_EQ(corners, (std::set<std::pair<double, double>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
}

TEST(Squares, DepthThreeHasSixteenSquaresOfSideFiveThirtySeconds) {
  auto q = squares_at_depth(3);
  EXPECT_EQ(q.size(), 16u);
  for (const auto& s : q) EXPECT_EQ(2 * s.half_side, Rational(5, 32));
}

TEST(Squares, IndicesFollowParentMajorOrder) {
  NestedSquares n(3);
  for (std::uint64_t i = 1; i <= 4; ++i) {
    auto kids = n.children(2, i);
    for (std::uint64_t c : kids) {
      EXPECT_EQ(n.square(3, c).index, c);
      EXPECT_EQ(ancestor_index(3, c, 2), i);
    }
  }
}

TEST(Squares, ExactAreas) {
  EXPECT_EQ(area_of_Qk(1), 1);
  EXPECT_EQ(area_of_Qk(2), Rational(9, 16));
  for (int k = 1; k <= 20; ++k) {
    EXPECT_EQ(area_of_Qk(k), a_k(k) * a_k(k));
    if (k > 1) {
      EXPECT_LT(area_of_Qk(k), area_of_Qk(k - 1));
    }
  }
  EXPECT_LT(std::abs(to_d(area_of_Qk(20)) - 0.25), 1e-5);
}

TEST(Squares, NestingAndDisjointness) {
  NestedSquares n(4);
  for (int k = 1; k < 4; ++k) {
    for (const auto& child : n.at(k + 1)) {
      int parents = 0;
      for (const auto& p : n.at(k)) {
        bool inside = child.min_x() > p.min_x() || (child.min_x() == p.min_x());
        inside = inside && child.max_x() <= p.max_x() && child.min_y() >= p.min_y() && child.max_y() <= p.max_y();
        parents += inside;
      }
      EXPECT_EQ(parents, 1);
    }
    const auto& level = n.at(k + 1);
    for (std::size_t i = 0; i < level.size(); ++i)
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        bool apart = level[i].max_x() < level[j].min_x() || level[j].max_x() < level[i].min_x() ||
                     level[i].max_y() < level[j].min_y() || level[j].max_y() < level[i].min_y();
        EXPECT_TRUE(apart);
      }
  }
}

TEST(Squares, MembershipExamples) {
  for (int k = 1; k <= 6; ++k) EXPECT_TRUE(membership(0.0, 0.0, k).has_value());
  // (1/2, 1/2) lies in the gap between the depth-2 squares [0, 3/8] and [5/8, 1].
  EXPECT_TRUE(membership(0.5, 0.5, 1).has_value());
  EXPECT_FALSE(membership(0.5, 0.5, 2).has_value());
  auto top = membership(1.0, 1.0, 3);
  ASSERT_TRUE(top.has_value());
  EXPECT_EQ(top->index, 16u);
}

TEST(Squares, MembershipIsNested) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 2000; ++t) {
    double x = u(rng), y = u(rng);
    for (int k = 1; k < 5; ++k)
      if (membership(x, y, k + 1)) {
        EXPECT_TRUE(membership(x, y, k).has_value());
      }
  }
}

TEST(Squares, DoubleDepthLimit) {
  EXPECT_THROW(squares_at_depth(9), PrecisionError);
  EXPECT_THROW(NestedSquares(0), InvalidInput);
  EXPECT_NO_THROW(check_depth(9, Precision::big_precision()));
}

TEST(Bump, Examples) {
  BumpParams<double> p(0.5, 0.25, {0.0, 0.0});
  EXPECT_EQ(bump_psi(p, 0.1, 0.2), 1.0);
  EXPECT_EQ(bump_psi(p, 0.8, 0.0), 0.0);
  EXPECT_EQ(bump_psi(p, 0.5, 0.0), 0.5);
  EXPECT_EQ(bump_psi(p, -0.5, 0.5), 0.25);
  EXPECT_THROW(BumpParams<double>(0.0, 0.2, {0.0, 0.0}), InvalidInput);
}

TEST(Bump, MatchesExponentialFormOfTheStep) {
  for (double t = 0.0; t <= 0.31; t += 0.001)
    EXPECT_NEAR(smooth_step(t, 0.2, 0.1), oracle::step(t, 0.2, 0.1), 1e-14) << t;
}

TEST(Bump, ProductVanishesWhenEitherCoordinateIsFar) {
  BumpParams<double> p(0.1, 0.2, {0.5, 0.5});
  EXPECT_EQ(bump_psi(p, 0.5, 0.81), 0.0);
  EXPECT_EQ(bump_psi(p, 0.19, 0.5), 0.0);
}

TEST(Phi, Examples) {
  auto t = make_truncation<double>(3);
  EXPECT_EQ(phi_k(1, 0.3, 0.6, t), 1.0);
  EXPECT_EQ(phi_k(2, 0.0, 0.0, t), 0.25);
  EXPECT_EQ(phi_k(2, 1.0, 1.0, t), 1.0);
}

TEST(Phi, PlateauOnEverySquare) {
  auto t = make_truncation<double>(4);
  std::mt19937_64 rng(11);
  for (int k = 1; k <= 4; ++k)
    for (const auto& s : squares_at_depth(k))
      for (int r = 0; r < 5; ++r) {
        auto [x, y] = point_in(s, rng);
        EXPECT_EQ(phi_k(k, x, y, t), static_cast<double>(s.index) / std::ldexp(1.0, 2 * (k - 1)));
      }
}

TEST(Phi, MatchesSumOverAllSquares) {
  auto t = make_truncation<double>(3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.3, 1.3);
  for (int r = 0; r < 400; ++r) {
    double x = u(rng), y = u(rng);
    for (int k = 1; k <= 3; ++k)
      EXPECT_NEAR(phi_k(k, x, y, t), oracle::phi(k, x, y, to_d(t.delta[static_cast<std::size_t>(k - 1)])), 1e-13)
          << x << "," << y << " k=" << k;
  }
}

TEST(Margins, QuarterOfMinimumGap) {
  EXPECT_EQ(bump_margin(1), Rational(1, 4));
  for (int k = 2; k <= 8; ++k) {
    EXPECT_EQ(min_gap_at_depth(k), side_at_depth(k - 1) - 2 * side_at_depth(k));
    EXPECT_EQ(bump_margin(k), Rational(1, Integer(1) << (2 * k)));
  }
}

TEST(DerivativeBounds, FirstIsZeroAndSequenceNondecreasing) {
  EXPECT_EQ(estimate_Mk(1), 0.0);
  auto m = estimate_M_sequence(5);
  for (std::size_t i = 1; i < m.size(); ++i) EXPECT_GE(m[i], m[i - 1]);
  EXPECT_THROW(estimate_Mk(2, 0.0), InvalidInput);
  EXPECT_THROW(estimate_Mk(2, -1.0), InvalidInput);
}

TEST(DerivativeBounds, SecondMatchesRefinedGridFiniteDifferences) {
  // The oracle differentiates the full two-dimensional phi_2 across the edge
  // of square Q_{2,4} with step delta^2 / 4096 (delta = 1/16); result 511.9998.
  const double frozen = 511.9998377;
  const double delta = 1.0 / 16;
  auto s = oracle::squares(2)[3];
  double h = delta * delta / 4096, best = 0.0;
  for (double x = s.cx + s.half; x <= s.cx + s.half + delta; x += 64 * h) {
    double d = (oracle::phi(2, x + h, s.cy, delta) - oracle::phi(2, x - h, s.cy, delta)) / (2 * h);
    best = std::max(best, std::abs(d));
  }
  EXPECT_NEAR(best, frozen, 0.05 * frozen);
  EXPECT_NEAR(estimate_Mk(2), frozen, 0.05 * frozen);
}

TEST(Kappa, DepthOneAtOrigin) {
  auto t = make_truncation<double>(1);
  EXPECT_EQ(kappa(0.0, 0.0, t), 1.0 / 64);
}

TEST(Kappa, VanishesOutsideSupport) {
  auto t = make_truncation<double>(3);
  EXPECT_EQ(kappa(-0.3, 0.5, t), 0.0);
  EXPECT_EQ(kappa(0.5, 1.26, t), 0.0);
}

TEST(Kappa, RangeBelowOneSeventh) {
  auto t = make_truncation<double>(4);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int r = 0; r < 5000; ++r) {
    double v = kappa(u(rng), u(rng), t);
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0 / 7);
  }
}

TEST(Kappa, MatchesBruteForceSeries) {
  auto t = make_truncation<double>(3);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.1, 1.1);
  for (int r = 0; r < 300; ++r) {
    double x = u(rng), y = u(rng);
    double want = 0.0;
    for (int k = 1; k <= 3; ++k) {
      double w = 1.0 / (std::pow(8.0, std::pow(2.0, k)) * (t.m(k) + 1.0));
      want += oracle::phi(k, x, y, to_d(t.delta[static_cast<std::size_t>(k - 1)])) * w;
    }
    EXPECT_NEAR(kappa(x, y, t), want, 1e-16);
  }
}

TEST(Kappa, BigPrecisionAgreesWithDouble) {
  BigPrecisionScope scope(256);
  auto tb = make_truncation<BigFloat>(3, Precision::big_precision(256));
  auto td = make_truncation<double>(3);
  for (double x : {0.01, 0.2, 0.37, 0.7, 0.99})
    for (double y : {0.0, 0.4, 0.63, 0.9}) {
      BigFloat kb = kappa(BigFloat(x), BigFloat(y), tb);
      EXPECT_NEAR(kb.convert_to<double>(), kappa(x, y, td), 1e-17);
    }
}

TEST(Kappa, WeightsFollowFormula) {
  auto t = make_truncation<double>(3);
  EXPECT_EQ(t.weight(1), 1.0 / 64);
  for (int k = 1; k <= 3; ++k)
    EXPECT_DOUBLE_EQ(t.weight(k), 1.0 / (std::pow(8.0, std::pow(2.0, k)) * (t.m(k) + 1.0)));
}

TEST(Kappa, DepthBeyondDoubleRangeNeedsBigPrecision) {
  EXPECT_THROW(make_truncation<double>(9), PrecisionError);
  BigPrecisionScope scope(256);
  EXPECT_NO_THROW(make_truncation<BigFloat>(9, Precision::big_precision(256)));
}

TEST(Separation, DepthOneValue) {
  auto t = make_truncation<double>(3);
  EXPECT_NEAR(separation_lower_bound(1, t), 15.0 / 1024, 1e-17);
}

TEST(Separation, DepthTwoMatchesRecomputation) {
  auto t = make_truncation<double>(3);
  double m2 = t.m(2);
  double want = 4.0 / ((m2 + 1.0) * 4096.0) * (1.0 / 16 - 1.0 / 4096);
  EXPECT_NEAR(separation_lower_bound(2, t), want, 1e-15 * want);
  for (int k = 1; k <= 3; ++k) EXPECT_GT(separation_lower_bound(k, t), 0.0);
  EXPECT_THROW(separation_lower_bound(4, t), InvalidInput);
}

TEST(Embed, RejectsPointsOutsideQL) {
  auto t = make_truncation<double>(3);
  EXPECT_THROW(embed_h(0.5, 0.5, t), DomainError);
  auto h = embed_h(0.0, 0.0, t);
  EXPECT_EQ(h[0], 0.0);
  EXPECT_EQ(h[2], kappa(0.0, 0.0, t));
}

TEST(Certificate, AllPairsPassAtDepthThree) {
  auto cert = certify_injectivity(make_truncation<double>(3));
  EXPECT_EQ(cert.pairs.size(), 120u);
  EXPECT_TRUE(cert.all_pass());
  for (const auto& p : cert.pairs) {
    EXPECT_EQ(p.k0, first_differing_depth(3, p.first, p.second));
    EXPECT_GE(p.gap, p.bound);
  }
}

TEST(Certificate, DepthTwoAndDepthFourBig) {
  EXPECT_TRUE(certify_injectivity(make_truncation<double>(2)).all_pass());
  BigPrecisionScope scope(256);
  auto cert = certify_injectivity(make_truncation<BigFloat>(4, Precision::big_precision(256)));
  EXPECT_EQ(cert.pairs.size(), 64u * 63u / 2u);
  EXPECT_TRUE(cert.all_pass());
}

TEST(Certificate, JsonCarriesCounts) {
  auto cert = certify_injectivity(make_truncation<double>(2));
  auto j = to_json(cert);
  EXPECT_EQ(j["pairs_total"], 6);
  EXPECT_EQ(j["all_pass"], true);
  EXPECT_EQ(j["pairs"][0]["pair"][0], 1);
}

TEST(DecodeE3, CentersRoundTrip) {
  auto t = make_truncation<double>(3);
  double tol = separation_lower_bound(3, t) / 4;
  for (const auto& s : squares_at_depth(3)) {
    auto res = decode_from_e3(kappa(to_d(s.center_x), to_d(s.center_y), t), t, tol);
    ASSERT_TRUE(res.square.has_value());
    EXPECT_EQ(res.square->index, s.index);
  }
}

TEST(DecodeE3, RandomPointsAndPerturbations) {
  auto t = make_truncation<double>(3);
  double tol = separation_lower_bound(3, t) / 4;
  std::mt19937_64 rng(99);
  auto level = squares_at_depth(3);
  for (int r = 0; r < 300; ++r) {
    const auto& s = level[rng() % level.size()];
    auto [x, y] = point_in(s, rng);
    double v = kappa(x, y, t);
    for (double eps : {0.0, 0.5 * tol, -0.5 * tol}) {
      auto res = decode_from_e3(v + eps, t, tol);
      ASSERT_TRUE(res.square.has_value());
      EXPECT_EQ(res.square->index, s.index);
    }
  }
}

TEST(DecodeE3, OutOfRangeIsErrorSymbol) {
  auto t = make_truncation<double>(3);
  double tol = separation_lower_bound(3, t) / 4;
  EXPECT_TRUE(decode_from_e3(1.0, t, tol).is_error_symbol());
  EXPECT_TRUE(decode_from_e3(-0.01, t, tol).is_error_symbol());
  EXPECT_THROW(decode_from_e3(0.01, t, separation_lower_bound(3, t)), InvalidInput);
  EXPECT_THROW(decode_from_e3(0.01, t, 0.0), InvalidInput);
}

TEST(DecodeE3, BigPrecisionDepthFive) {
  BigPrecisionScope scope(256);
  auto t = make_truncation<BigFloat>(5, Precision::big_precision(256));
  BigFloat tol = separation_lower_bound(5, t) / 4;
  std::mt19937_64 rng(4);
  auto level = squares_at_depth(5, t.precision);
  for (int r = 0; r < 40; ++r) {
    const auto& s = level[rng() % level.size()];
    auto [x, y] = point_in(s, rng);
    auto res = decode_from_e3(kappa(BigFloat(x), BigFloat(y), t), t, tol);
    ASSERT_TRUE(res.square.has_value());
    EXPECT_EQ(res.square->index, s.index);
  }
}

TEST(ConstructionIo, SquaresJsonUsesExactRationals) {
  auto j = to_json(NestedSquares(2));
  EXPECT_EQ(j["levels"][1]["count"], 4);
  EXPECT_EQ(j["levels"][1]["side"]["num"], "3");
  EXPECT_EQ(j["levels"][1]["side"]["den"], "8");
  EXPECT_EQ(j["levels"][1]["area"]["num"], "9");
}
