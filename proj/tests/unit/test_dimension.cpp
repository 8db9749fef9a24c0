#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "anacomp/dimension/box_count.hpp"
#include "anacomp/dimension/estimate.hpp"
#include "anacomp/dimension/ifs.hpp"
#include "anacomp/dimension/io.hpp"
#include "anacomp/dimension/point_set.hpp"
#include "anacomp/errors.hpp"
#include "../support/oracles.hpp"

using namespace anacomp;
using namespace anacomp::dimension;

namespace {

PointSet harmonic_set(int last) {
  std::vector<double> v{0.0};
  for (int n = 2; n <= last; ++n) v.push_back(1.0 / n);
  return PointSet::from_values(v);
}

PointSet grid_2d(int n) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rows.push_back({i / double(n - 1), j / double(n - 1)});
  return PointSet::from_rows(rows);
}

PointSet random_cloud(std::uint64_t seed, std::size_t n, std::size_t d) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(n * d);
  for (auto& x : c) x = u(rng);
  return PointSet(d, c);
}

}  // namespace

TEST(PointSet, RejectsEmptyAndRaggedInput) {
  EXPECT_THROW(PointSet(1, {}), InvalidInput);
  EXPECT_THROW(PointSet(2, {1.0, 2.0, 3.0}), InvalidInput);
  EXPECT_THROW(PointSet::from_rows({{1.0, 2.0}, {3.0}}), InvalidInput);
}

TEST(PointSet, BoundingBoxIsTight) {
  auto p = PointSet::from_rows({{0.5, -1.0}, {2.0, 3.0}, {1.0, 0.0}});
  EXPECT_EQ(p.lower(), (std::vector<double>{0.5, -1.0}));
  EXPECT_EQ(p.upper(), (std::vector<double>{2.0, 3.0}));
}

TEST(BoxCount, LastCellIsClosed) {
  auto p = PointSet::from_values({0.0, 0.25, 0.5, 0.75, 1.0});
  EXPECT_EQ(box_count(p, 0.25), 4u);
}

TEST(BoxCount, SinglePointIsOneBox) {
  auto p = PointSet::from_rows({{0.3, 0.7, -2.0}});
  for (double rho : {1.0, 0.1, 1e-6}) EXPECT_EQ(box_count(p, rho), 1u);
}

TEST(BoxCount, RejectsNonPositiveRadius) {
  auto p = PointSet::from_values({0.0, 1.0});
  EXPECT_THROW(box_count(p, 0.0), InvalidInput);
  EXPECT_THROW(box_count(p, -1.0), InvalidInput);
}

TEST(BoxCount, HarmonicSetAtOneEighthMatchesExhaustiveCellEnumeration) {
  auto f = harmonic_set(200);
  // Frozen from oracle::box_count; the oracle is re-run as a cross-check.
  EXPECT_EQ(box_count(f, 1.0 / 8.0), 4u);
  EXPECT_EQ(box_count(f, 1.0 / 8.0), oracle::box_count(f, 1.0 / 8.0));
}

TEST(BoxCount, AgreesWithExhaustiveEnumerationOnRandomClouds) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto cloud = random_cloud(seed, 60, 1 + seed % 3);
    for (double rho : {0.5, 0.3, 0.17, 0.09}) EXPECT_EQ(box_count(cloud, rho), oracle::box_count(cloud, rho)) << seed;
  }
  auto f = harmonic_set(300);
  for (int k = 1; k <= 9; ++k) EXPECT_EQ(box_count(f, std::ldexp(1.0, -k)), oracle::box_count(f, std::ldexp(1.0, -k)));
}

TEST(BoxCount, MonotoneOnNestedLadders) {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    auto cloud = random_cloud(seed, 400, 2);
    std::size_t prev = 0;
    for (int k = 0; k <= 9; ++k) {
      std::size_t n = box_count(cloud, std::ldexp(1.0, -k));
      EXPECT_GE(n, prev);
      prev = n;
    }
  }
}

TEST(BoxCount, AnchoredGridsAreNotMonotoneForArbitraryRadii) {
  // Documented limitation: with bbox-anchored grids a slightly smaller rho
  // can shift cell boundaries so that fewer cells are occupied.
  auto p = PointSet::from_values({0.0, 0.49, 0.51, 1.0});
  EXPECT_EQ(box_count(p, 0.25), 4u);
  EXPECT_EQ(box_count(p, 0.245), 3u);
}

TEST(BoxCount, TranslationInvariant) {
  auto cloud = random_cloud(3, 300, 2);
  auto moved = cloud.translated(std::vector<double>{0.375, -12.5});
  for (int k = 1; k <= 7; ++k) EXPECT_EQ(box_count(cloud, std::ldexp(1.0, -k)), box_count(moved, std::ldexp(1.0, -k)));
}

TEST(Estimate, DenseGridIsTwoDimensional) {
  auto est = estimate_minkowski(grid_2d(200), ScaleLadder::geometric(2, 2, 6));
  EXPECT_NEAR(est.slope_global, 2.0, 0.1);
  EXPECT_FALSE(est.out_of_range);
}

TEST(Estimate, CantorSampleNearLog2OverLog3) {
  auto cantor = ifs_generate(IfsSystem::cantor(), Deterministic{10});
  auto est = estimate_minkowski(cantor, ScaleLadder::geometric(3, 2, 9));
  EXPECT_NEAR(est.slope_global, std::log(2.0) / std::log(3.0), 0.05);
  EXPECT_LE(est.slope_lower, est.slope_upper);
}

TEST(Estimate, HarmonicSetSlopeNearOneHalf) {
  auto est = estimate_minkowski(harmonic_set(2000), ScaleLadder::geometric(2, 3, 10));
  EXPECT_GE(est.slope_global, 0.4);
  EXPECT_LE(est.slope_global, 0.6);
}

TEST(Estimate, ResolutionGuardDropsFineScales) {
  auto pts = PointSet::from_values({0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
  auto est = estimate_minkowski(pts, ScaleLadder({0.5, 0.25, 0.125, 0.0625, 0.01}));
  // median spacing 0.1, so every rho < 0.2 is dropped
  ASSERT_EQ(est.rejected_scales.size(), 3u);
  EXPECT_FALSE(est.warnings.empty());
  EXPECT_THROW(estimate_minkowski(pts, ScaleLadder({0.15, 0.01})), InvalidInput);
}

TEST(Estimate, SlopesAreClampedAndFlagged) {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    auto est = estimate_minkowski(random_cloud(seed, 50, 1), ScaleLadder::geometric(2, 0, 3));
    for (double s : {est.slope_lower, est.slope_upper, est.slope_global}) {
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
    }
    bool outside = est.raw_lower < -kSlopeRangeSlack || est.raw_upper > 1.0 + kSlopeRangeSlack ||
                   est.raw_global < -kSlopeRangeSlack || est.raw_global > 1.0 + kSlopeRangeSlack;
    EXPECT_EQ(est.out_of_range, outside);
  }
}

TEST(Estimate, TranslationGivesIdenticalEstimate) {
  auto cloud = ifs_generate(IfsSystem::sierpinski(), ChaosGame{5000, 9});
  auto ladder = ScaleLadder::geometric(2, 1, 5);
  auto a = estimate_minkowski(cloud, ladder);
  auto b = estimate_minkowski(cloud.translated(std::vector<double>{3.0, -7.25}), ladder);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.slope_global, b.slope_global);
  EXPECT_EQ(a.slope_lower, b.slope_lower);
  EXPECT_EQ(a.slope_upper, b.slope_upper);
}

TEST(ScaleLadderTest, Validates) {
  EXPECT_THROW(ScaleLadder({0.5}), InvalidInput);
  EXPECT_THROW(ScaleLadder({0.5, 0.5}), InvalidInput);
  EXPECT_THROW(ScaleLadder({0.5, -0.1}), InvalidInput);
  EXPECT_THROW(ScaleLadder({0.5, 0.25}, 3), InvalidInput);
  EXPECT_THROW(ScaleLadder({0.5, 0.25}, 1), InvalidInput);
  auto g = ScaleLadder::geometric(2, 2, 4);
  EXPECT_EQ(g.radii(), (std::vector<double>{0.25, 0.125, 0.0625}));
}

TEST(Modified, SinglePieceEqualsPlainEstimate) {
  auto f = harmonic_set(500);
  auto ladder = ScaleLadder::geometric(2, 2, 8);
  auto plain = estimate_minkowski(f, ladder);
  auto mod = estimate_modified(Partition({f}), ladder);
  EXPECT_EQ(mod.combined.slope_global, plain.slope_global);
  EXPECT_EQ(mod.combined.slope_upper, plain.slope_upper);
  EXPECT_EQ(mod.combined.slope_lower, plain.slope_lower);
}

TEST(Modified, SingletonPartitionOfHarmonicSetHasZeroUpperSlope) {
  auto f = harmonic_set(2000);
  auto part = Partition::singletons(f);
  EXPECT_TRUE(part.covers(f));
  auto mod = estimate_modified(part, ScaleLadder::geometric(2, 3, 10));
  EXPECT_EQ(mod.combined.slope_upper, 0.0);
}

TEST(Modified, TwoSegmentsGiveOne) {
  std::vector<std::vector<double>> h, v;
  for (int i = 0; i <= 1000; ++i) {
    h.push_back({i / 1000.0, 0.0});
    v.push_back({0.0, i / 1000.0});
  }
  auto a = PointSet::from_rows(h);
  auto b = PointSet::from_rows(v);
  // Per-piece counts from the exhaustive oracle: 2^k at rho = 2^-k.
  for (int k = 2; k <= 6; ++k) {
    EXPECT_EQ(oracle::box_count(a, std::ldexp(1.0, -k)), std::size_t{1} << k);
    EXPECT_EQ(box_count(a, std::ldexp(1.0, -k)), std::size_t{1} << k);
    EXPECT_EQ(box_count(b, std::ldexp(1.0, -k)), std::size_t{1} << k);
  }
  auto mod = estimate_modified(Partition({a, b}), ScaleLadder::geometric(2, 2, 6));
  EXPECT_NEAR(mod.combined.slope_global, 1.0, 1e-12);
}

TEST(Modified, EqualsMaximumOfPieces) {
  auto ladder = ScaleLadder::geometric(2, 2, 7);
  std::vector<PointSet> pieces{harmonic_set(400), ifs_generate(IfsSystem::cantor(), Deterministic{8}),
                               random_cloud(4, 2000, 1)};
  auto mod = estimate_modified(Partition(pieces), ladder);
  double lo = 0, up = 0, gl = 0;
  for (const auto& p : pieces) {
    auto e = estimate_minkowski(p, ladder);
    lo = std::max(lo, e.slope_lower);
    up = std::max(up, e.slope_upper);
    gl = std::max(gl, e.slope_global);
  }
  EXPECT_EQ(mod.combined.slope_lower, lo);
  EXPECT_EQ(mod.combined.slope_upper, up);
  EXPECT_EQ(mod.combined.slope_global, gl);
}

TEST(Attractor, ClosedForms) {
  EXPECT_NEAR(attractor_dimension(std::vector<double>{1.0 / 3, 1.0 / 3}).value, std::log(2.0) / std::log(3.0), 1e-10);
  EXPECT_NEAR(attractor_dimension(std::vector<double>{0.5, 0.5, 0.5}).value, std::log2(3.0), 1e-10);
  EXPECT_NEAR(attractor_dimension(std::vector<double>{0.5, 0.25, 0.25}).value, 1.0, 1e-12);
}

TEST(Attractor, SingleRatioIsDegenerate) {
  auto d = attractor_dimension(std::vector<double>{0.5});
  EXPECT_EQ(d.value, 0.0);
  EXPECT_TRUE(d.degenerate);
}

TEST(Attractor, RejectsRatiosOutsideUnitInterval) {
  EXPECT_THROW(attractor_dimension(std::vector<double>{0.5, 1.0}), InvalidInput);
  EXPECT_THROW(attractor_dimension(std::vector<double>{0.0, 0.5}), InvalidInput);
  EXPECT_THROW(attractor_dimension(std::vector<double>{}), InvalidInput);
}

TEST(Attractor, ResidualBelowTolerance) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.01, 0.95);
  std::uniform_int_distribution<int> k(2, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(static_cast<std::size_t>(k(rng)));
    for (auto& x : c) x = u(rng);
    double d = attractor_dimension(c).value;
    double s = 0.0;
    for (double x : c) s += std::pow(x, d);
    EXPECT_LT(std::abs(s - 1.0), 1e-12);
  }
}

TEST(Attractor, NondecreasingInEachRatio) {
  std::vector<double> c{0.2, 0.3, 0.4};
  for (std::size_t i = 0; i < c.size(); ++i) {
    double prev = -1.0;
    for (double r = 0.05; r < 0.95; r += 0.05) {
      auto cc = c;
      cc[i] = r;
      double d = attractor_dimension(cc).value;
      EXPECT_GE(d, prev);
      prev = d;
    }
  }
}

TEST(Ifs, CantorDepthTwo) {
  auto p = ifs_generate(IfsSystem::cantor(), Deterministic{2});
  ASSERT_EQ(p.size(), 4u);
  std::vector<double> got{p.point(0)[0], p.point(1)[0], p.point(2)[0], p.point(3)[0]};
  std::vector<double> want{0.0, 2.0 / 9.0, 2.0 / 3.0, 8.0 / 9.0};
  std::sort(got.begin(), got.end());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[i], 1e-15);
}

TEST(Ifs, DeterministicCountIsKToTheDepth) {
  EXPECT_EQ(ifs_generate(IfsSystem::sierpinski(), Deterministic{5}).size(), 243u);
  EXPECT_EQ(ifs_generate(IfsSystem::cantor(), Deterministic{7}).size(), 128u);
}

TEST(Ifs, ChaosGameIsDeterministicPerSeed) {
  auto a = ifs_generate(IfsSystem::sierpinski(), ChaosGame{3000, 5});
  auto b = ifs_generate(IfsSystem::sierpinski(), ChaosGame{3000, 5});
  auto c = ifs_generate(IfsSystem::sierpinski(), ChaosGame{3000, 6});
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
}

TEST(Ifs, RatioMismatchIsReported) {
  IfsSystem s({{Eigen::MatrixXd::Constant(1, 1, 0.5), Eigen::VectorXd::Zero(1)},
               {Eigen::MatrixXd::Constant(1, 1, 0.5), Eigen::VectorXd::Constant(1, 0.5)}},
              {0.5, 0.4});
  EXPECT_NEAR(s.ratio_mismatch(), 0.1, 1e-12);
  EXPECT_LT(IfsSystem::cantor().ratio_mismatch(), 1e-15);
}

TEST(DimensionIo, PointCsvRoundTrip) {
  auto p = ifs_generate(IfsSystem::sierpinski(), ChaosGame{100, 3});
  std::stringstream ss;
  write_point_csv(ss, p);
  auto q = read_point_csv(ss);
  EXPECT_TRUE(p == q);
}

TEST(DimensionIo, PointCsvRejectsBadHeaderAndArity) {
  std::stringstream bad_header("a,b\n1,2\n");
  EXPECT_THROW(read_point_csv(bad_header), InvalidInput);
  std::stringstream bad_row("x1,x2\n1,2\n3\n");
  EXPECT_THROW(read_point_csv(bad_row), InvalidInput);
  std::stringstream bad_number("x1\nabc\n");
  EXPECT_THROW(read_point_csv(bad_number), InvalidInput);
}

TEST(DimensionIo, IfsJsonRoundTrip) {
  auto s = IfsSystem::sierpinski();
  auto t = ifs_from_json(to_json(s));
  auto a = ifs_generate(s, ChaosGame{500, 1});
  auto b = ifs_generate(t, ChaosGame{500, 1});
  EXPECT_TRUE(a == b);
  EXPECT_THROW(ifs_from_json(nlohmann::json::parse(R"({"maps": []})")), InvalidInput);
}
