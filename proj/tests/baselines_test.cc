/*
 * Copyright 2026 The SPAD+ Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "spadplus/baselines.h"

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "oracles.h"
#include "spadplus/errors.h"

namespace spadplus {
namespace {

Matrix Grid(int width, int height) {
  Matrix m(0, 2);
  for (int x = 0; x < width; ++x)
    for (int y = 0; y < height; ++y)
      m.AppendRow(std::vector<double>{double(x), double(y)});
  return m;
}

TEST(Lof, UniformGridCentreIsInlier) {
  const LofModel lof = LofModel::Fit(Grid(20, 10), 14);
  const double centre = lof.Score(std::vector<double>{10.0, 5.0});
  EXPECT_GE(centre, 0.8);
  EXPECT_LE(centre, 1.2);
}

TEST(Lof, DistantProbeOutscoresCluster) {
  const Matrix grid = Grid(20, 10);
  const LofModel lof = LofModel::Fit(grid);
  EXPECT_EQ(lof.k(), 14u);
  const double far = lof.Score(std::vector<double>{100.0, 100.0});
  for (double s : lof.ScoreRows(grid)) EXPECT_GT(far, s);
}

TEST(Lof, TiedNeighboursOnALine) {
  const LofModel lof = LofModel::Fit(Matrix::FromRows({{0}, {1}, {2}}), 1);
  EXPECT_EQ(lof.k_distance(1), 1.0);
  EXPECT_EQ(lof.lrd(0), 1.0);
  EXPECT_EQ(lof.lrd(1), 1.0);
  EXPECT_EQ(lof.Score(std::vector<double>{1.0}), 1.0);
  EXPECT_EQ(lof.Score(std::vector<double>{0.5}), 1.0);
}

void ExpectMatchesOracle(const oracle::Rows& train, const oracle::Rows& test,
                         std::size_t k) {
  const LofModel lof = LofModel::Fit(Matrix::FromRows(train), k);
  const oracle::Lof reference(train, k);
  for (const auto& q : test) {
    const double expected = reference.Score(q);
    EXPECT_NEAR(lof.Score(q), expected, 1e-9 * std::max(1.0, expected));
  }
}

TEST(Lof, MatchesTextbookDefinition) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 10 + rng() % 50;
    const std::size_t m = 1 + rng() % 4;
    const std::size_t k = 1 + rng() % (n - 1);
    ExpectMatchesOracle(oracle::RandomRows(rng, n, m),
                        oracle::RandomRows(rng, 20, m, -0.5, 1.5), k);
  }
}

TEST(Lof, MatchesTextbookDefinitionWithTies) {
  // Integer lattice points have many equidistant neighbours.
  oracle::Rows train;
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 5; ++y) train.push_back({double(x), double(y * y)});
  const oracle::Rows test = {{2, 4}, {2.5, 4}, {-3, 0}, {10, 10}, {1, 1}};
  for (std::size_t k : {1u, 2u, 3u, 4u, 5u, 8u}) {
    ExpectMatchesOracle(train, test, k);
  }
}

TEST(Lof, InvariantUnderRigidMotion) {
  std::mt19937_64 rng(8);
  const auto train = oracle::RandomRows(rng, 60, 2);
  const auto test = oracle::RandomRows(rng, 30, 2, -1.0, 2.0);
  const double angle = 0.7, c = std::cos(angle), s = std::sin(angle);
  const auto move = [&](const oracle::Rows& rows) {
    oracle::Rows out;
    for (const auto& r : rows) {
      out.push_back({c * r[0] - s * r[1] + 5.0, s * r[0] + c * r[1] - 3.0});
    }
    return out;
  };
  const LofModel a = LofModel::Fit(Matrix::FromRows(train));
  const LofModel b = LofModel::Fit(Matrix::FromRows(move(train)));
  const auto moved = move(test);
  for (std::size_t i = 0; i < test.size(); ++i) {
    EXPECT_NEAR(a.Score(test[i]), b.Score(moved[i]), 1e-9);
  }
}

TEST(Lof, Errors) {
  const Matrix three = Matrix::FromRows({{0}, {1}, {2}});
  EXPECT_THROW(LofModel::Fit(three, 3), DetectorError);
  EXPECT_THROW(LofModel::Fit(three, 0), DetectorError);
  EXPECT_THROW(LofModel::Fit(three).Score(std::vector<double>{1, 2}),
               DimensionMismatch);
}

TEST(Lof, DuplicateNeighbourhoodsStayFinite) {
  const LofModel lof =
      LofModel::Fit(Matrix::FromRows({{0}, {0}, {0}, {5}}), 2);
  EXPECT_TRUE(std::isinf(lof.lrd(0)));
  EXPECT_EQ(lof.Score(std::vector<double>{0.0}), 1.0);
  const double off = lof.Score(std::vector<double>{5.0});
  EXPECT_TRUE(std::isfinite(off));
  EXPECT_GT(off, 1.0);
}

TEST(IsolationForest, PathAdjustment) {
  EXPECT_EQ(AveragePathAdjustment(0), 0.0);
  EXPECT_EQ(AveragePathAdjustment(1), 0.0);
  EXPECT_DOUBLE_EQ(AveragePathAdjustment(2), 1.0);
  EXPECT_DOUBLE_EQ(AveragePathAdjustment(3), 5.0 / 3.0);
  // 2 (H(255) - 255/256), harmonic sum taken exactly.
  double h = 0.0;
  for (int i = 1; i <= 255; ++i) h += 1.0 / i;
  EXPECT_NEAR(AveragePathAdjustment(256), 2.0 * (h - 255.0 / 256.0), 1e-12);
}

TEST(IsolationForest, PathLengthsStayWithinHeightLimit) {
  std::mt19937_64 rng(9);
  for (std::size_t psi : {2u, 16u, 256u}) {
    const Matrix train = Matrix::FromRows(oracle::RandomRows(rng, 400, 3));
    const IsolationForest forest =
        IsolationForest::Fit(train, {.num_trees = 20, .subsample_size = psi, .seed = psi});
    const std::size_t limit = static_cast<std::size_t>(std::log2(psi));
    EXPECT_EQ(forest.height_limit(), limit);
    const double bound = limit + AveragePathAdjustment(psi);
    for (const auto& q : oracle::RandomRows(rng, 50, 3, -1.0, 2.0)) {
      for (std::size_t t = 0; t < forest.num_trees(); ++t) {
        EXPECT_LE(forest.Depth(t, q), limit);
        EXPECT_GE(forest.PathLength(t, q), 0.0);
        EXPECT_LE(forest.PathLength(t, q), bound);
      }
    }
  }
}

TEST(IsolationForest, PairSubsampleNeverAdjusts) {
  std::mt19937_64 rng(18);
  const Matrix train = Matrix::FromRows(oracle::RandomRows(rng, 50, 2));
  const IsolationForest forest =
      IsolationForest::Fit(train, {.num_trees = 100, .subsample_size = 2, .seed = 4});
  for (const auto& q : oracle::RandomRows(rng, 50, 2, -1.0, 2.0)) {
    for (std::size_t t = 0; t < forest.num_trees(); ++t) {
      EXPECT_LE(forest.PathLength(t, q), 1.0);
    }
  }
}

TEST(IsolationForest, LeavesPartitionTheSubsample) {
  std::mt19937_64 rng(10);
  const Matrix train = Matrix::FromRows(oracle::RandomRows(rng, 100, 4));
  const IsolationForest forest = IsolationForest::Fit(train, {.seed = 3});
  EXPECT_EQ(forest.subsample_size(), 100u);
  for (std::size_t t = 0; t < forest.num_trees(); ++t) {
    std::size_t total = 0;
    for (const auto& node : forest.tree(t)) {
      if (node.split_dim == IsolationForest::Node::kLeaf) total += node.size;
    }
    EXPECT_EQ(total, 100u);
  }
}

TEST(IsolationForest, RemotePointIsolatesFaster) {
  std::mt19937_64 rng(11);
  const Matrix train = Matrix::FromRows(oracle::RandomRows(rng, 500, 2));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const IsolationForest forest = IsolationForest::Fit(train, {.seed = seed});
    EXPECT_LT(forest.Score(std::vector<double>{5.0, 5.0}),
              forest.Score(std::vector<double>{0.5, 0.5}));
  }
}

TEST(IsolationForest, RemotePointBeatsClusterCentroid) {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> g(0.0, 0.1);
  Matrix train(0, 2);
  for (int i = 0; i < 100; ++i) train.AppendRow(std::vector<double>{g(rng), g(rng)});
  train.AppendRow(std::vector<double>{3.0, 3.0});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const IsolationForest forest =
        IsolationForest::Fit(train, {.num_trees = 100, .subsample_size = 64, .seed = seed});
    EXPECT_LT(forest.Score(std::vector<double>{3.0, 3.0}),
              forest.Score(std::vector<double>{0.0, 0.0}));
  }
}

TEST(IsolationForest, SeedDeterminesForest) {
  std::mt19937_64 rng(12);
  const Matrix train = Matrix::FromRows(oracle::RandomRows(rng, 300, 3));
  const auto a = IsolationForest::Fit(train, {.seed = 1});
  const auto b = IsolationForest::Fit(train, {.seed = 1});
  const auto c = IsolationForest::Fit(train, {.seed = 2});
  EXPECT_EQ(a.ScoreRows(train), b.ScoreRows(train));
  EXPECT_NE(a.ScoreRows(train), c.ScoreRows(train));
  for (std::size_t t = 0; t < a.num_trees(); ++t) EXPECT_EQ(a.tree(t), b.tree(t));
}

TEST(IsolationForest, ConstantDataIsASingleLeaf) {
  const Matrix train(10, 2, 1.0);
  const IsolationForest forest = IsolationForest::Fit(train, {.num_trees = 3});
  EXPECT_EQ(forest.tree(0).size(), 1u);
  EXPECT_DOUBLE_EQ(forest.Score(std::vector<double>{1.0, 1.0}),
                   AveragePathAdjustment(10));
}

TEST(IsolationForest, Errors) {
  EXPECT_THROW(IsolationForest::Fit(Matrix::FromRows({{1.0}})), DetectorError);
  const Matrix two = Matrix::FromRows({{1.0}, {2.0}});
  EXPECT_THROW(IsolationForest::Fit(two, {.num_trees = 0}), ConfigError);
  EXPECT_THROW(IsolationForest::Fit(two, {.subsample_size = 0}), ConfigError);
}

TEST(Sp, MembersScoreZero) {
  const Matrix sample = Matrix::FromRows({{0.0, 1.0}, {3.0, 4.0}});
  const SpModel sp(sample);
  EXPECT_EQ(sp.Score(sample.row(0)), 0.0);
  EXPECT_EQ(sp.Score(sample.row(1)), 0.0);
}

TEST(Sp, NearestSampleDistance) {
  const SpModel sp(Matrix::FromRows({{0.0}, {10.0}}));
  EXPECT_EQ(sp.Score(std::vector<double>{4.0}), 4.0);
  EXPECT_EQ(sp.Score(std::vector<double>{-2.0}), 2.0);
}

TEST(Sp, FullSampleMatchesScan) {
  std::mt19937_64 rng(13);
  const auto train = oracle::RandomRows(rng, 20, 3);
  const SpModel sp = SpModel::Fit(Matrix::FromRows(train), 25, 4);
  EXPECT_EQ(sp.subsample().rows(), 20u);
  for (const auto& q : oracle::RandomRows(rng, 100, 3, -1.0, 2.0)) {
    EXPECT_DOUBLE_EQ(sp.Score(q), oracle::MinDistance(train, q));
  }
}

TEST(Sp, SubsampleMatchesScanOverSameRows) {
  std::mt19937_64 rng(20);
  const Matrix train = Matrix::FromRows(oracle::RandomRows(rng, 1000, 3));
  const SpModel sp = SpModel::Fit(train, 25, 6);
  oracle::Rows sample;
  for (std::size_t i = 0; i < sp.subsample().rows(); ++i) {
    const auto row = sp.subsample().row(i);
    sample.emplace_back(row.begin(), row.end());
  }
  ASSERT_EQ(sample.size(), 25u);
  for (const auto& q : oracle::RandomRows(rng, 200, 3)) {
    EXPECT_EQ(sp.Score(q), oracle::MinDistance(sample, q));
  }
}

TEST(Sp, LargerSampleNeverScoresHigher) {
  std::mt19937_64 rng(14);
  const auto rows = oracle::RandomRows(rng, 40, 2);
  const Matrix all = Matrix::FromRows(rows);
  std::vector<std::size_t> order(40);
  for (std::size_t i = 0; i < 40; ++i) order[i] = i;
  const SpModel small(all.SelectRows(std::span(order).first(10)));
  const SpModel large(all.SelectRows(std::span(order).first(30)));
  for (const auto& q : oracle::RandomRows(rng, 100, 2, -1.0, 2.0)) {
    EXPECT_LE(large.Score(q), small.Score(q));
  }
}

TEST(Sp, SubsampleIsDrawnFromTraining) {
  std::mt19937_64 rng(15);
  const Matrix train = Matrix::FromRows(oracle::RandomRows(rng, 200, 2));
  const SpModel sp = SpModel::Fit(train, 25, 99);
  EXPECT_EQ(sp.subsample().rows(), 25u);
  for (std::size_t i = 0; i < 25; ++i) {
    EXPECT_EQ(sp.Score(sp.subsample().row(i)), 0.0);
  }
  EXPECT_EQ(SpModel::Fit(train, 25, 99).subsample(), sp.subsample());
  EXPECT_THROW(SpModel::Fit(Matrix(0, 2)), DetectorError);
  EXPECT_THROW(SpModel::Fit(train, 0), ConfigError);
}

TEST(SampleWithoutReplacement, DistinctIndicesInRange) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 100;
    const std::size_t k = rng() % (n + 1);
    const auto picked = SampleWithoutReplacement(n, k, rng);
    EXPECT_EQ(picked.size(), k);
    const std::set<std::size_t> unique(picked.begin(), picked.end());
    EXPECT_EQ(unique.size(), k);
    for (std::size_t i : picked) EXPECT_LT(i, n);
  }
}

}  // namespace
}  // namespace spadplus
