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

#include "spadplus/histogram.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oracles.h"
#include "spadplus/errors.h"

namespace spadplus {
namespace {

HistogramModel Unit(std::size_t n, std::vector<std::vector<std::uint64_t>>
                                       counts) {
  std::vector<HistogramDimension> dims;
  for (auto& c : counts) dims.push_back({0.0, 1.0, c});
  const std::size_t b = dims.front().counts.size();
  return HistogramModel(n, b, dims);
}

TEST(DefaultBinCount, FloorLog2PlusOne) {
  EXPECT_EQ(DefaultBinCount(1), 1u);
  EXPECT_EQ(DefaultBinCount(8), 4u);
  EXPECT_EQ(DefaultBinCount(112), 7u);
  EXPECT_EQ(DefaultBinCount(250), 8u);
  EXPECT_EQ(DefaultBinCount(1000), 10u);
  EXPECT_EQ(DefaultBinCount(1023), 10u);
  EXPECT_EQ(DefaultBinCount(1024), 11u);
}

TEST(BinIndex, UnitWidthBins) {
  const auto model = Unit(1, {{1, 0, 0, 0, 0, 0}});
  EXPECT_EQ(model.BinIndex(0, 0.5), 3u);
  EXPECT_EQ(model.BinIndex(0, -7.0), 0u);
  EXPECT_EQ(model.BinIndex(0, 7.0), 5u);
  EXPECT_EQ(model.BinIndex(0, 3.0), 5u);   // right edge
  EXPECT_EQ(model.BinIndex(0, -3.0), 0u);  // left edge
  EXPECT_EQ(model.BinIndex(0, std::nan("")), 0u);
}

TEST(BinIndex, ZeroStddevIsSingleBin) {
  const HistogramModel model(4, 3, {{5.0, 0.0, {4, 0, 0}}});
  EXPECT_EQ(model.BinIndex(0, 5.0), 0u);
  EXPECT_EQ(model.BinIndex(0, -100.0), 0u);
  EXPECT_EQ(model.BinIndex(0, 100.0), 0u);
}

TEST(FitHistograms, DefaultBinsAndDegenerateColumn) {
  const auto model = FitHistograms(Matrix::FromRows({{0}, {0}, {0}, {0}}));
  EXPECT_EQ(model.num_bins(), 3u);
  EXPECT_EQ(model.dimension(0).stddev, 0.0);
  EXPECT_EQ(model.dimension(0).counts[0], 4u);
  EXPECT_EQ(FitHistograms(Matrix(8, 1)).num_bins(), 4u);
}

TEST(FitHistograms, PopulationStddev) {
  const auto model = FitHistograms(Matrix::FromRows({{1}, {3}}), 2);
  EXPECT_EQ(model.dimension(0).mean, 2.0);
  EXPECT_EQ(model.dimension(0).stddev, 1.0);
}

TEST(FitHistograms, UniformCountsMatchIndependentScan) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix train(100, 1);
  for (std::size_t r = 0; r < 100; ++r) train(r, 0) = u(rng);
  const auto model = FitHistograms(train);
  const auto& counts = model.dimension(0).counts;
  EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}),
            100u);
  // Recount with explicit edges.
  const double lo = model.dimension(0).mean - 3 * model.dimension(0).stddev;
  const double w = 6 * model.dimension(0).stddev / model.num_bins();
  std::vector<std::uint64_t> recount(model.num_bins(), 0);
  for (std::size_t r = 0; r < 100; ++r) {
    std::size_t j = 0;
    while (j + 1 < model.num_bins() && train(r, 0) >= lo + (j + 1) * w) ++j;
    ++recount[j];
  }
  EXPECT_EQ(recount, counts);
}

TEST(FitHistograms, Errors) {
  EXPECT_THROW(FitHistograms(Matrix()), DetectorError);
  EXPECT_THROW(FitHistograms(Matrix(3, 1), 0), ConfigError);
  EXPECT_THROW(HistogramModel(4, 2, {{0.0, 1.0, {1, 1}}}), ParseError);
}

TEST(SpadScore, SingleTerm) {
  const auto model = Unit(4, {{0, 4, 0}});
  EXPECT_DOUBLE_EQ(model.Score(std::vector<double>{0.0}), -0.3364722366212129);
  EXPECT_DOUBLE_EQ(model.Score(std::vector<double>{-2.5}),
                   -1.9459101490553135);
}

TEST(SpadScore, TwoTerms) {
  const auto model =
      Unit(100, {{0, 20, 50, 30, 0, 0, 0}, {0, 10, 20, 40, 20, 10, 0}});
  const std::vector<double> x{-1.0, -1.5};
  ASSERT_EQ(model.BinIndex(0, x[0]), 2u);
  ASSERT_EQ(model.BinIndex(1, x[1]), 1u);
  // log(51/107) + log(11/107)
  EXPECT_NEAR(model.Score(x), -3.015936763401116, 1e-12);
}

TEST(SpadScore, DimensionMismatch) {
  const auto model = Unit(4, {{0, 4, 0}});
  EXPECT_THROW(model.Score(std::vector<double>{1.0, 2.0}), DimensionMismatch);
}

TEST(SpadScore, MatchesBruteForceRecount) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    const std::size_t m = 1 + rng() % 3;
    const auto rows = oracle::RandomRows(rng, n, m, -2.0, 5.0);
    const auto model = FitHistograms(Matrix::FromRows(rows));
    const auto queries = oracle::RandomRows(rng, 10, m, -4.0, 7.0);
    for (const auto& q : queries) {
      EXPECT_NEAR(model.Score(q), oracle::SpadScore(rows, q, model.num_bins()),
                  1e-12);
    }
    for (const auto& q : rows) {
      EXPECT_NEAR(model.Score(q), oracle::SpadScore(rows, q, model.num_bins()),
                  1e-12);
    }
  }
}

TEST(SpadScore, BoundsAndMonotonicity) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 200;
    const std::size_t m = 1 + rng() % 6;
    const Matrix train = Matrix::FromRows(oracle::RandomRows(rng, n, m));
    const auto model = FitHistograms(train);
    for (const auto& q : oracle::RandomRows(rng, 20, m, -1.0, 2.0)) {
      const double s = model.Score(q);
      EXPECT_GE(s, model.MinScore() - 1e-12);
      EXPECT_LE(s, model.MaxScore() + 1e-12);

      // Moving one coordinate into a denser bin raises the score.
      const std::size_t dim = rng() % m;
      const auto& d = model.dimension(dim);
      auto other = q;
      other[dim] = d.mean;  // any other in-range bin works
      const auto c1 = d.counts[model.BinIndex(dim, q[dim])];
      const auto c2 = d.counts[model.BinIndex(dim, other[dim])];
      if (c1 < c2) EXPECT_LT(s, model.Score(other));
      if (c1 > c2) EXPECT_GT(s, model.Score(other));
    }
  }
}

TEST(SpadScore, FeaturePermutationInvariant) {
  std::mt19937_64 rng(3);
  const auto rows = oracle::RandomRows(rng, 60, 4);
  auto permuted = rows;
  const std::vector<std::size_t> perm{2, 0, 3, 1};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < 4; ++c) permuted[r][c] = rows[r][perm[c]];
  }
  const auto a = FitHistograms(Matrix::FromRows(rows));
  const auto b = FitHistograms(Matrix::FromRows(permuted));
  for (const auto& q : oracle::RandomRows(rng, 30, 4)) {
    std::vector<double> qp(4);
    for (std::size_t c = 0; c < 4; ++c) qp[c] = q[perm[c]];
    EXPECT_NEAR(a.Score(q), b.Score(qp), 1e-12);
  }
}

TEST(HistogramIo, RoundTrip) {
  std::mt19937_64 rng(8);
  const auto model =
      FitHistograms(Matrix::FromRows(oracle::RandomRows(rng, 37, 3)));
  std::stringstream ss;
  WriteHistogram(ss, model);
  EXPECT_EQ(ReadHistogram(ss), model);
}

TEST(HistogramIo, RejectsInconsistentCounts) {
  std::stringstream ss("histogram 4 1 2\n0 1 1 2\n");
  EXPECT_THROW(ReadHistogram(ss), ParseError);
  std::stringstream truncated("histogram 4 1 2\n0 1 1\n");
  EXPECT_THROW(ReadHistogram(truncated), ParseError);
}

}  // namespace
}  // namespace spadplus
