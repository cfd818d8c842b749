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

#include "spadplus/eval.h"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "spadplus/errors.h"
#include "spadplus/synth.h"

namespace spadplus {
namespace {

using ::testing::HasSubstr;

constexpr Label kA = Label::kAnomaly;
constexpr Label kN = Label::kNormal;

DetectorOutput Higher(std::vector<double> s) {
  return {std::move(s), Orientation::kHigherIsAnomalous};
}

TEST(Auc, HandComputedCases) {
  const std::vector<Label> labels = {kA, kA, kN, kN};
  EXPECT_EQ(Auc(Higher({4, 3, 2, 1}), labels), 1.0);
  EXPECT_EQ(Auc(Higher({1, 2, 3, 4}), labels), 0.0);
  EXPECT_EQ(Auc(Higher({5, 5, 5, 5}), labels), 0.5);
  EXPECT_EQ(Auc(Higher({3, 1, 2, 0}), labels), 0.75);
  EXPECT_EQ(Auc({{4, 3, 2, 1}, Orientation::kLowerIsAnomalous}, labels), 0.0);
}

TEST(Auc, MatchesPairCounting) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    std::vector<double> scores(n);
    std::vector<Label> labels(n);
    std::vector<bool> is_anomaly(n);
    // Small integer scores force plenty of ties.
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng() % 7);
      is_anomaly[i] = rng() % 3 == 0;
    }
    is_anomaly[0] = true;
    is_anomaly[1] = false;
    for (std::size_t i = 0; i < n; ++i) labels[i] = is_anomaly[i] ? kA : kN;
    for (bool higher : {true, false}) {
      const DetectorOutput out{scores, higher ? Orientation::kHigherIsAnomalous
                                              : Orientation::kLowerIsAnomalous};
      EXPECT_NEAR(Auc(out, labels),
                  oracle::PairCountAuc(scores, is_anomaly, higher), 1e-12);
    }
  }
}

TEST(Auc, InvariantUnderNegationWithFlippedOrientation) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> g;
  std::vector<double> s(80), neg(80), warped(80);
  std::vector<Label> labels(80);
  for (std::size_t i = 0; i < 80; ++i) {
    s[i] = g(rng);
    neg[i] = -s[i];
    warped[i] = std::exp(3.0 * s[i]) + 7.0;
    labels[i] = i % 4 == 0 ? kA : kN;
  }
  const double base = Auc(Higher(s), labels);
  EXPECT_EQ(Auc({neg, Orientation::kLowerIsAnomalous}, labels), base);
  EXPECT_EQ(Auc(Higher(warped), labels), base);
  EXPECT_NEAR(Auc({s, Orientation::kLowerIsAnomalous}, labels), 1.0 - base,
              1e-12);
}

TEST(Auc, Errors) {
  const std::vector<Label> normals = {kN, kN};
  EXPECT_THROW(Auc(Higher({1, 2}), normals), DetectorError);
  const std::vector<Label> mixed = {kN, kA};
  EXPECT_THROW(Auc(Higher({1, 2, 3}), mixed), DimensionMismatch);
}

TEST(DeriveSeeds, DeterministicAndDistinct) {
  const auto a = DeriveSeeds(5, 10);
  EXPECT_EQ(a, DeriveSeeds(5, 10));
  EXPECT_NE(a, DeriveSeeds(6, 10));
  EXPECT_EQ(std::set<std::uint64_t>(a.begin(), a.end()).size(), 10u);
  // Prefix-stable: asking for fewer seeds gives a prefix.
  const auto b = DeriveSeeds(5, 4);
  EXPECT_TRUE(std::equal(b.begin(), b.end(), a.begin()));
}

std::vector<NamedDataset> SmallDatasets() {
  return {{"corr", GenerateCorrelatedGaussian({200, 0.9, 20, 1})},
          {"anti", GenerateCorrelatedGaussian({150, -0.8, 15, 2})}};
}

std::vector<DetectorConfig> AllDetectors() {
  std::vector<DetectorConfig> out;
  for (auto kind : {DetectorKind::kLof, DetectorKind::kIForest,
                    DetectorKind::kSp, DetectorKind::kSpad,
                    DetectorKind::kSpadPlus}) {
    DetectorConfig c;
    c.kind = kind;
    if (kind == DetectorKind::kIForest) c.trees = 20;
    out.push_back(c);
  }
  return out;
}

TEST(Benchmark, ReportShape) {
  const BenchmarkReport report =
      Benchmark(SmallDatasets(), AllDetectors(), {.repeats = 3, .split_seed = 4});
  ASSERT_EQ(report.rows.size(), 10u);
  EXPECT_EQ(report.Datasets(), (std::vector<std::string>{"corr", "anti"}));
  EXPECT_EQ(report.Detectors(), (std::vector<std::string>{
                                    "lof", "iforest", "sp", "spad", "spad+"}));
  EXPECT_EQ(report.rows[0].dataset, "corr");
  EXPECT_EQ(report.rows[5].dataset, "anti");
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.run_aucs.size(), 3u);
    EXPECT_GE(row.mean_auc, 0.0);
    EXPECT_LE(row.mean_auc, 1.0);
    const bool randomized = row.detector == "iforest" || row.detector == "sp";
    EXPECT_EQ(row.seeds.size(), randomized ? 3u : 0u);
    if (!randomized) {
      EXPECT_EQ(row.run_aucs[0], row.run_aucs[1]);
      EXPECT_EQ(row.run_aucs[1], row.run_aucs[2]);
    }
  }
  EXPECT_EQ(report.Find("iforest", "corr").seeds, DeriveSeeds(4, 3));
  EXPECT_THROW(report.Find("nope", "corr"), ConfigError);
}

TEST(Benchmark, AgreesWithDirectRun) {
  const auto datasets = SmallDatasets();
  DetectorConfig spad_plus;
  const BenchmarkReport report =
      Benchmark({datasets[0]}, {spad_plus}, {.repeats = 1, .split_seed = 9});
  const EvalSplit split = SemiSupervisedSplit(datasets[0].data, 9);
  const MinMaxParams norm = MinMaxParams::Fit(split.train.values());
  const auto out = RunDetector(spad_plus, norm.Apply(split.train.values()),
                               norm.Apply(split.test.values()), 0);
  EXPECT_EQ(report.rows[0].mean_auc, Auc(out, split.test.labels()));
}

TEST(Benchmark, DeterministicOutputs) {
  const BenchmarkOptions options{.repeats = 2, .split_seed = 11};
  std::ostringstream a, b, am, bm;
  const auto r1 = Benchmark(SmallDatasets(), AllDetectors(), options);
  const auto r2 = Benchmark(SmallDatasets(), AllDetectors(), options);
  WriteReportCsv(a, r1, false);
  WriteReportCsv(b, r2, false);
  WriteAucMarkdown(am, r1);
  WriteAucMarkdown(bm, r2);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(am.str(), bm.str());
  EXPECT_THAT(a.str(), HasSubstr("detector,dataset,mean_auc,run_aucs,seeds\n"));
  EXPECT_THAT(am.str(), HasSubstr("| Avg. rank |"));
}

TEST(Benchmark, ErrorsNameDetectorAndDataset) {
  // Two normals leave a single training row, too few for PCA.
  Matrix values = Matrix::FromRows({{0, 1}, {1, 0}, {5, 5}});
  LabeledDataset tiny(values, {"a", "b"}, {kN, kN, kA});
  DetectorConfig spad_plus;
  try {
    Benchmark({{"tiny", tiny}}, {spad_plus}, {.repeats = 1});
    FAIL() << "expected DetectorError";
  } catch (const DetectorError& e) {
    EXPECT_THAT(e.what(), HasSubstr("detector spad+ on tiny"));
  }
  EXPECT_THROW(Benchmark(SmallDatasets(), AllDetectors(), {.repeats = 0}),
               ConfigError);
}

BenchmarkRow Row(std::string det, std::string ds, double auc) {
  BenchmarkRow r;
  r.detector = std::move(det);
  r.dataset = std::move(ds);
  r.mean_auc = auc;
  return r;
}

TEST(BenchmarkReport, AverageRanksShareTies) {
  BenchmarkReport report;
  report.rows = {Row("a", "x", 0.9), Row("b", "x", 0.8), Row("c", "x", 0.8),
                 Row("a", "y", 0.5), Row("b", "y", 0.7), Row("c", "y", 0.6)};
  const auto ranks = report.AverageRanks();
  EXPECT_DOUBLE_EQ(ranks[0], (1.0 + 3.0) / 2.0);
  EXPECT_DOUBLE_EQ(ranks[1], (2.5 + 1.0) / 2.0);
  EXPECT_DOUBLE_EQ(ranks[2], (2.5 + 2.0) / 2.0);

  std::ostringstream md;
  WriteAucMarkdown(md, report);
  EXPECT_THAT(md.str(), HasSubstr("| Avg. AUC | 0.7000 | 0.7500 | 0.7000 |"));
  EXPECT_THAT(md.str(), HasSubstr("| Avg. rank | 2.00 | 1.75 | 2.25 |"));
}

TEST(DetectorConfig, NamesAndValidation) {
  DetectorConfig c;
  EXPECT_EQ(c.Name(), "spad+");
  c.variant = ScoreVariant::TopPcs(3);
  EXPECT_EQ(c.Name(), "spad+[top_3_pcs]");
  c.kind = DetectorKind::kLof;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_EQ(ParseDetectorKind("spadplus"), DetectorKind::kSpadPlus);
  EXPECT_EQ(ParseDetectorKind("iforest"), DetectorKind::kIForest);
  EXPECT_THROW(ParseDetectorKind("knn"), ConfigError);
  EXPECT_EQ(OrientationOf(DetectorKind::kSpad), Orientation::kLowerIsAnomalous);
  EXPECT_EQ(OrientationOf(DetectorKind::kLof), Orientation::kHigherIsAnomalous);
}

}  // namespace
}  // namespace spadplus
