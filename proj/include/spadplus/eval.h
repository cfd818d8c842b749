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

// ROC AUC and the repeated-run benchmark harness.

#ifndef SPADPLUS_EVAL_H_
#define SPADPLUS_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spadplus/baselines.h"
#include "spadplus/dataset.h"
#include "spadplus/detector.h"

namespace spadplus {

// Mann-Whitney AUC: the fraction of (anomaly, normal) pairs in which the
// anomaly is scored more anomalous under `output.orientation`, ties counting
// one half. O(n log n) via midranks. Throws DetectorError for single-class
// labels.
double Auc(const DetectorOutput& output, std::span<const Label> labels);

struct NamedDataset {
  std::string name;
  LabeledDataset data;
};

struct BenchmarkOptions {
  std::size_t repeats = 10;
  std::uint64_t split_seed = 0;
  // Seeds for the randomized detectors, one per repeat. Derived from
  // split_seed when empty.
  std::vector<std::uint64_t> detector_seeds;
};

struct BenchmarkRow {
  std::string detector;
  std::string dataset;
  double mean_auc = 0.0;
  std::vector<double> run_aucs;
  std::vector<std::uint64_t> seeds;  // empty for deterministic detectors
  double fit_seconds = 0.0;
  double score_seconds = 0.0;
  double total_seconds() const { return fit_seconds + score_seconds; }
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;  // dataset-major, detectors in given order

  std::vector<std::string> Detectors() const;
  std::vector<std::string> Datasets() const;
  const BenchmarkRow& Find(const std::string& detector,
                           const std::string& dataset) const;
  // Per-dataset ranks by mean AUC (1 = best, ties share the mean rank),
  // averaged over datasets. Aligned with Detectors().
  std::vector<double> AverageRanks() const;
};

std::vector<std::uint64_t> DeriveSeeds(std::uint64_t base, std::size_t count);

// For each dataset: one semi-supervised split, min-max fitted on the training
// half and applied to both halves, then every detector fit on train and
// scored on test. Deterministic detectors run once and their AUC is copied
// across repeats; randomized ones run once per seed. Wall time of fit and
// score is summed over the runs actually executed.
BenchmarkReport Benchmark(const std::vector<NamedDataset>& datasets,
                          const std::vector<DetectorConfig>& detectors,
                          const BenchmarkOptions& options);

// Columns: detector, dataset, mean_auc, run_aucs, seeds and, when
// `include_timing`, fit_seconds, score_seconds, total_seconds.
void WriteReportCsv(std::ostream& out, const BenchmarkReport& report,
                    bool include_timing = true);
// Datasets as rows, detectors as columns, then Avg. AUC and Avg. rank rows.
void WriteAucMarkdown(std::ostream& out, const BenchmarkReport& report);
// Same layout with total runtime in seconds.
void WriteRuntimeMarkdown(std::ostream& out, const BenchmarkReport& report);

}  // namespace spadplus

#endif  // SPADPLUS_EVAL_H_
