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

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <utility>

#include "spadplus/errors.h"

namespace spadplus {
namespace {

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

template <typename T, typename Fn>
std::string Join(const std::vector<T>& items, char sep, Fn format) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += format(items[i]);
  }
  return out;
}

// Midranks (1-based, ties averaged) of `values`.
std::vector<double> MidRanks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

void WriteMarkdownTable(
    std::ostream& out, const BenchmarkReport& report,
    const std::function<std::string(const BenchmarkRow&)>& cell) {
  const auto detectors = report.Detectors();
  out << "| Name |";
  for (const auto& d : detectors) out << ' ' << d << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < detectors.size(); ++i) out << "---:|";
  out << '\n';
  for (const auto& dataset : report.Datasets()) {
    out << "| " << dataset << " |";
    for (const auto& d : detectors) {
      out << ' ' << cell(report.Find(d, dataset)) << " |";
    }
    out << '\n';
  }
}

}  // namespace

double Auc(const DetectorOutput& output, std::span<const Label> labels) {
  if (output.scores.size() != labels.size()) {
    throw DimensionMismatch("AUC: " + std::to_string(output.scores.size()) +
                            " scores for " + std::to_string(labels.size()) +
                            " labels");
  }
  std::vector<double> anomalousness(output.scores);
  if (output.orientation == Orientation::kLowerIsAnomalous) {
    for (double& s : anomalousness) s = -s;
  }
  const std::vector<double> ranks = MidRanks(anomalousness);
  double rank_sum = 0.0;
  std::size_t anomalies = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::kAnomaly) {
      rank_sum += ranks[i];
      ++anomalies;
    }
  }
  const std::size_t normals = labels.size() - anomalies;
  if (anomalies == 0 || normals == 0) {
    throw DetectorError("AUC needs at least one anomaly and one normal label");
  }
  const double a = static_cast<double>(anomalies);
  const double wins = rank_sum - a * (a + 1.0) / 2.0;
  return wins / (a * static_cast<double>(normals));
}

std::vector<std::string> BenchmarkReport::Detectors() const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    if (std::find(out.begin(), out.end(), row.detector) == out.end()) {
      out.push_back(row.detector);
    }
  }
  return out;
}

std::vector<std::string> BenchmarkReport::Datasets() const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    if (std::find(out.begin(), out.end(), row.dataset) == out.end()) {
      out.push_back(row.dataset);
    }
  }
  return out;
}

const BenchmarkRow& BenchmarkReport::Find(const std::string& detector,
                                          const std::string& dataset) const {
  for (const auto& row : rows) {
    if (row.detector == detector && row.dataset == dataset) return row;
  }
  throw ConfigError("no report row for " + detector + " on " + dataset);
}

std::vector<double> BenchmarkReport::AverageRanks() const {
  const auto detectors = Detectors();
  const auto datasets = Datasets();
  std::vector<double> totals(detectors.size(), 0.0);
  for (const auto& dataset : datasets) {
    std::vector<double> negated;
    for (const auto& d : detectors) negated.push_back(-Find(d, dataset).mean_auc);
    const auto ranks = MidRanks(negated);
    for (std::size_t i = 0; i < detectors.size(); ++i) totals[i] += ranks[i];
  }
  for (double& t : totals) t /= static_cast<double>(std::max<std::size_t>(datasets.size(), 1));
  return totals;
}

std::vector<std::uint64_t> DeriveSeeds(std::uint64_t base, std::size_t count) {
  // splitmix64
  std::vector<std::uint64_t> seeds(count);
  std::uint64_t state = base;
  for (auto& s : seeds) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    s = z ^ (z >> 31);
  }
  return seeds;
}

BenchmarkReport Benchmark(const std::vector<NamedDataset>& datasets,
                          const std::vector<DetectorConfig>& detectors,
                          const BenchmarkOptions& options) {
  if (options.repeats == 0) throw ConfigError("repeats must be >= 1");
  std::vector<std::uint64_t> seeds = options.detector_seeds;
  if (seeds.empty()) seeds = DeriveSeeds(options.split_seed, options.repeats);
  if (seeds.size() < options.repeats) {
    throw ConfigError("need " + std::to_string(options.repeats) +
                      " detector seeds, got " + std::to_string(seeds.size()));
  }
  seeds.resize(options.repeats);
  for (const auto& d : detectors) d.Validate();

  BenchmarkReport report;
  for (const auto& named : datasets) {
    const EvalSplit split = SemiSupervisedSplit(named.data, options.split_seed);
    const MinMaxParams norm = MinMaxParams::Fit(split.train.values());
    const Matrix train = norm.Apply(split.train.values());
    const Matrix test = norm.Apply(split.test.values());
    const auto& labels = split.test.labels();

    for (const auto& config : detectors) {
      BenchmarkRow row;
      row.detector = config.Name();
      row.dataset = named.name;
      const bool randomized = IsRandomized(config.kind);
      const std::size_t runs = randomized ? options.repeats : 1;
      try {
        for (std::size_t r = 0; r < runs; ++r) {
          PhaseTimes times;
          const DetectorOutput output =
              RunDetector(config, train, test, seeds[r], &times);
          row.run_aucs.push_back(Auc(output, labels));
          row.fit_seconds += times.fit_seconds;
          row.score_seconds += times.score_seconds;
        }
      } catch (const Error& e) {
        throw DetectorError("detector " + row.detector + " on " + named.name +
                            ": " + e.what());
      }
      if (randomized) {
        row.seeds = seeds;
      } else {
        row.run_aucs.assign(options.repeats, row.run_aucs.front());
      }
      row.mean_auc =
          std::accumulate(row.run_aucs.begin(), row.run_aucs.end(), 0.0) /
          static_cast<double>(row.run_aucs.size());
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void WriteReportCsv(std::ostream& out, const BenchmarkReport& report,
                    bool include_timing) {
  out << "detector,dataset,mean_auc,run_aucs,seeds";
  if (include_timing) out << ",fit_seconds,score_seconds,total_seconds";
  out << '\n';
  for (const auto& row : report.rows) {
    out << row.detector << ',' << row.dataset << ','
        << FormatDouble(row.mean_auc) << ','
        << Join(row.run_aucs, ';', [](double v) { return FormatDouble(v); })
        << ','
        << Join(row.seeds, ';',
                [](std::uint64_t s) { return std::to_string(s); });
    if (include_timing) {
      out << ',' << Fixed(row.fit_seconds, 6) << ','
          << Fixed(row.score_seconds, 6) << ',' << Fixed(row.total_seconds(), 6);
    }
    out << '\n';
  }
}

void WriteAucMarkdown(std::ostream& out, const BenchmarkReport& report) {
  WriteMarkdownTable(out, report, [](const BenchmarkRow& row) {
    return Fixed(row.mean_auc, 4);
  });
  const auto detectors = report.Detectors();
  const auto datasets = report.Datasets();
  out << "| Avg. AUC |";
  for (const auto& d : detectors) {
    double total = 0.0;
    for (const auto& ds : datasets) total += report.Find(d, ds).mean_auc;
    out << ' ' << Fixed(total / static_cast<double>(datasets.size()), 4)
        << " |";
  }
  out << "\n| Avg. rank |";
  for (double r : report.AverageRanks()) out << ' ' << Fixed(r, 2) << " |";
  out << '\n';
}

void WriteRuntimeMarkdown(std::ostream& out, const BenchmarkReport& report) {
  WriteMarkdownTable(out, report, [](const BenchmarkRow& row) {
    return Fixed(row.total_seconds(), 2);
  });
}

}  // namespace spadplus
