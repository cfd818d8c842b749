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

#include "spadplus/detector.h"

#include <chrono>
#include <utility>

#include "spadplus/errors.h"
#include "spadplus/histogram.h"

namespace spadplus {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double>(to - from).count();
}

template <typename FitFn, typename ScoreFn>
std::vector<double> Timed(FitFn fit, ScoreFn score, PhaseTimes* times) {
  const auto t0 = Clock::now();
  auto model = fit();
  const auto t1 = Clock::now();
  std::vector<double> scores = score(model);
  const auto t2 = Clock::now();
  if (times != nullptr) {
    times->fit_seconds = Seconds(t0, t1);
    times->score_seconds = Seconds(t1, t2);
  }
  return scores;
}

}  // namespace

DetectorKind ParseDetectorKind(const std::string& name) {
  if (name == "lof") return DetectorKind::kLof;
  if (name == "iforest") return DetectorKind::kIForest;
  if (name == "sp") return DetectorKind::kSp;
  if (name == "spad") return DetectorKind::kSpad;
  if (name == "spad+" || name == "spadplus") return DetectorKind::kSpadPlus;
  throw ConfigError("unknown detector \"" + name +
                    "\" (expected lof, iforest, sp, spad or spad+)");
}

std::string DetectorKindName(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::kLof:
      return "lof";
    case DetectorKind::kIForest:
      return "iforest";
    case DetectorKind::kSp:
      return "sp";
    case DetectorKind::kSpad:
      return "spad";
    case DetectorKind::kSpadPlus:
      return "spad+";
  }
  return "?";
}

bool IsRandomized(DetectorKind kind) {
  return kind == DetectorKind::kIForest || kind == DetectorKind::kSp;
}

Orientation OrientationOf(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::kLof:
      return LofModel::kOrientation;
    case DetectorKind::kIForest:
      return IsolationForest::kOrientation;
    case DetectorKind::kSp:
      return SpModel::kOrientation;
    case DetectorKind::kSpad:
    case DetectorKind::kSpadPlus:
      return Orientation::kLowerIsAnomalous;
  }
  return Orientation::kHigherIsAnomalous;
}

std::string DetectorConfig::Name() const {
  std::string name = DetectorKindName(kind);
  if (kind == DetectorKind::kSpadPlus &&
      variant.kind() != ScoreVariant::Kind::kFull) {
    name += "[" + variant.ToString() + "]";
  }
  return name;
}

void DetectorConfig::Validate() const {
  const std::string name = DetectorKindName(kind);
  const bool histogram =
      kind == DetectorKind::kSpad || kind == DetectorKind::kSpadPlus;
  if (bins && !histogram) throw ConfigError("--b does not apply to " + name);
  if (k && kind != DetectorKind::kLof) {
    throw ConfigError("--k does not apply to " + name);
  }
  if (trees && kind != DetectorKind::kIForest) {
    throw ConfigError("--trees does not apply to " + name);
  }
  if (psi && !IsRandomized(kind)) {
    throw ConfigError("--psi does not apply to " + name);
  }
  if (variant.kind() != ScoreVariant::Kind::kFull &&
      kind != DetectorKind::kSpadPlus) {
    throw ConfigError("--variant does not apply to " + name);
  }
  if (bins && *bins == 0) throw ConfigError("--b must be >= 1");
  if (k && *k == 0) throw ConfigError("--k must be >= 1");
  if (trees && *trees == 0) throw ConfigError("--trees must be >= 1");
  if (psi && *psi == 0) throw ConfigError("--psi must be >= 1");
}

DetectorOutput RunDetector(const DetectorConfig& config, const Matrix& train,
                           const Matrix& test, std::uint64_t seed,
                           PhaseTimes* times) {
  config.Validate();
  if (train.cols() != test.cols()) {
    throw DimensionMismatch("train has " + std::to_string(train.cols()) +
                            " columns, test has " +
                            std::to_string(test.cols()));
  }
  DetectorOutput out;
  out.orientation = OrientationOf(config.kind);
  switch (config.kind) {
    case DetectorKind::kLof:
      out.scores = Timed([&] { return LofModel::Fit(train, config.k); },
                         [&](const LofModel& m) { return m.ScoreRows(test); },
                         times);
      break;
    case DetectorKind::kIForest: {
      IsolationForestOptions options;
      options.num_trees = config.trees.value_or(options.num_trees);
      options.subsample_size = config.psi.value_or(options.subsample_size);
      options.seed = seed;
      out.scores = Timed(
          [&] { return IsolationForest::Fit(train, options); },
          [&](const IsolationForest& m) { return m.ScoreRows(test); }, times);
      break;
    }
    case DetectorKind::kSp:
      out.scores = Timed(
          [&] { return SpModel::Fit(train, config.psi.value_or(25), seed); },
          [&](const SpModel& m) { return m.ScoreRows(test); }, times);
      break;
    case DetectorKind::kSpad:
      out.scores = Timed(
          [&] { return FitHistograms(train, config.bins); },
          [&](const HistogramModel& m) { return m.ScoreRows(test); }, times);
      break;
    case DetectorKind::kSpadPlus:
      out.scores = Timed(
          [&] { return FitSpadPlus(train, config.bins); },
          [&](const SpadPlusModel& m) {
            return m.ScoreRows(test, config.variant);
          },
          times);
      break;
  }
  return out;
}

}  // namespace spadplus
