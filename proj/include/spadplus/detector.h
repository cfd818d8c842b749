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

// Uniform fit-and-score entry point over the five detectors.

#ifndef SPADPLUS_DETECTOR_H_
#define SPADPLUS_DETECTOR_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "spadplus/baselines.h"
#include "spadplus/matrix.h"
#include "spadplus/pca.h"

namespace spadplus {

enum class DetectorKind { kLof, kIForest, kSp, kSpad, kSpadPlus };

// Parses "lof", "iforest", "sp", "spad" or "spad+".
DetectorKind ParseDetectorKind(const std::string& name);
std::string DetectorKindName(DetectorKind kind);
// True for detectors whose output depends on a seed (iforest, Sp).
bool IsRandomized(DetectorKind kind);
Orientation OrientationOf(DetectorKind kind);

struct DetectorConfig {
  DetectorKind kind = DetectorKind::kSpadPlus;
  std::optional<std::size_t> bins;     // SPAD, SPAD+
  std::optional<std::size_t> k;        // LOF
  std::optional<std::size_t> trees;    // iforest
  std::optional<std::size_t> psi;      // iforest, Sp
  ScoreVariant variant;                // SPAD+

  // Report label, e.g. "spad+" or "spad+[pcs_only]".
  std::string Name() const;
  // Throws ConfigError if an override does not apply to `kind`.
  void Validate() const;
};

struct PhaseTimes {
  double fit_seconds = 0.0;
  double score_seconds = 0.0;
};

// Fits on `train` and scores every row of `test`. `seed` is ignored by the
// deterministic detectors. Wall-clock fit and score times go to `times`
// when non-null.
DetectorOutput RunDetector(const DetectorConfig& config, const Matrix& train,
                           const Matrix& test, std::uint64_t seed,
                           PhaseTimes* times = nullptr);

}  // namespace spadplus

#endif  // SPADPLUS_DETECTOR_H_
