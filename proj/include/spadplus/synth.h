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

#ifndef SPADPLUS_SYNTH_H_
#define SPADPLUS_SYNTH_H_

#include <cstddef>
#include <cstdint>

#include "spadplus/dataset.h"

namespace spadplus {

struct SynthOptions {
  std::size_t num_points = 1000;
  double correlation = 0.95;
  std::size_t num_planted = 1;
  std::uint64_t seed = 0;
};

// Marginal offset (in standard deviations) of each planted point.
inline constexpr double kPlantedOffset = 0.75;

// Two features "x", "y" drawn from a bivariate Gaussian with unit marginals
// and the given correlation, labeled normal, followed by `num_planted`
// anomalies at (+a, -a) or (-a, +a) (alternating; the sign pattern flips for
// negative correlation), with a = kPlantedOffset. Each planted point is
// unremarkable on either axis alone but lies off the correlation axis.
LabeledDataset GenerateCorrelatedGaussian(const SynthOptions& options);

// Squared Mahalanobis distance of (x, y) under unit marginals and
// correlation rho.
double MahalanobisSquared(double x, double y, double rho);

}  // namespace spadplus

#endif  // SPADPLUS_SYNTH_H_
