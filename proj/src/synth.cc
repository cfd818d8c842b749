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

#include "spadplus/synth.h"

#include <cmath>
#include <random>
#include <vector>

#include "spadplus/errors.h"

namespace spadplus {

LabeledDataset GenerateCorrelatedGaussian(const SynthOptions& options) {
  if (options.num_points < 10) {
    throw ConfigError("synthetic data needs at least 10 points");
  }
  if (!(std::abs(options.correlation) < 1.0)) {
    throw ConfigError("correlation must satisfy |rho| < 1");
  }
  const double rho = options.correlation;
  const double residual = std::sqrt(1.0 - rho * rho);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Matrix values(options.num_points + options.num_planted, 2);
  std::vector<Label> labels(values.rows(), Label::kNormal);
  for (std::size_t i = 0; i < options.num_points; ++i) {
    const double z1 = normal(rng);
    const double z2 = normal(rng);
    values(i, 0) = z1;
    values(i, 1) = rho * z1 + residual * z2;
  }
  // Off-axis means opposite signs when rho >= 0, equal signs when rho < 0.
  const double y_sign = rho < 0.0 ? 1.0 : -1.0;
  for (std::size_t p = 0; p < options.num_planted; ++p) {
    const std::size_t i = options.num_points + p;
    const double side = p % 2 == 0 ? 1.0 : -1.0;
    values(i, 0) = side * kPlantedOffset;
    values(i, 1) = side * y_sign * kPlantedOffset;
    labels[i] = Label::kAnomaly;
  }
  return LabeledDataset(std::move(values), {"x", "y"}, std::move(labels));
}

double MahalanobisSquared(double x, double y, double rho) {
  return (x * x - 2.0 * rho * x * y + y * y) / (1.0 - rho * rho);
}

}  // namespace spadplus
