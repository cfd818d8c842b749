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

// SPAD: per-dimension equal-width histograms over [mean - 3 sd, mean + 3 sd]
// and the smoothed log-mass anomaly score.
//
//   score(x) = sum_i log((|H_i(x)| + 1) / (N + b))
//
// where H_i(x) is the bin of dimension i holding x_i, N the training size and
// b the bin count. Lower scores are more anomalous.

#ifndef SPADPLUS_HISTOGRAM_H_
#define SPADPLUS_HISTOGRAM_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "spadplus/matrix.h"

namespace spadplus {

// floor(log2 n) + 1 for n >= 1.
std::size_t DefaultBinCount(std::size_t n);

struct HistogramDimension {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  std::vector<std::uint64_t> counts;

  friend bool operator==(const HistogramDimension&,
                         const HistogramDimension&) = default;
};

class HistogramModel {
 public:
  HistogramModel() = default;
  // Validates that every dimension has `num_bins` counts summing to
  // `num_train` and a non-negative finite stddev.
  HistogramModel(std::size_t num_train, std::size_t num_bins,
                 std::vector<HistogramDimension> dims);

  std::size_t num_train() const { return num_train_; }
  std::size_t num_bins() const { return num_bins_; }
  std::size_t dims() const { return dims_.size(); }
  const HistogramDimension& dimension(std::size_t i) const { return dims_[i]; }

  // Bin of x in dimension `dim`. Values left of mean - 3 sd clamp to 0, values
  // at or right of mean + 3 sd clamp to b - 1. A zero stddev always maps to 0.
  std::size_t BinIndex(std::size_t dim, double x) const;

  // log((count + 1) / (N + b)) for the bin holding x in dimension `dim`.
  double LogMass(std::size_t dim, double x) const;

  double Score(std::span<const double> x) const;
  // Sum of LogMass over the first `num_dims` dimensions only.
  double PartialScore(std::span<const double> x, std::size_t num_dims) const;
  std::vector<double> ScoreRows(const Matrix& data) const;

  // Attainable score range for this model: [M log(1/(N+b)),
  // M log((N+1)/(N+b))].
  double MinScore() const;
  double MaxScore() const;

  friend bool operator==(const HistogramModel&,
                         const HistogramModel&) = default;

 private:
  void CheckDims(std::size_t size) const;

  std::size_t num_train_ = 0;
  std::size_t num_bins_ = 1;
  std::vector<HistogramDimension> dims_;
};

// Fits one histogram per column of `train`. `bins` defaults to
// DefaultBinCount(train.rows()).
HistogramModel FitHistograms(const Matrix& train,
                             std::optional<std::size_t> bins = std::nullopt);

// Text serialization: "histogram N M b" followed by one line per dimension
// "mean stddev c_1 ... c_b". Doubles are written in shortest round-trip form.
void WriteHistogram(std::ostream& out, const HistogramModel& model);
HistogramModel ReadHistogram(std::istream& in);

}  // namespace spadplus

#endif  // SPADPLUS_HISTOGRAM_H_
