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

#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include "spadplus/dataset.h"
#include "spadplus/errors.h"
#include "text_io.h"

namespace spadplus {
namespace {

std::size_t ClampedBin(const HistogramDimension& d, std::size_t bins,
                       double x) {
  if (d.stddev == 0.0) return 0;
  const double lower = d.mean - 3.0 * d.stddev;
  const double width = 6.0 * d.stddev / static_cast<double>(bins);
  const double pos = std::floor((x - lower) / width);
  // NaN and everything left of the range fall through to bin 0.
  if (!(pos >= 0.0)) return 0;
  if (pos >= static_cast<double>(bins)) return bins - 1;
  return static_cast<std::size_t>(pos);
}

}  // namespace

std::size_t DefaultBinCount(std::size_t n) {
  if (n == 0) throw ConfigError("bin count undefined for empty training set");
  return static_cast<std::size_t>(std::bit_width(n));
}

HistogramModel::HistogramModel(std::size_t num_train, std::size_t num_bins,
                               std::vector<HistogramDimension> dims)
    : num_train_(num_train), num_bins_(num_bins), dims_(std::move(dims)) {
  if (num_train_ == 0) throw DetectorError("histogram needs N >= 1");
  if (num_bins_ == 0) throw ConfigError("histogram needs b >= 1");
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const auto& d = dims_[i];
    if (d.counts.size() != num_bins_) {
      throw ParseError("histogram dimension " + std::to_string(i) + " has " +
                       std::to_string(d.counts.size()) + " bins, expected " +
                       std::to_string(num_bins_));
    }
    const auto total = std::accumulate(d.counts.begin(), d.counts.end(),
                                       std::uint64_t{0});
    if (total != num_train_) {
      throw ParseError("histogram dimension " + std::to_string(i) +
                       " counts sum to " + std::to_string(total) +
                       ", expected N = " + std::to_string(num_train_));
    }
    if (!std::isfinite(d.mean) || !std::isfinite(d.stddev) || d.stddev < 0) {
      throw ParseError("histogram dimension " + std::to_string(i) +
                       " has invalid mean/stddev");
    }
  }
}

std::size_t HistogramModel::BinIndex(std::size_t dim, double x) const {
  return ClampedBin(dims_[dim], num_bins_, x);
}

double HistogramModel::LogMass(std::size_t dim, double x) const {
  const auto count = dims_[dim].counts[BinIndex(dim, x)];
  return std::log((static_cast<double>(count) + 1.0) /
                  static_cast<double>(num_train_ + num_bins_));
}

void HistogramModel::CheckDims(std::size_t size) const {
  if (size != dims_.size()) {
    throw DimensionMismatch("histogram model has " +
                            std::to_string(dims_.size()) +
                            " dimensions, instance has " +
                            std::to_string(size));
  }
}

double HistogramModel::Score(std::span<const double> x) const {
  CheckDims(x.size());
  return PartialScore(x, dims_.size());
}

double HistogramModel::PartialScore(std::span<const double> x,
                                    std::size_t num_dims) const {
  CheckDims(x.size());
  double score = 0.0;
  for (std::size_t i = 0; i < num_dims && i < dims_.size(); ++i) {
    score += LogMass(i, x[i]);
  }
  return score;
}

std::vector<double> HistogramModel::ScoreRows(const Matrix& data) const {
  CheckDims(data.cols());
  std::vector<double> scores(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) scores[r] = Score(data.row(r));
  return scores;
}

double HistogramModel::MinScore() const {
  return static_cast<double>(dims()) *
         std::log(1.0 / static_cast<double>(num_train_ + num_bins_));
}

double HistogramModel::MaxScore() const {
  return static_cast<double>(dims()) *
         std::log(static_cast<double>(num_train_ + 1) /
                  static_cast<double>(num_train_ + num_bins_));
}

HistogramModel FitHistograms(const Matrix& train,
                             std::optional<std::size_t> bins) {
  const std::size_t n = train.rows();
  if (n == 0) throw DetectorError("cannot fit histograms on empty training set");
  const std::size_t b = bins.value_or(DefaultBinCount(n));
  if (b == 0) throw ConfigError("bin count must be >= 1");

  std::vector<HistogramDimension> dims(train.cols());
  for (std::size_t c = 0; c < train.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) sum += train(r, c);
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = train(r, c) - mean;
      sq += d * d;
    }
    dims[c].mean = mean;
    dims[c].stddev = std::sqrt(sq / static_cast<double>(n));
    dims[c].counts.assign(b, 0);
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < train.cols(); ++c) {
      ++dims[c].counts[ClampedBin(dims[c], b, train(r, c))];
    }
  }
  return HistogramModel(n, b, std::move(dims));
}

void WriteHistogram(std::ostream& out, const HistogramModel& model) {
  out << "histogram " << model.num_train() << ' ' << model.dims() << ' '
      << model.num_bins() << '\n';
  for (std::size_t i = 0; i < model.dims(); ++i) {
    const auto& d = model.dimension(i);
    out << FormatDouble(d.mean) << ' ' << FormatDouble(d.stddev);
    for (auto c : d.counts) out << ' ' << c;
    out << '\n';
  }
}

HistogramModel ReadHistogram(std::istream& in) {
  text_io::ExpectToken(in, "histogram");
  const auto n = text_io::Read<std::size_t>(in, "N");
  const auto m = text_io::Read<std::size_t>(in, "M");
  const auto b = text_io::Read<std::size_t>(in, "b");
  std::vector<HistogramDimension> dims(m);
  for (auto& d : dims) {
    d.mean = text_io::ReadDouble(in, "mean");
    d.stddev = text_io::ReadDouble(in, "stddev");
    d.counts.resize(b);
    for (auto& c : d.counts) c = text_io::Read<std::uint64_t>(in, "bin count");
  }
  return HistogramModel(n, b, std::move(dims));
}

}  // namespace spadplus
