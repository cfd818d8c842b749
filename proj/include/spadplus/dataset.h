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

// Labeled datasets, CSV ingestion, min-max normalization and the
// semi-supervised train/test split.

#ifndef SPADPLUS_DATASET_H_
#define SPADPLUS_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spadplus/matrix.h"

namespace spadplus {

enum class Label : std::uint8_t { kNormal = 0, kAnomaly = 1 };

// N x M matrix of finite reals with one label per row and one name per
// column. Construction validates both invariants.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(Matrix values, std::vector<std::string> feature_names,
                 std::vector<Label> labels);

  const Matrix& values() const { return values_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  const std::vector<Label>& labels() const { return labels_; }

  std::size_t rows() const { return values_.rows(); }
  std::size_t cols() const { return values_.cols(); }
  std::size_t CountLabel(Label label) const;

  LabeledDataset SelectRows(std::span<const std::size_t> indices) const;
  LabeledDataset WithValues(Matrix values) const;

 private:
  Matrix values_;
  std::vector<std::string> feature_names_;
  std::vector<Label> labels_;
};

struct CsvOptions {
  // Column holding the class label. Empty means the file has no label
  // column and every row is labeled normal.
  std::string label_column;
  // Rows whose label cell equals this string are anomalies.
  std::string anomaly_value;
};

// Parses comma-delimited text with a header row. Numeric cells are parsed
// with the C locale; non-finite values are rejected.
LabeledDataset ParseCsv(std::istream& in, const CsvOptions& options);
LabeledDataset LoadCsv(const std::string& path, const CsvOptions& options);

// Writes the header (features then label column) and one line per row using
// the shortest decimal form that round-trips each double.
void WriteCsv(std::ostream& out, const LabeledDataset& data,
              const std::string& label_column,
              const std::string& anomaly_value,
              const std::string& normal_value);

// Shortest round-trip decimal text for a double.
std::string FormatDouble(double value);

struct EvalSplit {
  LabeledDataset train;  // normal rows only
  LabeledDataset test;   // remaining normals followed by every anomaly
  std::uint64_t seed = 0;
};

// Shuffles the normal rows with a permutation keyed on `seed`. The first
// floor(#normals / 2) become the training set.
EvalSplit SemiSupervisedSplit(const LabeledDataset& data, std::uint64_t seed);

struct FeatureRange {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

// Per-dimension ranges fitted on training data. Applying maps
// x -> (x - min) / (max - min); constant dimensions map to 0. Values outside
// the fitted range are not clamped.
class MinMaxParams {
 public:
  MinMaxParams() = default;
  explicit MinMaxParams(std::vector<FeatureRange> ranges);

  static MinMaxParams Fit(const Matrix& train);

  const std::vector<FeatureRange>& ranges() const { return ranges_; }
  std::size_t dims() const { return ranges_.size(); }

  double Apply(std::size_t dim, double x) const;
  Matrix Apply(const Matrix& data) const;
  LabeledDataset Apply(const LabeledDataset& data) const;

 private:
  std::vector<FeatureRange> ranges_;
};

}  // namespace spadplus

#endif  // SPADPLUS_DATASET_H_
