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

#include "spadplus/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <string_view>
#include <utility>

#include "spadplus/errors.h"

namespace spadplus {
namespace {

std::string_view Trim(std::string_view s) {
  const auto not_space = [](char c) {
    return c != ' ' && c != '\t' && c != '\r' && c != '\n';
  };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      break;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool ParseFinite(std::string_view text, double* value) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, *value);
  return ec == std::errc() && ptr == end && !text.empty() &&
         std::isfinite(*value);
}

bool IsBlank(std::string_view line) { return Trim(line).empty(); }

}  // namespace

LabeledDataset::LabeledDataset(Matrix values,
                               std::vector<std::string> feature_names,
                               std::vector<Label> labels)
    : values_(std::move(values)),
      feature_names_(std::move(feature_names)),
      labels_(std::move(labels)) {
  if (labels_.size() != values_.rows()) {
    throw DimensionMismatch("dataset has " + std::to_string(values_.rows()) +
                            " rows but " + std::to_string(labels_.size()) +
                            " labels");
  }
  if (feature_names_.size() != values_.cols()) {
    throw DimensionMismatch(
        "dataset has " + std::to_string(values_.cols()) + " columns but " +
        std::to_string(feature_names_.size()) + " feature names");
  }
  for (double v : values_.values()) {
    if (!std::isfinite(v)) throw ConfigError("dataset value is not finite");
  }
}

std::size_t LabeledDataset::CountLabel(Label label) const {
  return static_cast<std::size_t>(
      std::count(labels_.begin(), labels_.end(), label));
}

LabeledDataset LabeledDataset::SelectRows(
    std::span<const std::size_t> indices) const {
  std::vector<Label> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) labels.push_back(labels_[i]);
  return LabeledDataset(values_.SelectRows(indices), feature_names_,
                        std::move(labels));
}

LabeledDataset LabeledDataset::WithValues(Matrix values) const {
  return LabeledDataset(std::move(values), feature_names_, labels_);
}

LabeledDataset ParseCsv(std::istream& in, const CsvOptions& options) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!IsBlank(line)) break;
  }
  if (IsBlank(line)) throw ParseError("CSV input is empty");
  if (line_number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);

  // Owned copies: `line` is reused for the data rows below.
  std::vector<std::string> header;
  for (std::string_view field : SplitFields(line)) header.emplace_back(field);
  std::ptrdiff_t label_index = -1;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!options.label_column.empty() && header[c] == options.label_column &&
        label_index < 0) {
      label_index = static_cast<std::ptrdiff_t>(c);
    } else {
      names.emplace_back(header[c]);
    }
  }
  if (!options.label_column.empty() && label_index < 0) {
    throw ParseError("label column \"" + options.label_column +
                     "\" not found in CSV header");
  }
  if (names.empty()) throw ParseError("CSV has zero feature columns");

  std::vector<double> values;
  std::vector<Label> labels;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (IsBlank(line)) continue;
    ++row;
    const std::vector<std::string_view> fields = SplitFields(line);
    if (fields.size() != header.size()) {
      throw ParseError("row " + std::to_string(row) + " (line " +
                       std::to_string(line_number) + ") has " +
                       std::to_string(fields.size()) + " fields, header has " +
                       std::to_string(header.size()));
    }
    Label label = Label::kNormal;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (static_cast<std::ptrdiff_t>(c) == label_index) {
        if (fields[c] == options.anomaly_value) label = Label::kAnomaly;
        continue;
      }
      double v = 0.0;
      if (!ParseFinite(fields[c], &v)) {
        throw ParseError("row " + std::to_string(row) + " (line " +
                         std::to_string(line_number) + "), column \"" +
                         header[c] + "\": cannot parse \"" +
                         std::string(fields[c]) + "\" as a finite number");
      }
      values.push_back(v);
    }
    labels.push_back(label);
  }
  Matrix matrix(labels.size(), names.size(), std::move(values));
  return LabeledDataset(std::move(matrix), std::move(names), std::move(labels));
}

LabeledDataset LoadCsv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open \"" + path + "\"");
  try {
    return ParseCsv(in, options);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteCsv(std::ostream& out, const LabeledDataset& data,
              const std::string& label_column,
              const std::string& anomaly_value,
              const std::string& normal_value) {
  for (const auto& name : data.feature_names()) out << name << ',';
  out << label_column << '\n';
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (double v : data.values().row(r)) out << FormatDouble(v) << ',';
    out << (data.labels()[r] == Label::kAnomaly ? anomaly_value : normal_value)
        << '\n';
  }
  if (!out) throw IoError("failed writing CSV");
}

EvalSplit SemiSupervisedSplit(const LabeledDataset& data, std::uint64_t seed) {
  std::vector<std::size_t> normals;
  std::vector<std::size_t> anomalies;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    (data.labels()[r] == Label::kNormal ? normals : anomalies).push_back(r);
  }
  if (normals.size() < 2) {
    throw DetectorError("semi-supervised split needs at least 2 normal rows, "
                        "got " + std::to_string(normals.size()));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(normals.begin(), normals.end(), rng);
  const std::size_t half = normals.size() / 2;

  const std::vector<std::size_t> train(normals.begin(), normals.begin() + half);
  std::vector<std::size_t> test(normals.begin() + half, normals.end());
  test.insert(test.end(), anomalies.begin(), anomalies.end());
  return EvalSplit{data.SelectRows(train), data.SelectRows(test), seed};
}

MinMaxParams::MinMaxParams(std::vector<FeatureRange> ranges)
    : ranges_(std::move(ranges)) {
  for (const auto& r : ranges_) {
    if (!(r.min <= r.max)) throw ConfigError("min-max range has min > max");
  }
}

MinMaxParams MinMaxParams::Fit(const Matrix& train) {
  if (train.empty()) throw DetectorError("min-max fit on empty training set");
  std::vector<FeatureRange> ranges(train.cols());
  for (std::size_t c = 0; c < train.cols(); ++c) {
    ranges[c] = {train(0, c), train(0, c)};
  }
  for (std::size_t r = 1; r < train.rows(); ++r) {
    for (std::size_t c = 0; c < train.cols(); ++c) {
      ranges[c].min = std::min(ranges[c].min, train(r, c));
      ranges[c].max = std::max(ranges[c].max, train(r, c));
    }
  }
  return MinMaxParams(std::move(ranges));
}

double MinMaxParams::Apply(std::size_t dim, double x) const {
  const FeatureRange& r = ranges_[dim];
  if (r.max == r.min) return 0.0;
  return (x - r.min) / (r.max - r.min);
}

Matrix MinMaxParams::Apply(const Matrix& data) const {
  if (data.cols() != dims()) {
    throw DimensionMismatch("min-max params have " + std::to_string(dims()) +
                            " dimensions, data has " +
                            std::to_string(data.cols()));
  }
  Matrix out(data.rows(), data.cols());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < data.cols(); ++c) {
      out(r, c) = Apply(c, data(r, c));
    }
  }
  return out;
}

LabeledDataset MinMaxParams::Apply(const LabeledDataset& data) const {
  return data.WithValues(Apply(data.values()));
}

}  // namespace spadplus
