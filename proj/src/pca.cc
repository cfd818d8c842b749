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

#include "spadplus/pca.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <utility>

#include "spadplus/dataset.h"
#include "spadplus/errors.h"
#include "text_io.h"

namespace spadplus {
namespace {

double OffDiagonalNorm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p) {
    for (std::size_t q = 0; q < a.cols(); ++q) {
      if (p != q) sum += a(p, q) * a(p, q);
    }
  }
  return std::sqrt(sum);
}

double FrobeniusNorm(const Matrix& a) {
  double sum = 0.0;
  for (double v : a.values()) sum += v * v;
  return std::sqrt(sum);
}

// One Jacobi rotation zeroing a(p, q); accumulates the rotation into v.
void Rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

void CheckDims(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + " has " +
                            std::to_string(expected) +
                            " dimensions, instance has " +
                            std::to_string(actual));
  }
}

constexpr double kRoundoffFloor =
    64.0 * std::numeric_limits<double>::epsilon();

}  // namespace

SymmetricEigen JacobiEigen(const Matrix& symmetric, int max_sweeps,
                           double tolerance) {
  const std::size_t n = symmetric.rows();
  if (symmetric.cols() != n) {
    throw DimensionMismatch("eigendecomposition needs a square matrix");
  }
  Matrix a = symmetric;
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  // Absolute tolerance, floored at what rounding allows for large entries.
  const double threshold =
      std::max(tolerance, kRoundoffFloor * FrobeniusNorm(a));
  double off = OffDiagonalNorm(a);
  int sweeps = 0;
  while (off >= threshold) {
    if (sweeps == max_sweeps) {
      throw DetectorError("Jacobi eigensolver did not converge after " +
                          std::to_string(max_sweeps) +
                          " sweeps; off-diagonal norm " + FormatDouble(off));
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) Rotate(a, v, p, q);
    }
    ++sweeps;
    off = OffDiagonalNorm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i,
                                                   std::size_t j) {
    return a(i, i) > a(j, j);
  });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  out.sweeps = sweeps;
  out.off_diagonal_norm = off;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.values[j] = a(src, src);
    std::size_t largest = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (std::abs(v(k, src)) > std::abs(v(largest, src))) largest = k;
    }
    const double sign = v(largest, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = sign * v(k, src);
  }
  return out;
}

Matrix Covariance(const Matrix& data, std::span<const double> mean) {
  const std::size_t n = data.rows();
  const std::size_t m = data.cols();
  if (n < 2) throw DetectorError("covariance needs at least 2 rows");
  Matrix cov(m, m);
  std::vector<double> centered(m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < m; ++i) centered[i] = data(r, i) - mean[i];
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        cov(i, j) += centered[i] * centered[j];
      }
    }
  }
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      cov(i, j) *= scale;
      cov(j, i) = cov(i, j);
    }
  }
  return cov;
}

PcaTransform::PcaTransform(std::vector<double> mean, Matrix components,
                           std::vector<double> eigenvalues)
    : mean_(std::move(mean)),
      components_(std::move(components)),
      eigenvalues_(std::move(eigenvalues)) {
  const std::size_t m = mean_.size();
  if (components_.rows() != m || components_.cols() != m ||
      eigenvalues_.size() != m) {
    throw DimensionMismatch("PCA transform parts disagree on dimension");
  }
}

void PcaTransform::Apply(std::span<const double> x,
                         std::span<double> out) const {
  CheckDims(dims(), x.size(), "PCA transform");
  const std::size_t m = dims();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double centered = x[i] - mean_[i];
    const auto row = components_.row(i);
    for (std::size_t j = 0; j < m; ++j) out[j] += row[j] * centered;
  }
}

std::vector<double> PcaTransform::Apply(std::span<const double> x) const {
  std::vector<double> out(dims());
  Apply(x, out);
  return out;
}

Matrix PcaTransform::Apply(const Matrix& data) const {
  CheckDims(dims(), data.cols(), "PCA transform");
  Matrix out(data.rows(), dims());
  for (std::size_t r = 0; r < data.rows(); ++r) Apply(data.row(r), out.row(r));
  return out;
}

PcaTransform FitPca(const Matrix& train) {
  const std::size_t n = train.rows();
  const std::size_t m = train.cols();
  if (n < 2) {
    throw DetectorError("PCA needs at least 2 training rows, got " +
                        std::to_string(n));
  }
  std::vector<double> mean(m, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < m; ++i) mean[i] += train(r, i);
  }
  for (double& v : mean) v /= static_cast<double>(n);

  SymmetricEigen eig = JacobiEigen(Covariance(train, mean));
  for (double& v : eig.values) v = std::max(v, 0.0);
  return PcaTransform(std::move(mean), std::move(eig.vectors),
                      std::move(eig.values));
}

ScoreVariant ScoreVariant::TopPcs(std::size_t m) {
  if (m == 0) throw ConfigError("top_m_pcs needs m >= 1");
  return ScoreVariant(Kind::kTopPcs, m);
}

ScoreVariant ScoreVariant::Parse(const std::string& name,
                                 std::optional<std::size_t> top_m) {
  if (name == "top_m_pcs") {
    if (!top_m) throw ConfigError("variant top_m_pcs requires --top-m");
    return TopPcs(*top_m);
  }
  if (top_m) throw ConfigError("--top-m is only valid with top_m_pcs");
  if (name == "full") return Full();
  if (name == "input_only") return InputOnly();
  if (name == "pcs_only") return PcsOnly();
  throw ConfigError("unknown score variant \"" + name + "\"");
}

std::string ScoreVariant::ToString() const {
  switch (kind_) {
    case Kind::kFull:
      return "full";
    case Kind::kInputOnly:
      return "input_only";
    case Kind::kPcsOnly:
      return "pcs_only";
    case Kind::kTopPcs:
      return "top_" + std::to_string(top_m_) + "_pcs";
  }
  return "full";
}

SpadPlusModel::SpadPlusModel(HistogramModel input_hist, HistogramModel pc_hist,
                             PcaTransform transform)
    : input_hist_(std::move(input_hist)),
      pc_hist_(std::move(pc_hist)),
      transform_(std::move(transform)) {
  if (input_hist_.num_train() != pc_hist_.num_train() ||
      input_hist_.num_bins() != pc_hist_.num_bins()) {
    throw ParseError("SPAD+ histograms disagree on N or b");
  }
  if (input_hist_.dims() != transform_.dims() ||
      pc_hist_.dims() != transform_.dims()) {
    throw DimensionMismatch("SPAD+ parts disagree on dimension");
  }
}

double SpadPlusModel::Score(std::span<const double> x) const {
  return Score(x, ScoreVariant::Full());
}

double SpadPlusModel::Score(std::span<const double> x,
                            const ScoreVariant& variant) const {
  CheckDims(dims(), x.size(), "SPAD+ model");
  using Kind = ScoreVariant::Kind;
  if (variant.kind() == Kind::kInputOnly) return input_hist_.Score(x);
  if (variant.kind() == Kind::kTopPcs && variant.top_m() > dims()) {
    throw ConfigError("top_m_pcs m = " + std::to_string(variant.top_m()) +
                      " exceeds dimension " + std::to_string(dims()));
  }
  const std::vector<double> projected = transform_.Apply(x);
  switch (variant.kind()) {
    case Kind::kPcsOnly:
      return pc_hist_.Score(projected);
    case Kind::kTopPcs:
      return input_hist_.Score(x) +
             pc_hist_.PartialScore(projected, variant.top_m());
    default:
      return input_hist_.Score(x) + pc_hist_.Score(projected);
  }
}

std::vector<double> SpadPlusModel::ScoreRows(
    const Matrix& data, const ScoreVariant& variant) const {
  CheckDims(dims(), data.cols(), "SPAD+ model");
  std::vector<double> scores(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    scores[r] = Score(data.row(r), variant);
  }
  return scores;
}

SpadPlusModel FitSpadPlus(const Matrix& train,
                          std::optional<std::size_t> bins) {
  PcaTransform transform = FitPca(train);
  const std::size_t b = bins.value_or(DefaultBinCount(train.rows()));
  HistogramModel input_hist = FitHistograms(train, b);
  HistogramModel pc_hist = FitHistograms(transform.Apply(train), b);
  return SpadPlusModel(std::move(input_hist), std::move(pc_hist),
                       std::move(transform));
}

void WritePca(std::ostream& out, const PcaTransform& transform) {
  const std::size_t m = transform.dims();
  out << "pca " << m << "\nmean";
  for (double v : transform.mean()) out << ' ' << FormatDouble(v);
  out << "\neigenvalues";
  for (double v : transform.eigenvalues()) out << ' ' << FormatDouble(v);
  out << "\ncomponents\n";
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      out << (c ? " " : "") << FormatDouble(transform.components()(r, c));
    }
    out << '\n';
  }
}

PcaTransform ReadPca(std::istream& in) {
  text_io::ExpectToken(in, "pca");
  const auto m = text_io::Read<std::size_t>(in, "PCA dimension");
  std::vector<double> mean(m);
  std::vector<double> eigenvalues(m);
  text_io::ExpectToken(in, "mean");
  for (double& v : mean) v = text_io::ReadDouble(in, "mean");
  text_io::ExpectToken(in, "eigenvalues");
  for (double& v : eigenvalues) v = text_io::ReadDouble(in, "eigenvalue");
  text_io::ExpectToken(in, "components");
  Matrix components(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      components(r, c) = text_io::ReadDouble(in, "component");
    }
  }
  return PcaTransform(std::move(mean), std::move(components),
                      std::move(eigenvalues));
}

void WriteSpadPlus(std::ostream& out, const SpadPlusModel& model) {
  WriteHistogram(out, model.input_hist());
  WritePca(out, model.transform());
  WriteHistogram(out, model.pc_hist());
}

SpadPlusModel ReadSpadPlus(std::istream& in) {
  HistogramModel input_hist = ReadHistogram(in);
  PcaTransform transform = ReadPca(in);
  HistogramModel pc_hist = ReadHistogram(in);
  return SpadPlusModel(std::move(input_hist), std::move(pc_hist),
                       std::move(transform));
}

}  // namespace spadplus
