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

// Covariance PCA and SPAD+, which scores an instance with SPAD histograms
// over both the input features and all principal components:
//
//   score(x) = spad_input(x) + spad_pc(components^T (x - mean))

#ifndef SPADPLUS_PCA_H_
#define SPADPLUS_PCA_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spadplus/histogram.h"
#include "spadplus/matrix.h"

namespace spadplus {

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column j pairs with values[j]
  int sweeps = 0;
  double off_diagonal_norm = 0.0;
};

// Cyclic Jacobi rotations on a symmetric matrix. Stops once the Frobenius
// norm of the off-diagonal part drops below `tolerance` (or a few ulps of
// ||A||_F when that is larger);
// throws DetectorError (with the residual) if `max_sweeps` is exhausted.
// Eigenvectors are sign-normalized so their largest-magnitude entry is
// positive.
SymmetricEigen JacobiEigen(const Matrix& symmetric, int max_sweeps = 100,
                           double tolerance = 1e-10);

// Sample covariance (1 / (N - 1) scaling).
Matrix Covariance(const Matrix& data, std::span<const double> mean);

class PcaTransform {
 public:
  PcaTransform() = default;
  PcaTransform(std::vector<double> mean, Matrix components,
               std::vector<double> eigenvalues);

  const std::vector<double>& mean() const { return mean_; }
  // M x M, column j is the unit eigenvector of the j-th largest eigenvalue.
  const Matrix& components() const { return components_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  std::size_t dims() const { return mean_.size(); }

  // components^T (x - mean)
  std::vector<double> Apply(std::span<const double> x) const;
  void Apply(std::span<const double> x, std::span<double> out) const;
  Matrix Apply(const Matrix& data) const;

  friend bool operator==(const PcaTransform&, const PcaTransform&) = default;

 private:
  std::vector<double> mean_;
  Matrix components_;
  std::vector<double> eigenvalues_;
};

PcaTransform FitPca(const Matrix& train);

// Which histogram terms contribute to a SPAD+ score.
class ScoreVariant {
 public:
  enum class Kind { kFull, kInputOnly, kPcsOnly, kTopPcs };

  ScoreVariant() = default;
  static ScoreVariant Full() { return ScoreVariant(Kind::kFull, 0); }
  static ScoreVariant InputOnly() { return ScoreVariant(Kind::kInputOnly, 0); }
  static ScoreVariant PcsOnly() { return ScoreVariant(Kind::kPcsOnly, 0); }
  // Input terms plus the first `m` principal-component terms.
  static ScoreVariant TopPcs(std::size_t m);

  // Accepts "full", "input_only", "pcs_only" and "top_m_pcs" (the latter
  // needs `top_m`).
  static ScoreVariant Parse(const std::string& name,
                            std::optional<std::size_t> top_m);

  Kind kind() const { return kind_; }
  std::size_t top_m() const { return top_m_; }
  std::string ToString() const;

  friend bool operator==(const ScoreVariant&, const ScoreVariant&) = default;

 private:
  ScoreVariant(Kind kind, std::size_t top_m) : kind_(kind), top_m_(top_m) {}

  Kind kind_ = Kind::kFull;
  std::size_t top_m_ = 0;
};

class SpadPlusModel {
 public:
  SpadPlusModel() = default;
  // Both histograms must share N and b and have transform.dims() dimensions.
  SpadPlusModel(HistogramModel input_hist, HistogramModel pc_hist,
                PcaTransform transform);

  const HistogramModel& input_hist() const { return input_hist_; }
  const HistogramModel& pc_hist() const { return pc_hist_; }
  const PcaTransform& transform() const { return transform_; }
  std::size_t dims() const { return transform_.dims(); }

  double Score(std::span<const double> x) const;
  double Score(std::span<const double> x, const ScoreVariant& variant) const;
  std::vector<double> ScoreRows(
      const Matrix& data, const ScoreVariant& variant = ScoreVariant()) const;

  double MinScore() const { return input_hist_.MinScore() * 2.0; }
  double MaxScore() const { return input_hist_.MaxScore() * 2.0; }

  friend bool operator==(const SpadPlusModel&, const SpadPlusModel&) = default;

 private:
  HistogramModel input_hist_;
  HistogramModel pc_hist_;
  PcaTransform transform_;
};

SpadPlusModel FitSpadPlus(const Matrix& train,
                          std::optional<std::size_t> bins = std::nullopt);

// "pca M" header, then mean, eigenvalues and the row-major components.
void WritePca(std::ostream& out, const PcaTransform& transform);
PcaTransform ReadPca(std::istream& in);

void WriteSpadPlus(std::ostream& out, const SpadPlusModel& model);
SpadPlusModel ReadSpadPlus(std::istream& in);

}  // namespace spadplus

#endif  // SPADPLUS_PCA_H_
