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

#ifndef SPADPLUS_MATRIX_H_
#define SPADPLUS_MATRIX_H_

#include <cstddef>
#include <span>
#include <vector>

namespace spadplus {

// Dense row-major matrix of doubles. Rows are instances, columns features.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // `values` must hold rows * cols entries in row-major order.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) {
    return {values_.data() + r * cols_, cols_};
  }

  std::vector<double> column(std::size_t c) const;

  const std::vector<double>& values() const { return values_; }

  void AppendRow(std::span<const double> row);
  Matrix SelectRows(std::span<const std::size_t> indices) const;
  Matrix Transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

double SquaredEuclidean(std::span<const double> a, std::span<const double> b);
double Euclidean(std::span<const double> a, std::span<const double> b);

}  // namespace spadplus

#endif  // SPADPLUS_MATRIX_H_
