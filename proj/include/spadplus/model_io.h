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

// Model files handed from `fit` to `score`: the min-max normalization plus a
// fitted SPAD or SPAD+ model, as versioned plain text.
//
//   spadplus-model 1
//   detector spad+
//   minmax M
//   <min> <max>            (M lines)
//   histogram N M b ...    (SPAD: one histogram; SPAD+: input histogram,
//   pca M ...               PCA transform, PC histogram)
//   end

#ifndef SPADPLUS_MODEL_IO_H_
#define SPADPLUS_MODEL_IO_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spadplus/dataset.h"
#include "spadplus/histogram.h"
#include "spadplus/pca.h"

namespace spadplus {

inline constexpr int kModelFormatVersion = 1;

struct FittedModel {
  MinMaxParams normalization;
  std::variant<HistogramModel, SpadPlusModel> model;

  std::size_t dims() const { return normalization.dims(); }
  bool is_spad_plus() const {
    return std::holds_alternative<SpadPlusModel>(model);
  }
};

// Normalizes `train` with min-max fitted on it, then fits SPAD (`spad_plus`
// false) or SPAD+.
FittedModel FitModel(const Matrix& train, bool spad_plus,
                     std::optional<std::size_t> bins = std::nullopt);

// Normalizes each raw row with the stored params and scores it. Lower is
// more anomalous. `variant` must be Full() for SPAD models.
std::vector<double> ScoreWithModel(const FittedModel& model, const Matrix& raw,
                                   const ScoreVariant& variant = {});

void WriteModel(std::ostream& out, const FittedModel& model);
FittedModel ReadModel(std::istream& in);
void SaveModel(const std::string& path, const FittedModel& model);
FittedModel LoadModel(const std::string& path);

}  // namespace spadplus

#endif  // SPADPLUS_MODEL_IO_H_
