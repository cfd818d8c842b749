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

#include "spadplus/model_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "spadplus/errors.h"
#include "text_io.h"

namespace spadplus {

FittedModel FitModel(const Matrix& train, bool spad_plus,
                     std::optional<std::size_t> bins) {
  FittedModel out{MinMaxParams::Fit(train), HistogramModel()};
  const Matrix normalized = out.normalization.Apply(train);
  if (spad_plus) {
    out.model = FitSpadPlus(normalized, bins);
  } else {
    out.model = FitHistograms(normalized, bins);
  }
  return out;
}

std::vector<double> ScoreWithModel(const FittedModel& model, const Matrix& raw,
                                   const ScoreVariant& variant) {
  if (raw.cols() != model.dims()) {
    throw DimensionMismatch("model expects " + std::to_string(model.dims()) +
                            " features, data has " +
                            std::to_string(raw.cols()));
  }
  const Matrix normalized = model.normalization.Apply(raw);
  if (const auto* plus = std::get_if<SpadPlusModel>(&model.model)) {
    return plus->ScoreRows(normalized, variant);
  }
  if (variant.kind() != ScoreVariant::Kind::kFull &&
      variant.kind() != ScoreVariant::Kind::kInputOnly) {
    throw ConfigError("variant " + variant.ToString() +
                      " needs a SPAD+ model");
  }
  return std::get<HistogramModel>(model.model).ScoreRows(normalized);
}

void WriteModel(std::ostream& out, const FittedModel& model) {
  out << "spadplus-model " << kModelFormatVersion << '\n';
  out << "detector " << (model.is_spad_plus() ? "spad+" : "spad") << '\n';
  out << "minmax " << model.dims() << '\n';
  for (const auto& r : model.normalization.ranges()) {
    out << FormatDouble(r.min) << ' ' << FormatDouble(r.max) << '\n';
  }
  if (const auto* plus = std::get_if<SpadPlusModel>(&model.model)) {
    WriteSpadPlus(out, *plus);
  } else {
    WriteHistogram(out, std::get<HistogramModel>(model.model));
  }
  out << "end\n";
}

FittedModel ReadModel(std::istream& in) {
  text_io::ExpectToken(in, "spadplus-model");
  const int version = text_io::Read<int>(in, "format version");
  if (version != kModelFormatVersion) {
    throw ParseError("unsupported model format version " +
                     std::to_string(version));
  }
  text_io::ExpectToken(in, "detector");
  const std::string detector = text_io::ReadToken(in, "detector name");
  if (detector != "spad" && detector != "spad+") {
    throw ParseError("model file: unknown detector \"" + detector + "\"");
  }
  text_io::ExpectToken(in, "minmax");
  const auto m = text_io::Read<std::size_t>(in, "min-max dimension");
  std::vector<FeatureRange> ranges(m);
  for (auto& r : ranges) {
    r.min = text_io::ReadDouble(in, "min");
    r.max = text_io::ReadDouble(in, "max");
  }
  FittedModel out{MinMaxParams(std::move(ranges)), HistogramModel()};
  if (detector == "spad+") {
    out.model = ReadSpadPlus(in);
  } else {
    out.model = ReadHistogram(in);
  }
  text_io::ExpectToken(in, "end");
  const std::size_t model_dims =
      out.is_spad_plus() ? std::get<SpadPlusModel>(out.model).dims()
                         : std::get<HistogramModel>(out.model).dims();
  if (model_dims != m) {
    throw ParseError("model file: min-max has " + std::to_string(m) +
                     " dimensions, detector has " +
                     std::to_string(model_dims));
  }
  return out;
}

void SaveModel(const std::string& path, const FittedModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file \"" + path + "\"");
  WriteModel(out, model);
  if (!out) throw IoError("failed writing model file \"" + path + "\"");
}

FittedModel LoadModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file \"" + path + "\"");
  try {
    return ReadModel(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace spadplus
