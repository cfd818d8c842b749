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

// Python bindings. Matrices cross the boundary as C-contiguous float64
// arrays and are copied on the way in and out.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "spadplus/baselines.h"
#include "spadplus/dataset.h"
#include "spadplus/detector.h"
#include "spadplus/errors.h"
#include "spadplus/eval.h"
#include "spadplus/histogram.h"
#include "spadplus/model_io.h"
#include "spadplus/pca.h"
#include "spadplus/synth.h"

namespace py = pybind11;

namespace spadplus {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;

Matrix ToMatrix(const Array& a) {
  if (a.ndim() != 2) throw DimensionMismatch("expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return Matrix(rows, cols, std::vector<double>(a.data(), a.data() + a.size()));
}

Array FromMatrix(const Matrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

Array FromVector(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

BoolArray FromLabels(const std::vector<Label>& labels) {
  BoolArray out(static_cast<py::ssize_t>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.mutable_data()[i] = labels[i] == Label::kAnomaly;
  }
  return out;
}

std::vector<Label> ToLabels(const BoolArray& is_anomaly) {
  if (is_anomaly.ndim() != 1) throw DimensionMismatch("expected a 1-D label array");
  std::vector<Label> out(static_cast<std::size_t>(is_anomaly.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = is_anomaly.data()[i] ? Label::kAnomaly : Label::kNormal;
  }
  return out;
}

ScoreVariant Variant(const std::string& name, std::optional<std::size_t> top_m) {
  return ScoreVariant::Parse(name, top_m);
}

py::tuple DatasetTuple(const LabeledDataset& d) {
  return py::make_tuple(FromMatrix(d.values()), d.feature_names(),
                        FromLabels(d.labels()));
}

}  // namespace
}  // namespace spadplus

PYBIND11_MODULE(_spadplus, m) {
  using namespace spadplus;
  m.doc() = "SPAD and SPAD+ anomaly detectors with LOF, iforest and Sp baselines";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<DetectorError>(m, "DetectorError", base.ptr());

  m.def("load_csv",
        [](const std::string& path, const std::string& label_column,
           const std::string& anomaly_value) {
          return DatasetTuple(LoadCsv(path, {label_column, anomaly_value}));
        },
        py::arg("path"), py::arg("label_column") = "",
        py::arg("anomaly_value") = "",
        "Returns (values, feature_names, is_anomaly).");

  m.def("split",
        [](const Array& values, const BoolArray& is_anomaly, std::uint64_t seed) {
          const Matrix x = ToMatrix(values);
          std::vector<std::string> names(x.cols());
          for (std::size_t i = 0; i < names.size(); ++i) names[i] = std::to_string(i);
          const EvalSplit s =
              SemiSupervisedSplit(LabeledDataset(x, names, ToLabels(is_anomaly)), seed);
          return py::make_tuple(FromMatrix(s.train.values()),
                                FromMatrix(s.test.values()),
                                FromLabels(s.test.labels()));
        },
        py::arg("values"), py::arg("is_anomaly"), py::arg("seed") = 0,
        "Half of the normals train; returns (train, test, test_is_anomaly).");

  m.def("minmax_normalize",
        [](const Array& train, const Array& data) {
          return FromMatrix(MinMaxParams::Fit(ToMatrix(train)).Apply(ToMatrix(data)));
        },
        py::arg("train"), py::arg("data"),
        "Scales `data` with per-column ranges fitted on `train`.");

  m.def("default_bin_count", &DefaultBinCount, py::arg("n"));

  py::class_<HistogramModel>(m, "Spad")
      .def_static("fit",
                  [](const Array& train, std::optional<std::size_t> bins) {
                    return FitHistograms(ToMatrix(train), bins);
                  },
                  py::arg("train"), py::arg("bins") = py::none())
      .def_property_readonly("num_bins", &HistogramModel::num_bins)
      .def_property_readonly("num_train", &HistogramModel::num_train)
      .def_property_readonly("dims", &HistogramModel::dims)
      .def("score", [](const HistogramModel& h, const Array& x) {
        return FromVector(h.ScoreRows(ToMatrix(x)));
      }, "Lower is more anomalous.");

  py::class_<SpadPlusModel>(m, "SpadPlus")
      .def_static("fit",
                  [](const Array& train, std::optional<std::size_t> bins) {
                    return FitSpadPlus(ToMatrix(train), bins);
                  },
                  py::arg("train"), py::arg("bins") = py::none())
      .def_property_readonly("num_bins",
                             [](const SpadPlusModel& s) { return s.input_hist().num_bins(); })
      .def_property_readonly("dims", &SpadPlusModel::dims)
      .def_property_readonly("eigenvalues", [](const SpadPlusModel& s) {
        return FromVector(s.transform().eigenvalues());
      })
      .def_property_readonly("components", [](const SpadPlusModel& s) {
        return FromMatrix(s.transform().components());
      })
      .def("score",
           [](const SpadPlusModel& s, const Array& x, const std::string& variant,
              std::optional<std::size_t> top_m) {
             return FromVector(s.ScoreRows(ToMatrix(x), Variant(variant, top_m)));
           },
           py::arg("x"), py::arg("variant") = "full", py::arg("top_m") = py::none(),
           "Lower is more anomalous.");

  py::class_<LofModel>(m, "Lof")
      .def_static("fit",
                  [](const Array& train, std::optional<std::size_t> k) {
                    return LofModel::Fit(ToMatrix(train), k);
                  },
                  py::arg("train"), py::arg("k") = py::none())
      .def_property_readonly("k", &LofModel::k)
      .def("score", [](const LofModel& l, const Array& x) {
        return FromVector(l.ScoreRows(ToMatrix(x)));
      }, "Higher is more anomalous.");

  py::class_<IsolationForest>(m, "IsolationForest")
      .def_static("fit",
                  [](const Array& train, std::size_t num_trees,
                     std::size_t subsample_size, std::uint64_t seed) {
                    return IsolationForest::Fit(ToMatrix(train),
                                                {num_trees, subsample_size, seed});
                  },
                  py::arg("train"), py::arg("num_trees") = 100,
                  py::arg("subsample_size") = 256, py::arg("seed") = 0)
      .def_property_readonly("num_trees", &IsolationForest::num_trees)
      .def_property_readonly("height_limit", &IsolationForest::height_limit)
      .def("score", [](const IsolationForest& f, const Array& x) {
        return FromVector(f.ScoreRows(ToMatrix(x)));
      }, "Mean path length; lower is more anomalous.");

  py::class_<SpModel>(m, "Sp")
      .def_static("fit",
                  [](const Array& train, std::size_t subsample_size,
                     std::uint64_t seed) {
                    return SpModel::Fit(ToMatrix(train), subsample_size, seed);
                  },
                  py::arg("train"), py::arg("subsample_size") = 25,
                  py::arg("seed") = 0)
      .def("score", [](const SpModel& s, const Array& x) {
        return FromVector(s.ScoreRows(ToMatrix(x)));
      }, "Higher is more anomalous.");

  py::class_<FittedModel>(m, "Model")
      .def_property_readonly("dims", &FittedModel::dims)
      .def_property_readonly("is_spad_plus", &FittedModel::is_spad_plus)
      .def("score",
           [](const FittedModel& f, const Array& raw, const std::string& variant,
              std::optional<std::size_t> top_m) {
             return FromVector(ScoreWithModel(f, ToMatrix(raw), Variant(variant, top_m)));
           },
           py::arg("x"), py::arg("variant") = "full", py::arg("top_m") = py::none())
      .def("save", [](const FittedModel& f, const std::string& path) {
        SaveModel(path, f);
      }, py::arg("path"));

  m.def("fit_model",
        [](const Array& train, const std::string& detector,
           std::optional<std::size_t> bins) {
          const DetectorKind kind = ParseDetectorKind(detector);
          if (kind != DetectorKind::kSpad && kind != DetectorKind::kSpadPlus) {
            throw ConfigError("fit_model supports only spad and spad+");
          }
          return FitModel(ToMatrix(train), kind == DetectorKind::kSpadPlus, bins);
        },
        py::arg("train"), py::arg("detector") = "spad+", py::arg("bins") = py::none(),
        "Min-max normalizes raw training rows, then fits SPAD or SPAD+.");
  m.def("load_model", &LoadModel, py::arg("path"));

  m.def("auc",
        [](const Array& scores, const BoolArray& is_anomaly, bool higher) {
          if (scores.ndim() != 1) throw DimensionMismatch("expected 1-D scores");
          DetectorOutput out{
              std::vector<double>(scores.data(), scores.data() + scores.size()),
              higher ? Orientation::kHigherIsAnomalous
                     : Orientation::kLowerIsAnomalous};
          return Auc(out, ToLabels(is_anomaly));
        },
        py::arg("scores"), py::arg("is_anomaly"), py::arg("higher_is_anomalous"));

  m.def("run_detector",
        [](const std::string& name, const Array& train, const Array& test,
           std::uint64_t seed) {
          DetectorConfig config;
          config.kind = ParseDetectorKind(name);
          const DetectorOutput out =
              RunDetector(config, ToMatrix(train), ToMatrix(test), seed);
          return py::make_tuple(FromVector(out.scores),
                                out.orientation == Orientation::kHigherIsAnomalous);
        },
        py::arg("name"), py::arg("train"), py::arg("test"), py::arg("seed") = 0,
        "Returns (scores, higher_is_anomalous) with default parameters.");

  m.def("correlated_gaussian",
        [](std::size_t num_points, double rho, std::size_t num_planted,
           std::uint64_t seed) {
          const LabeledDataset d =
              GenerateCorrelatedGaussian({num_points, rho, num_planted, seed});
          return py::make_tuple(FromMatrix(d.values()), FromLabels(d.labels()));
        },
        py::arg("num_points") = 1000, py::arg("rho") = 0.95,
        py::arg("num_planted") = 1, py::arg("seed") = 0,
        "Returns (values, is_anomaly); planted points come last.");
}
