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

// spadplus: fit / score / bench / synth.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 I/O error,
// 4 parse error (CSV or model file), 5 dimension mismatch, 6 detector error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spadplus/dataset.h"
#include "spadplus/detector.h"
#include "spadplus/errors.h"
#include "spadplus/eval.h"
#include "spadplus/model_io.h"
#include "spadplus/synth.h"

namespace {

using namespace spadplus;

struct RunConfig {
  std::vector<std::string> inputs;
  std::string label_col;
  std::vector<std::string> anomaly_values;
  std::vector<std::string> detectors;
  std::optional<std::size_t> bins;
  std::optional<std::size_t> k;
  std::optional<std::size_t> trees;
  std::optional<std::size_t> psi;
  std::uint64_t seed = 0;
  std::size_t repeats = 10;
  std::string variant = "full";
  std::optional<std::size_t> top_m;
  std::string model;
  std::string out;
  bool no_timing = false;
  // synth
  std::size_t n_points = 1000;
  double rho = 0.95;
  std::size_t n_planted = 1;
};

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write \"" + path + "\"");
  return out;
}

// --anomaly-value is given once for all inputs or once per --input.
CsvOptions CsvFor(const RunConfig& c, std::size_t input) {
  const auto& values = c.anomaly_values;
  if (values.size() > 1 && values.size() != c.inputs.size()) {
    throw ConfigError("give --anomaly-value once or once per --input");
  }
  std::string anomaly;
  if (!values.empty()) anomaly = values.size() == 1 ? values[0] : values[input];
  return CsvOptions{c.label_col, anomaly};
}

// Builds one DetectorConfig per --detector, routing each override only to
// the detectors it applies to. An override no selected detector accepts is a
// configuration error.
std::vector<DetectorConfig> BuildDetectors(const RunConfig& c) {
  std::vector<std::string> names = c.detectors;
  if (names.empty()) names = {"lof", "iforest", "sp", "spad", "spad+"};
  const ScoreVariant variant = ScoreVariant::Parse(c.variant, c.top_m);

  std::vector<DetectorConfig> configs;
  bool used_bins = false, used_k = false, used_trees = false, used_psi = false,
       used_variant = false;
  for (const auto& name : names) {
    DetectorConfig config;
    config.kind = ParseDetectorKind(name);
    switch (config.kind) {
      case DetectorKind::kLof:
        config.k = c.k;
        used_k = true;
        break;
      case DetectorKind::kIForest:
        config.trees = c.trees;
        config.psi = c.psi;
        used_trees = used_psi = true;
        break;
      case DetectorKind::kSp:
        config.psi = c.psi;
        used_psi = true;
        break;
      case DetectorKind::kSpad:
        config.bins = c.bins;
        used_bins = true;
        break;
      case DetectorKind::kSpadPlus:
        config.bins = c.bins;
        config.variant = variant;
        used_bins = used_variant = true;
        break;
    }
    config.Validate();
    configs.push_back(config);
  }
  if (c.bins && !used_bins) throw ConfigError("--b needs spad or spad+");
  if (c.k && !used_k) throw ConfigError("--k needs lof");
  if (c.trees && !used_trees) throw ConfigError("--trees needs iforest");
  if (c.psi && !used_psi) throw ConfigError("--psi needs iforest or sp");
  if (variant.kind() != ScoreVariant::Kind::kFull && !used_variant) {
    throw ConfigError("--variant needs spad+");
  }
  return configs;
}

void CmdFit(const RunConfig& c) {
  bool spad_plus = true;
  if (!c.detectors.empty()) {
    if (c.detectors.size() != 1) throw ConfigError("fit takes one --detector");
    const DetectorKind kind = ParseDetectorKind(c.detectors.front());
    if (kind != DetectorKind::kSpad && kind != DetectorKind::kSpadPlus) {
      throw ConfigError("fit supports only spad and spad+");
    }
    spad_plus = kind == DetectorKind::kSpadPlus;
  }
  const LabeledDataset data = LoadCsv(c.inputs.front(), CsvFor(c, 0));
  std::vector<std::size_t> normals;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    if (data.labels()[r] == Label::kNormal) normals.push_back(r);
  }
  const Matrix train = data.values().SelectRows(normals);
  if (train.empty()) throw DetectorError("no normal rows to fit on");
  SaveModel(c.out, FitModel(train, spad_plus, c.bins));
}

void CmdScore(const RunConfig& c) {
  const FittedModel model = LoadModel(c.model);
  const LabeledDataset data = LoadCsv(c.inputs.front(), CsvFor(c, 0));
  const std::vector<double> scores = ScoreWithModel(
      model, data.values(), ScoreVariant::Parse(c.variant, c.top_m));
  std::ofstream file;
  if (!c.out.empty()) file = OpenOutput(c.out);
  std::ostream& out = c.out.empty() ? std::cout : file;
  out << "id,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out << i << ',' << FormatDouble(scores[i]) << '\n';
  }
  if (!out) throw IoError("failed writing scores");
}

void CmdBench(const RunConfig& c) {
  const std::vector<DetectorConfig> detectors = BuildDetectors(c);
  std::vector<NamedDataset> datasets;
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    datasets.push_back({std::filesystem::path(c.inputs[i]).stem().string(),
                        LoadCsv(c.inputs[i], CsvFor(c, i))});
  }
  BenchmarkOptions options;
  options.repeats = c.repeats;
  options.split_seed = c.seed;
  const BenchmarkReport report = Benchmark(datasets, detectors, options);

  if (c.out.empty()) {
    WriteAucMarkdown(std::cout, report);
    std::cout << '\n';
    WriteRuntimeMarkdown(std::cout, report);
    return;
  }
  auto csv = OpenOutput(c.out + ".csv");
  WriteReportCsv(csv, report, !c.no_timing);
  auto md = OpenOutput(c.out + ".md");
  WriteAucMarkdown(md, report);
  auto runtime = OpenOutput(c.out + "_runtime.md");
  WriteRuntimeMarkdown(runtime, report);
}

void CmdSynth(const RunConfig& c) {
  SynthOptions options;
  options.num_points = c.n_points;
  options.correlation = c.rho;
  options.num_planted = c.n_planted;
  options.seed = c.seed;
  const LabeledDataset data = GenerateCorrelatedGaussian(options);
  std::ofstream file;
  if (!c.out.empty()) file = OpenOutput(c.out);
  std::ostream& out = c.out.empty() ? std::cout : file;
  WriteCsv(out, data, "label", "anomaly", "normal");
}

int ExitCodeFor(const Error& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const IoError*>(&e)) return 3;
  if (dynamic_cast<const ParseError*>(&e)) return 4;
  if (dynamic_cast<const DimensionMismatch*>(&e)) return 5;
  return 6;
}

const char* KindFor(int code) {
  switch (code) {
    case 2:
      return "config";
    case 3:
      return "io";
    case 4:
      return "parse";
    case 5:
      return "dimension";
    default:
      return "detector";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Histogram-based anomaly detection (SPAD, SPAD+) with LOF, isolation "
      "forest and Sp baselines.\nExit codes: 0 ok, 2 usage/config, 3 I/O, "
      "4 parse, 5 dimension mismatch, 6 detector."};
  app.require_subcommand(1);
  RunConfig c;

  const auto add_csv = [&](CLI::App* sub, bool label_required) {
    auto* label = sub->add_option("--label-col", c.label_col,
                                  "Name of the label column");
    sub->add_option("--anomaly-value", c.anomaly_values,
                    "Label value marking anomalies (once, or once per "
                    "--input)");
    if (label_required) label->required();
  };
  const auto add_variant = [&](CLI::App* sub) {
    sub->add_option("--variant", c.variant,
                    "SPAD+ score terms: full, input_only, pcs_only, top_m_pcs")
        ->check(CLI::IsMember({"full", "input_only", "pcs_only", "top_m_pcs"}));
    sub->add_option("--top-m", c.top_m,
                    "Number of leading PCs for --variant top_m_pcs");
  };

  auto* fit = app.add_subcommand("fit", "Fit a SPAD or SPAD+ model file");
  fit->add_option("--input", c.inputs, "Training CSV")->required()
      ->expected(1);
  add_csv(fit, false);
  fit->add_option("--detector", c.detectors, "spad or spad+ (default spad+)");
  fit->add_option("--b", c.bins, "Bins per dimension");
  fit->add_option("--out", c.out, "Model file to write")->required();

  auto* score = app.add_subcommand("score", "Score a CSV with a model file");
  score->add_option("--model", c.model, "Model file from `fit`")->required();
  score->add_option("--input", c.inputs, "CSV to score")->required()
      ->expected(1);
  add_csv(score, false);
  add_variant(score);
  score->add_option("--out", c.out, "Scores CSV (default stdout)");

  auto* bench = app.add_subcommand(
      "bench", "Split, normalize, fit, score and report AUC and runtime");
  bench->add_option("--input", c.inputs, "Dataset CSV (repeatable)")
      ->required();
  add_csv(bench, true);
  bench->add_option("--detector", c.detectors,
                    "lof, iforest, sp, spad, spad+ (repeatable; default all)");
  bench->add_option("--b", c.bins, "Bins per dimension (spad, spad+)");
  bench->add_option("--k", c.k, "Neighbours (lof)");
  bench->add_option("--trees", c.trees, "Number of trees (iforest)");
  bench->add_option("--psi", c.psi, "Subsample size (iforest, sp)");
  bench->add_option("--seed", c.seed, "Split seed; detector seeds derive from it");
  bench->add_option("--repeats", c.repeats, "Runs per randomized detector");
  add_variant(bench);
  bench->add_option("--out", c.out,
                    "Output prefix: writes PREFIX.csv, PREFIX.md and "
                    "PREFIX_runtime.md (default: markdown to stdout)");
  bench->add_flag("--no-timing", c.no_timing,
                  "Omit timing columns from the CSV report");

  auto* synth = app.add_subcommand(
      "synth", "Write a correlated 2-D Gaussian with planted anomalies");
  synth->add_option("--n-points", c.n_points, "Normal points");
  synth->add_option("--rho", c.rho, "Correlation, |rho| < 1");
  synth->add_option("--n-planted", c.n_planted, "Planted anomalies");
  synth->add_option("--seed", c.seed, "Random seed");
  synth->add_option("--out", c.out, "CSV to write (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fit->parsed()) CmdFit(c);
    if (score->parsed()) CmdScore(c);
    if (bench->parsed()) CmdBench(c);
    if (synth->parsed()) CmdSynth(c);
  } catch (const Error& e) {
    const int code = ExitCodeFor(e);
    std::cerr << "spadplus: " << KindFor(code) << " error: " << e.what()
              << '\n';
    return code;
  }
  return 0;
}
