# Copyright 2026 The SPAD+ Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""SPAD and SPAD+ histogram anomaly detectors, plus LOF, isolation forest and
Sp baselines. Scores come back as float64 arrays; check each detector's
orientation before ranking (SPAD, SPAD+ and iforest: lower is anomalous)."""

from ._spadplus import (
    ConfigError,
    DetectorError,
    DimensionMismatch,
    Error,
    IoError,
    IsolationForest,
    Lof,
    Model,
    ParseError,
    Sp,
    Spad,
    SpadPlus,
    auc,
    correlated_gaussian,
    default_bin_count,
    fit_model,
    load_csv,
    load_model,
    minmax_normalize,
    run_detector,
    split,
)

__all__ = [
    "ConfigError",
    "DetectorError",
    "DimensionMismatch",
    "Error",
    "IoError",
    "IsolationForest",
    "Lof",
    "Model",
    "ParseError",
    "Sp",
    "Spad",
    "SpadPlus",
    "auc",
    "correlated_gaussian",
    "default_bin_count",
    "fit_model",
    "load_csv",
    "load_model",
    "minmax_normalize",
    "run_detector",
    "split",
]
