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

#ifndef SPADPLUS_ERRORS_H_
#define SPADPLUS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace spadplus {

// Base class for every error raised by the library. The CLI maps each
// subclass to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed CSV or model file content.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid argument or configuration (bad override, bad seed count, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Vector / matrix / model dimensionality disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A fit could not be carried out on the given data (too few rows, no
// convergence, single-class labels, ...).
class DetectorError : public Error {
 public:
  using Error::Error;
};

}  // namespace spadplus

#endif  // SPADPLUS_ERRORS_H_
