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

// Token-level helpers shared by the model readers.

#ifndef SPADPLUS_SRC_TEXT_IO_H_
#define SPADPLUS_SRC_TEXT_IO_H_

#include <charconv>
#include <cmath>
#include <istream>
#include <string>

#include "spadplus/errors.h"

namespace spadplus::text_io {

inline std::string ReadToken(std::istream& in, const std::string& what) {
  std::string token;
  if (!(in >> token)) {
    throw ParseError("model file truncated: expected " + what);
  }
  return token;
}

inline void ExpectToken(std::istream& in, const std::string& expected) {
  const std::string token = ReadToken(in, "\"" + expected + "\"");
  if (token != expected) {
    throw ParseError("model file: expected \"" + expected + "\", found \"" +
                     token + "\"");
  }
}

template <typename T>
T Read(std::istream& in, const std::string& what) {
  const std::string token = ReadToken(in, what);
  T value{};
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("model file: bad " + what + " \"" + token + "\"");
  }
  return value;
}

inline double ReadDouble(std::istream& in, const std::string& what) {
  const double v = Read<double>(in, what);
  if (!std::isfinite(v)) throw ParseError("model file: non-finite " + what);
  return v;
}

}  // namespace spadplus::text_io

#endif  // SPADPLUS_SRC_TEXT_IO_H_
