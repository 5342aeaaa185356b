/*
 * Copyright 2026 The FairScope Authors.
 *
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

#include "fairscope/errors.h"

#include <fmt/format.h>

namespace fairscope {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kArgument: return "argument";
    case ErrorKind::kNumerical: return "numerical";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

namespace {

std::string FormatMessage(const std::string& message, std::size_t line,
                          const std::string& field) {
  std::string out = message;
  if (line > 0) out = fmt::format("line {}: {}", line, out);
  if (!field.empty()) out = fmt::format("{} (field '{}')", out, field);
  return out;
}

}  // namespace

FormatError::FormatError(const std::string& message, std::size_t line,
                         std::string field)
    : Error(ErrorKind::kFormat, FormatMessage(message, line, field)),
      line_(line),
      field_(std::move(field)) {}

InsufficientConstraintsError::InsufficientConstraintsError(
    std::size_t similar, std::size_t dissimilar)
    : ValidationError(fmt::format(
          "insufficient constraints: {} similar and {} dissimilar pairs "
          "survive thresholding; both classes must be non-empty",
          similar, dissimilar)),
      similar_(similar),
      dissimilar_(dissimilar) {}

}  // namespace fairscope
