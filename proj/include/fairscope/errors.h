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

#ifndef FAIRSCOPE_ERRORS_H_
#define FAIRSCOPE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fairscope {

enum class ErrorKind {
  kFormat,       // input text does not parse
  kValidation,   // parsed input violates a data invariant
  kConfig,       // configuration rejected or infeasible
  kArgument,     // bad arguments to a numerical primitive
  kNumerical,    // non-finite values during an iterative solve
  kDegenerate,   // a clustering cannot be scored (coincident centroids etc.)
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

// Single exception type for the library. `stage()` is filled in by the
// pipeline when an error crosses a stage boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  ErrorKind kind_;
  std::string stage_;
};

class FormatError : public Error {
 public:
  // `line` is 1-based; 0 means unknown.
  FormatError(const std::string& message, std::size_t line = 0,
              std::string field = {});
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorKind::kValidation, message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorKind::kConfig, message) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message)
      : Error(ErrorKind::kArgument, message) {}
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& message, int sweep)
      : Error(ErrorKind::kNumerical, message), sweep_(sweep) {}
  int sweep() const { return sweep_; }

 private:
  int sweep_;
};

class DegenerateClusteringError : public Error {
 public:
  explicit DegenerateClusteringError(const std::string& message)
      : Error(ErrorKind::kDegenerate, message) {}
};

// Raised when thresholding leaves one constraint class empty.
class InsufficientConstraintsError : public ValidationError {
 public:
  InsufficientConstraintsError(std::size_t similar, std::size_t dissimilar);
  std::size_t similar_count() const { return similar_; }
  std::size_t dissimilar_count() const { return dissimilar_; }

 private:
  std::size_t similar_;
  std::size_t dissimilar_;
};

}  // namespace fairscope

#endif  // FAIRSCOPE_ERRORS_H_
