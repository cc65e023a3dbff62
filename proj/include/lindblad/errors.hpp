// Copyright 2026 The lindblad authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lindblad {

/// Machine-readable failure categories surfaced by the library and the CLI.
enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  NotHermitian,
  NotDensityMatrix,
  NotProjector,
  NotOrthonormal,
  MalformedMatrixJson,
  ZeroEigenvalue,
  NoZeroEigenvalue,
  Decomposable,
  MaximallyMixed,
  NotUniquelyDesignable,
  NotUnique,
  FullRank,
  Unsupported,
  ValidationFailure,
  NumericalFailure,
};

const char* error_code_name(ErrorCode code);

/// Thrown when an input violates a documented precondition. Maps to CLI
/// exit code 1 with a JSON error object.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown when an internal numerical step fails (an eigensolver does not
/// converge, a certified residual is out of range). Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace lindblad
