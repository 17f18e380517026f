// Copyright 2026 The putbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PUTBOUND_ERROR_H_
#define PUTBOUND_ERROR_H_

#include <stdexcept>
#include <string>

namespace putbound {

enum class Errc {
  // Validation failures (CLI exit code 2).
  kNegativeMass,
  kMassNotOne,
  kDimensionMismatch,
  kAlphabetMismatch,
  kEmptySampleSet,
  kInvalidBeta,
  kInvalidParam,
  kInvalidMargin,
  kMissingMargin,
  kOutOfRange,
  kParseError,
  kReservedLabelCollision,
  kUnsupportedMeasure,
  kEmptySet,
  kInsufficientData,
  kDegenerateConditional,
  // Infeasibility (CLI exit code 3).
  kInfeasible,
  kInfeasibleConstraint,
  kInfeasibleShrunkBudget,
  kNotCertifiable,
  kEmptyFeasibleSet,
  // Complexity guard (CLI exit code 4).
  kTooLarge,
  // Other runtime failures.
  kOptimizerNotConverged,
};

/// Returns the stable identifier for an error code, e.g. "MassNotOne".
inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kNegativeMass: return "NegativeMass";
    case Errc::kMassNotOne: return "MassNotOne";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kAlphabetMismatch: return "AlphabetMismatch";
    case Errc::kEmptySampleSet: return "EmptySampleSet";
    case Errc::kInvalidBeta: return "InvalidBeta";
    case Errc::kInvalidParam: return "InvalidParam";
    case Errc::kInvalidMargin: return "InvalidMargin";
    case Errc::kMissingMargin: return "MissingMargin";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kParseError: return "ParseError";
    case Errc::kReservedLabelCollision: return "ReservedLabelCollision";
    case Errc::kUnsupportedMeasure: return "Unsupported";
    case Errc::kEmptySet: return "EmptySet";
    case Errc::kInsufficientData: return "InsufficientData";
    case Errc::kDegenerateConditional: return "DegenerateConditional";
    case Errc::kInfeasible: return "Infeasible";
    case Errc::kInfeasibleConstraint: return "InfeasibleConstraint";
    case Errc::kInfeasibleShrunkBudget: return "InfeasibleShrunkBudget";
    case Errc::kNotCertifiable: return "NotCertifiable";
    case Errc::kEmptyFeasibleSet: return "EmptyFeasibleSet";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kOptimizerNotConverged: return "OptimizerNotConverged";
  }
  return "UnknownError";
}

/// CLI exit code family for an error: 2 validation, 3 infeasible, 4 guard.
inline int errc_exit_code(Errc code) {
  switch (code) {
    case Errc::kInfeasible:
    case Errc::kInfeasibleConstraint:
    case Errc::kInfeasibleShrunkBudget:
    case Errc::kNotCertifiable:
    case Errc::kEmptyFeasibleSet:
      return 3;
    case Errc::kTooLarge:
      return 4;
    case Errc::kOptimizerNotConverged:
      return 1;
    default:
      return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void throw_error(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace putbound

#endif  // PUTBOUND_ERROR_H_
