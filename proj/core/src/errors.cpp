// Copyright 2026 The Reachgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reachgame/errors.hpp"

#include <utility>

namespace reachgame {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kDistributionNotNormalized: return "DistributionNotNormalized";
    case ErrorCode::kTargetNotSink: return "TargetNotSink";
    case ErrorCode::kUnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSolverDidNotConverge: return "SolverDidNotConverge";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kValuesNotConverged: return "ValuesNotConverged";
    case ErrorCode::kConstructionFailed: return "ConstructionFailed";
    case ErrorCode::kDegenerateGap: return "DegenerateGap";
    case ErrorCode::kFileNotFound: return "FileNotFound";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message, std::vector<std::string> details)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code),
      details_(std::move(details)) {}

}  // namespace reachgame
