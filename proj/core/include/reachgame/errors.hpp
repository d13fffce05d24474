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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reachgame {

enum class ErrorCode {
  kInvalidInput,
  kDistributionNotNormalized,
  kTargetNotSink,
  kUnknownIdentifier,
  kDimensionMismatch,
  kSolverDidNotConverge,
  kCapExceeded,
  kSingularSystem,
  kValuesNotConverged,
  kConstructionFailed,
  kDegenerateGap,
  kFileNotFound,
};

// Stable name used in error reports, e.g. "TargetNotSink".
std::string_view error_name(ErrorCode code);

// All domain failures are reported through this exception. `details` carries
// one line per violation when several problems are found at once (game
// validation reports every violation, not just the first).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::string> details = {});

  ErrorCode code() const { return code_; }
  const std::vector<std::string>& details() const { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace reachgame
