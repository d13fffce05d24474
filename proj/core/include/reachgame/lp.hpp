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

#include <cstddef>
#include <vector>

namespace reachgame::lp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::vector<double> coeffs;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

// Optimizes objective . x over x >= 0 subject to the constraints.
struct Problem {
  std::size_t variables = 0;
  std::vector<double> objective;
  bool maximize = true;
  std::vector<Constraint> constraints;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Result {
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t pivots = 0;
};

// Dense two-phase tableau simplex with Bland's anti-cycling rule.
Result solve(const Problem& problem);

}  // namespace reachgame::lp
