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

#include <string>
#include <vector>

#include "reachgame/fixpoint.hpp"
#include "reachgame/game.hpp"

namespace reachgame {

// Two-sided estimate of m. `lower` is guaranteed by positional Player-A
// strategies (or is a Kleene iterate), `upper` by positional Player-B
// strategies, so lower <= m <= upper up to linear-solve round-off.
struct GameValues {
  FixpointResult kleene;
  Valuation lower;
  Valuation upper;
  Valuation values;      // upper when it is a Delta fixed point close to lower, else lower
  double gap = 0.0;      // sup-norm of upper - lower
  double residual = 0.0; // sup-norm of Delta(values) - values
  bool upper_selected = false;
  bool converged = false;
  StateSet zero_set;
  std::vector<std::string> warnings;
};

// Kleene iteration followed by a few rounds of strategy-based bracketing.
GameValues solve_values(const ConcurrentGame& game, const FixpointOptions& options = {});

}  // namespace reachgame
