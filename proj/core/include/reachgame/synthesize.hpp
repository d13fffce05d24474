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

#include "reachgame/classify.hpp"
#include "reachgame/game.hpp"
#include "reachgame/matrix_game.hpp"

namespace reachgame {

// Smallest gap between a non-optimal column's payoff and the value, over
// the states of `domain`, under the Player-A actions `sa` in <F_q, mu_m>.
// 1 when no non-optimal column exists. kDegenerateGap when <= theta_strict.
double optimal_action_gap(const ConcurrentGame& game, const Valuation& m,
                          const std::vector<MixedAction>& sa, const StateSet& domain,
                          const Tolerances& tol = {});

struct IncreasingValuation {
  Valuation values;
  std::size_t initial_power = 0;  // first K with w < Delta~^K(w)
  double min_increase = 0.0;      // min over Q \ G of Delta(v)(q) - v(q)
};

// v <= m, |m - v| <= epsilon, v = m on `pinned` and Delta(v)(q) > v(q) off
// `pinned`. kConstructionFailed when the final check fails.
IncreasingValuation increasing_valuation(const ConcurrentGame& game, const Valuation& m,
                                         const StateSet& pinned, double epsilon,
                                         const Tolerances& tol = {}, std::size_t max_power = 100000);

enum class Provenance { kTarget, kZeroSet, kEfficient, kBadConstruction };

std::string_view provenance_name(Provenance p);

struct SynthesisResult {
  PositionalStrategy strategy;
  Valuation guarantee;  // v
  double epsilon = 0.0;  // requested epsilon
  double epsilon_used = 0.0;  // min(eta, epsilon)
  double eta = 1.0;
  std::vector<Provenance> provenance;
  std::vector<int> level;  // Sec level for efficient states, -1 otherwise
  Valuation evaluated;     // val^{sa} by policy iteration
  bool verified = false;
  std::vector<std::string> warnings;
};

SynthesisResult synthesize_a(const ConcurrentGame& game, const ClassificationReport& report, double epsilon);

struct OpponentSynthesis {
  PositionalStrategy strategy;
  Valuation evaluated;  // sup over Player A, by policy iteration
  bool verified = false;
};

OpponentSynthesis synthesize_b(const ConcurrentGame& game, const Valuation& m);

}  // namespace reachgame
