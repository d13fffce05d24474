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
#include <string>
#include <vector>

#include "reachgame/fixpoint.hpp"
#include "reachgame/game.hpp"
#include "reachgame/matrix_game.hpp"
#include "reachgame/values.hpp"

namespace reachgame {

// Good/bad state sets and the Nature states touching them.
struct EffQuery {
  std::size_t state = 0;
  StateSet good;
  StateSet bad;
  StateSet good_nature;
  StateSet bad_nature;

  static EffQuery make(const ConcurrentGame& game, std::size_t q, const StateSet& good, const StateSet& bad);
};

// Realizable patterns of <F_q, mu_m>, computed once per state and reused by
// every Eff query against the same m.
struct LocalPatterns {
  std::vector<PatternScan> scans;  // indexed by state; empty for the target

  static LocalPatterns scan(const ConcurrentGame& game, const Valuation& m, const Tolerances& tol);
  double min_margin() const;
};

// for all b in T, delta(q, S, b) meets good_nature.
bool is_progressive(const ConcurrentGame& game, const EffQuery& query, const SupportPattern& pattern);
// for all b in T, delta(q, S, b) avoids bad_nature.
bool avoids_risk(const ConcurrentGame& game, const EffQuery& query, const SupportPattern& pattern);

std::vector<SupportPattern> progressive_strategies(const ConcurrentGame& game, const Valuation& m,
                                                   std::size_t q, const StateSet& good,
                                                   const Tolerances& tol = {});
// Eff_q(good, bad) at pattern granularity.
std::vector<SupportPattern> risky_strategies_excluded(const ConcurrentGame& game, const Valuation& m,
                                                      std::size_t q, const StateSet& good,
                                                      const StateSet& bad, const Tolerances& tol = {});

struct SecureStates {
  std::vector<StateSet> levels;   // Sec_0, Sec_1, ... (growing, last one stable)
  StateSet secure;                // union of the levels and the zero set
  std::vector<int> level_of;      // first level containing q, -1 if none
  std::vector<SupportPattern> witness;  // efficient pattern chosen at insertion
};

SecureStates secure_states(const ConcurrentGame& game, const LocalPatterns& patterns,
                           const StateSet& zero_set, const StateSet& bad);
SecureStates secure_states(const ConcurrentGame& game, const Valuation& m, const StateSet& zero_set,
                           const StateSet& bad, const Tolerances& tol = {});

struct ClassifyOptions {
  FixpointOptions fixpoint;
  Tolerances tolerances;
  bool force = false;  // classify even when values did not converge
};

struct ClassificationReport {
  Valuation values;
  Valuation lower;
  Valuation upper;
  StateSet zero_set;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<std::vector<StateSet>> sec_hierarchy;  // one hierarchy per Bad round
  std::vector<StateSet> bad_iterations;              // Bad_0, Bad_1, ...
  StateSet max_states;
  StateSet submax_states;
  std::vector<MixedAction> witnesses;  // Player-A action used at each state
  std::vector<int> witness_level;      // Sec level of the witness, -1 otherwise
  std::vector<SupportPattern> patterns;  // efficient pattern on Sec(Bad) states
  Tolerances tolerances;
  double min_margin = 1.0;
  double value_gap = 0.0;
  std::vector<std::string> warnings;
};

// kValuesNotConverged unless `options.force`.
ClassificationReport classify_states(const ConcurrentGame& game, const ClassifyOptions& options = {});
ClassificationReport classify_with_values(const ConcurrentGame& game, const GameValues& values,
                                          const Tolerances& tol = {}, bool force = false);

}  // namespace reachgame
