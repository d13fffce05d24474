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

#include <cstdint>
#include <functional>
#include <vector>

#include "reachgame/game.hpp"

// Test-side verification machinery. Built as a separate library so the main
// one carries none of it.
namespace reachgame::oracle {

struct SimulationConfig {
  std::size_t runs = 10000;
  std::size_t horizon = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct Estimate {
  double p = 0.0;
  double std_error = 0.0;
  std::size_t runs = 0;
};

// Mixed action given the visited states so far (history.back() is current).
using HistoryStrategy = std::function<MixedAction(const std::vector<std::size_t>& history)>;

// Estimates P(horizon, top) from `from`. Deterministic in (seed, runs,
// horizon) whatever the thread count.
Estimate simulate(const ConcurrentGame& game, const PositionalStrategy& sa, const PositionalStrategy& sb,
                  std::size_t from, const SimulationConfig& cfg);
Estimate simulate(const ConcurrentGame& game, const HistoryStrategy& sa, const HistoryStrategy& sb,
                  std::size_t from, const SimulationConfig& cfg);

// Pointwise max of val^{sa} over positional sa whose probabilities are
// multiples of 1/steps. Sinks (every cell loops) are left uniform.
// kCapExceeded when the grid has more than `cap` points.
Valuation grid_best_positional_a(const ConcurrentGame& game, std::size_t steps,
                                 std::size_t cap = 2'000'000);

struct KleeneChain {
  std::vector<Valuation> guarantees;          // v_0 .. v_n
  std::vector<PositionalStrategy> stages;     // stages[k-1] is played with k steps left
  Valuation worst_case;                       // min over Player B of P(n, top)
  HistoryStrategy strategy() const;           // plays stages by history length
};

KleeneChain kleene_strategy_chain(const ConcurrentGame& game, std::size_t n);

// Mean of 0/1 outcomes by pairwise summation.
double pairwise_mean(const std::vector<std::uint8_t>& hits);

}  // namespace reachgame::oracle
