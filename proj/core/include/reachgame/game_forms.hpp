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
#include <optional>
#include <vector>

#include "reachgame/game.hpp"
#include "reachgame/matrix_game.hpp"

namespace reachgame {

struct Determinacy {
  bool determined = true;
  StateSet counterexample;  // outcome mask E, empty when determined
};

// Checks every E subset of O, largest first; kCapExceeded above `cap` outcomes.
Determinacy is_determined(const GameForm& form, std::size_t cap = 20);

// Value of <form, alpha[y]>.
double f_alpha(const GameForm& form, const PartialValuation& alpha, double y);

struct AlphaFixpoint {
  double v_alpha = 0.0;
  Valuation total;  // alpha[v_alpha]
  double lower = 0.0;  // last Kleene iterate
  double upper = 1.0;  // certified by a Player-B column mix
  std::size_t iterations = 0;
  double residual = 0.0;  // |f(v_alpha) - v_alpha|
  bool converged = false;
};

AlphaFixpoint f_alpha_lfp(const GameForm& form, const PartialValuation& alpha, double tol = 1e-9,
                          std::size_t max_iter = 10'000'000);

struct RmVerdict {
  double v_alpha = 0.0;
  Valuation total;
  bool rm = false;
  std::optional<SupportPattern> witness;
  double margin = 1.0;  // pattern-scan margin of <form, total>
};

RmVerdict rm_wrt(const GameForm& form, const PartialValuation& alpha, const Tolerances& tol = {});

struct Falsification {
  bool counterexample_found = false;
  std::size_t samples_tried = 0;
  std::optional<PartialValuation> alpha;
  std::optional<RmVerdict> verdict;
};

// Samples non-empty proper unvalued sets E and valuations on O \ E. Finding
// nothing is not a proof of reach-maximizability.
Falsification rm_falsify(const GameForm& form, std::size_t samples, std::uint64_t seed,
                         const Tolerances& tol = {});

// The three-state game <C_(F,alpha), top>: states q0, top, bot.
ConcurrentGame embed_three_state(const GameForm& form, const PartialValuation& alpha);

}  // namespace reachgame
