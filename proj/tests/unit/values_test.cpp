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

#include <gtest/gtest.h>

#include "random_games.hpp"
#include "reachgame/fixpoint.hpp"
#include "reachgame/mdp.hpp"
#include "reachgame/values.hpp"

namespace reachgame {
namespace {

using testing::Rng;

TEST(SolveValues, Snowball) {
  const auto r = solve_values(testing::snowball());
  EXPECT_TRUE(r.converged);
  EXPECT_GE(r.values[0], 1 - 1e-3);
  EXPECT_EQ(r.values[1], 1.0);
  EXPECT_EQ(r.values[2], 0.0);
  EXPECT_EQ(r.zero_set, (StateSet{false, false, true}));
}

TEST(SolveValues, DilutedSnowball) {
  const auto r = solve_values(testing::snowball(0.5));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.values[0], 0.5, 1e-6);
}

TEST(SolveValues, BracketHoldsOnRandomGames) {
  Rng rng(91);
  for (int i = 0; i < 40; ++i) {
    const auto g = testing::random_game(rng, {5, 2, 3, 2, true, false, false});
    const auto r = solve_values(g);
    for (std::size_t q = 0; q < 5; ++q) {
      EXPECT_LE(r.lower[q], r.upper[q] + 1e-9);
      EXPECT_GE(r.values[q], r.lower[q] - 1e-9);
      EXPECT_LE(r.values[q], r.upper[q] + 1e-9);
    }
    if (r.converged) { EXPECT_LE(sup_distance(apply_delta(g, r.values), r.values), 1e-6); }
    // The bracket ends are realized by actual strategies.
    const auto sup_a = evaluate_against_best_a(g, optimal_b_strategy(g, r.values)).values;
    for (std::size_t q = 0; q < 5; ++q) EXPECT_LE(sup_a[q], r.upper[q] + 1e-4);
  }
}

TEST(SolveValues, TurnBasedExact) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto g = testing::random_game(rng, {4, 2, 2, 2, true, true, true});
    const auto r = solve_values(g);
    const auto exact = testing::turn_based_values(g);
    for (std::size_t q = 0; q < 4; ++q) EXPECT_NEAR(r.values[q], exact[q], 1e-6);
  }
}

TEST(SolveValues, IterationCapWarns) {
  FixpointOptions opt;
  opt.max_iter = 10;
  const auto r = solve_values(testing::snowball(), opt);
  EXPECT_FALSE(r.warnings.empty());
}

}  // namespace
}  // namespace reachgame
