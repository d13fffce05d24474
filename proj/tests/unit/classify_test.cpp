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

#include <algorithm>

#include "random_games.hpp"
#include "reachgame/classify.hpp"
#include "reachgame/errors.hpp"
#include "reachgame/mdp.hpp"
#include "reachgame/oracle.hpp"
#include "reachgame/synthesize.hpp"

namespace reachgame {
namespace {

using testing::Rng;

const Valuation kSnowballM{1, 1, 0};

StateSet only(std::size_t n, std::size_t q) {
  StateSet s(n, false);
  s[q] = true;
  return s;
}

// Replays Prog/Risk directly from the definitions.
bool replay_progressive(const ConcurrentGame& g, std::size_t q, const SupportPattern& p, const StateSet& good) {
  for (std::size_t b : p.tight_columns) {
    bool hit = false;
    for (std::size_t a : p.rows) {
      for (std::size_t q2 : g.support(g.nature_of(q, a, b))) hit = hit || good[q2];
    }
    if (!hit) return false;
  }
  return true;
}

TEST(EffQuery, NatureSets) {
  const auto g = testing::snowball();
  const auto e = EffQuery::make(g, 0, only(3, 1), only(3, 2));
  EXPECT_EQ(e.good_nature, (StateSet{false, true, false, true}));
  EXPECT_EQ(e.bad_nature, (StateSet{false, false, true, false}));
}

TEST(Progressive, SnowballIsEmpty) {
  const auto g = testing::snowball();
  EXPECT_TRUE(progressive_strategies(g, kSnowballM, 0, only(3, 1)).empty());
  EXPECT_TRUE(risky_strategies_excluded(g, kSnowballM, 0, only(3, 1), StateSet(3, false)).empty());
}

TEST(Progressive, AllCellsReachTarget) {
  // q1: every cell goes straight to the target.
  const auto g = ConcurrentGame::from_tables(2, 0, 2, 2, {{1, 0}}, {0, 0, 0, 0, 0, 0, 0, 0});
  const Valuation m{1, 1};
  const auto all = scan_support_patterns(local_matrix(g, 1, lift(g, m))).patterns;
  EXPECT_EQ(progressive_strategies(g, m, 1, only(2, 0)).size(), all.size());
}

TEST(Progressive, MatchesDefinitionReplay) {
  Rng rng(14);
  for (int i = 0; i < 40; ++i) {
    const auto g = testing::random_game(rng, {4, 2, 2, 2, true, true, false});
    const auto m = solve_values(g).values;
    StateSet good(4, false);
    good[0] = true;
    for (std::size_t q = 1; q < 4; ++q) {
      const auto all = scan_support_patterns(local_matrix(g, q, lift(g, m))).patterns;
      const auto prog = progressive_strategies(g, m, q, good);
      std::size_t expected = 0;
      for (const auto& p : all) expected += replay_progressive(g, q, p, good);
      EXPECT_EQ(prog.size(), expected);
      for (const auto& p : prog) EXPECT_TRUE(replay_progressive(g, q, p, good));
      EXPECT_EQ(risky_strategies_excluded(g, m, q, good, StateSet(4, false)).size(), prog.size());
    }
  }
}

TEST(Risky, OnlyProgressiveRouteIsRisky) {
  // q1: a0 -> {target 1/2, q2 1/2}, a1 -> q1 loop. q2 is bad.
  std::vector<std::vector<double>> dist = {{1, 0, 0}, {0.5, 0, 0.5}, {0, 1, 0}, {0, 0, 1}};
  const auto g = ConcurrentGame::from_tables(3, 0, 2, 1, dist, {0, 0, 1, 2, 3, 3});
  const Valuation m{1, 0.5, 0};
  EXPECT_FALSE(progressive_strategies(g, m, 1, only(3, 0)).empty());
  EXPECT_TRUE(risky_strategies_excluded(g, m, 1, only(3, 0), only(3, 2)).empty());
}

TEST(SecureStates, SnowballWithNoBadStates) {
  const auto g = testing::snowball();
  const auto sec = secure_states(g, kSnowballM, zero_value_set(g), StateSet(3, false));
  ASSERT_FALSE(sec.levels.empty());
  EXPECT_EQ(sec.levels.back(), only(3, 1));
  EXPECT_EQ(sec.secure, (StateSet{false, true, true}));
  EXPECT_EQ(sec.level_of[0], -1);
}

TEST(SecureStates, Ladder) {
  // q_k -> q_{k-1} -> ... -> target, all deterministic.
  const std::size_t n = 5;
  std::vector<std::vector<double>> dist;
  std::vector<std::size_t> delta;
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<double> d(n, 0.0);
    d[q == 0 ? 0 : q - 1] = 1.0;
    dist.push_back(d);
    delta.push_back(q);
  }
  const auto g = ConcurrentGame::from_tables(n, 0, 1, 1, dist, delta);
  const auto sec = secure_states(g, Valuation(n, 1.0), zero_value_set(g), StateSet(n, false));
  for (std::size_t q = 0; q < n; ++q) EXPECT_EQ(sec.level_of[q], static_cast<int>(q));
}

TEST(Classify, Snowball) {
  const auto r = classify_states(testing::snowball());
  EXPECT_EQ(r.submax_states, (StateSet{true, false, false}));
  EXPECT_EQ(r.max_states, (StateSet{false, true, true}));
  EXPECT_EQ(r.bad_iterations.front(), StateSet(3, false));
  EXPECT_EQ(r.bad_iterations.back(), (StateSet{true, false, false}));
}

TEST(Classify, AllZeroGame) {
  const auto g = ConcurrentGame::from_tables(3, 0, 2, 2, {{1, 0, 0}, {0, 0.5, 0.5}, {0, 0, 1}},
                                             {0, 0, 0, 0, 1, 2, 2, 1, 2, 2, 2, 2});
  const auto r = classify_states(g);
  EXPECT_EQ(r.max_states, StateSet(3, true));
}

TEST(Classify, SingleColumnGamesHaveNoSubMax) {
  Rng rng(19);
  for (int i = 0; i < 30; ++i) {
    const auto g = testing::random_game(rng, {5, 3, 1, 2, true, false, false});
    const auto r = classify_states(g);
    EXPECT_EQ(count_members(r.submax_states), 0U);
  }
}

TEST(Classify, RefusesUnconvergedValues) {
  ClassifyOptions opt;
  opt.fixpoint.max_iter = 5;
  opt.fixpoint.tol = 1e-12;
  try {
    classify_states(testing::snowball(), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValuesNotConverged);
  }
  opt.force = true;
  EXPECT_NO_THROW(classify_states(testing::snowball(), opt));
}

TEST(Classify, StructuralInvariants) {
  Rng rng(27);
  for (int i = 0; i < 40; ++i) {
    const auto g = testing::random_game(rng, {5, 2, 2, 2, true, false, false});
    const auto r = classify_states(g);
    for (std::size_t q = 0; q < 5; ++q) {
      EXPECT_NE(r.max_states[q], r.submax_states[q]);
      if (r.zero_set[q]) { EXPECT_TRUE(r.max_states[q]); }
    }
    EXPECT_TRUE(r.max_states[g.target()]);
    EXPECT_LE(r.bad_iterations.size(), 5U + 2U);
    for (std::size_t k = 1; k < r.bad_iterations.size(); ++k) {
      for (std::size_t q = 0; q < 5; ++q) EXPECT_LE(r.bad_iterations[k - 1][q], r.bad_iterations[k][q]);
    }
    for (const auto& levels : r.sec_hierarchy) {
      EXPECT_LE(levels.size(), 5U + 1U);
      for (std::size_t k = 1; k < levels.size(); ++k) {
        for (std::size_t q = 0; q < 5; ++q) EXPECT_LE(levels[k - 1][q], levels[k][q]);
      }
    }
  }
}

TEST(Classify, SubMaxStatesBeatGridStrategies) {
  Rng rng(33);
  for (int i = 0; i < 40; ++i) {
    const auto g = testing::random_game(rng, {4, 2, 2, 2, true, true, false});
    const auto r = classify_states(g);
    if (count_members(r.submax_states) == 0) continue;
    const auto grid = oracle::grid_best_positional_a(g, 50);
    for (std::size_t q = 0; q < 4; ++q) {
      if (!r.submax_states[q]) continue;
      EXPECT_LE(grid[q], r.values[q] - 0.005) << "game " << i << " state " << q;
    }
  }
  // The snowball is the canonical case.
  const auto g = testing::snowball();
  const auto grid = oracle::grid_best_positional_a(g, 50);
  EXPECT_LE(grid[0], 1 - 0.005);
}

TEST(Classify, MaxStatesAreRealizedBySynthesis) {
  Rng rng(44);
  for (int i = 0; i < 30; ++i) {
    const auto g = testing::random_game(rng, {5, 2, 2, 2, true, false, false});
    const auto r = classify_states(g);
    const auto s = synthesize_a(g, r, 0.05);
    for (std::size_t q = 0; q < 5; ++q) {
      if (r.max_states[q]) { EXPECT_NEAR(s.evaluated[q], r.values[q], 1e-4); }
    }
  }
}

}  // namespace
}  // namespace reachgame
