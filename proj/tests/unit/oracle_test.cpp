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
#include "reachgame/errors.hpp"
#include "reachgame/mdp.hpp"
#include "reachgame/oracle.hpp"
#include "reachgame/values.hpp"

namespace reachgame {
namespace {

using testing::Rng;

PositionalStrategy snowball_a(double p) { return {Player::kA, {{p, 1 - p}, {1, 0}, {1, 0}}}; }
PositionalStrategy snowball_b(double r) { return {Player::kB, {{r, 1 - r}, {1, 0}, {1, 0}}}; }

TEST(Simulate, UniformOneStep) {
  const auto g = testing::snowball();
  const auto e = oracle::simulate(g, snowball_a(0.5), snowball_b(0.5), 0, {100000, 1, 3, 1});
  EXPECT_NEAR(e.p, 0.5, 3 * e.std_error);
  EXPECT_EQ(e.runs, 100000U);
}

TEST(Simulate, FromTargetAndTrapped) {
  const auto g = testing::snowball();
  EXPECT_EQ(oracle::simulate(g, snowball_a(0.5), snowball_b(0.5), 1, {1000, 5, 1, 1}).p, 1.0);
  EXPECT_EQ(oracle::simulate(g, snowball_a(1), snowball_b(1), 0, {1000, 50, 1, 1}).p, 0.0);
}

TEST(Simulate, ThreadCountDoesNotChangeResult) {
  const auto g = testing::snowball();
  const auto one = oracle::simulate(g, snowball_a(0.7), snowball_b(0.4), 0, {20000, 10, 42, 1});
  const auto four = oracle::simulate(g, snowball_a(0.7), snowball_b(0.4), 0, {20000, 10, 42, 4});
  EXPECT_EQ(one.p, four.p);
}

TEST(Simulate, AgreesWithExactEvaluation) {
  Rng rng(100);
  for (int i = 0; i < 10; ++i) {
    const auto g = testing::random_game(rng, {4, 2, 2, 2, true, false, false});
    const auto sa = testing::random_strategy(rng, g, Player::kA);
    const auto sb = testing::random_strategy(rng, g, Player::kB);
    const double exact = finite_horizon_prob(g, sa, sb, 1, 20);
    const auto e = oracle::simulate(g, sa, sb, 1, {50000, 20, static_cast<std::uint64_t>(i), 0});
    EXPECT_NEAR(e.p, exact, 4 * std::max(e.std_error, 1e-4));
  }
}

TEST(GridBest, Snowball) {
  const auto best = oracle::grid_best_positional_a(testing::snowball(), 50);
  EXPECT_NEAR(best[0], 1 / (1 + 1.0 / 49), 1e-9);
  EXPECT_LT(best[0], 1.0);
}

TEST(GridBest, MaximizableGameReachesValue) {
  // q1: a0 goes to the target with 1/2, else to q2 (zero); a1 loops.
  std::vector<std::vector<double>> dist = {{1, 0, 0}, {0.5, 0, 0.5}, {0, 1, 0}, {0, 0, 1}};
  const auto g = ConcurrentGame::from_tables(3, 0, 2, 1, dist, {0, 0, 1, 2, 3, 3});
  EXPECT_NEAR(oracle::grid_best_positional_a(g, 10)[1], 0.5, 1e-9);
}

TEST(GridBest, AllZero) {
  const auto g = ConcurrentGame::from_tables(2, 0, 2, 2, {{1, 0}, {0, 1}}, {0, 0, 0, 0, 1, 1, 1, 1});
  EXPECT_EQ(oracle::grid_best_positional_a(g, 10)[1], 0.0);
}

TEST(GridBest, Cap) {
  EXPECT_THROW(oracle::grid_best_positional_a(testing::snowball(), 50, 10), Error);
}

TEST(KleeneChain, Snowball) {
  const auto chain = oracle::kleene_strategy_chain(testing::snowball(), 3);
  ASSERT_EQ(chain.guarantees.size(), 4U);
  EXPECT_NEAR(chain.guarantees[3][0], 0.75, 1e-12);
  EXPECT_GE(chain.worst_case[0], 0.75 - 1e-12);
}

TEST(KleeneChain, ZeroSteps) {
  const auto chain = oracle::kleene_strategy_chain(testing::snowball(), 0);
  EXPECT_EQ(chain.guarantees[0], (Valuation{0, 1, 0}));
}

TEST(KleeneChain, GuaranteesBelowValueAndRealized) {
  Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    const auto g = testing::random_game(rng, {4, 2, 2, 2, true, false, false});
    const auto chain = oracle::kleene_strategy_chain(g, 10);
    const auto m = solve_values(g).values;
    for (std::size_t n = 1; n < chain.guarantees.size(); ++n) {
      for (std::size_t q = 0; q < 4; ++q) EXPECT_LE(chain.guarantees[n - 1][q], chain.guarantees[n][q] + 1e-12);
    }
    for (std::size_t q = 0; q < 4; ++q) {
      EXPECT_LE(chain.guarantees.back()[q], m[q] + 1e-9);
      EXPECT_GE(chain.worst_case[q], chain.guarantees.back()[q] - 1e-9);
    }
  }
}

TEST(KleeneChain, HistoryStrategySimulates) {
  const auto g = testing::snowball();
  const auto chain = oracle::kleene_strategy_chain(g, 5);
  const oracle::HistoryStrategy b = [](const std::vector<std::size_t>&) { return MixedAction{1, 0}; };
  const auto e = oracle::simulate(g, chain.strategy(), b, 0, {20000, 5, 9, 1});
  EXPECT_GE(e.p + 4 * e.std_error, chain.guarantees[5][0]);
}

TEST(PairwiseMean, Exact) {
  std::vector<std::uint8_t> hits(1001, 0);
  for (std::size_t i = 0; i < hits.size(); i += 2) hits[i] = 1;
  EXPECT_DOUBLE_EQ(oracle::pairwise_mean(hits), 501.0 / 1001.0);
}

}  // namespace
}  // namespace reachgame
