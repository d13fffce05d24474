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
#include "reachgame/fixpoint.hpp"
#include "reachgame/io.hpp"

namespace reachgame {
namespace {

using testing::Rng;

GameDescription snowball_description() {
  GameDescription d;
  d.states = {"q0", "top", "bot"};
  d.target = "top";
  d.actions_a = {"a1", "a2"};
  d.actions_b = {"b1", "b2"};
  d.nature = {{"d_loop", {{"q0", 1.0}}},
              {"d_top", {{"top", 1.0}}},
              {"d_bot", {{"bot", 1.0}}},
              {"top_loop", {{"top", 1.0}}},
              {"bot_loop", {{"bot", 1.0}}}};
  d.delta = {{"q0", {{"d_loop", "d_top"}, {"d_top", "d_bot"}}},
             {"top", {{"top_loop", "top_loop"}, {"top_loop", "top_loop"}}},
             {"bot", {{"bot_loop", "bot_loop"}, {"bot_loop", "bot_loop"}}}};
  return d;
}

ErrorCode code_of(const GameDescription& d) {
  try {
    ConcurrentGame::validate(d);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "validation passed";
  return ErrorCode::kInvalidInput;
}

TEST(ValidateGame, SnowballIsValid) {
  const auto g = ConcurrentGame::validate(snowball_description());
  EXPECT_EQ(g.state_count(), 3U);
  EXPECT_EQ(g.target(), 1U);
  EXPECT_EQ(g.action_count(Player::kA), 2U);
}

TEST(ValidateGame, UnnormalizedDistribution) {
  auto d = snowball_description();
  d.nature[1].second = {{"top", 0.9}};
  EXPECT_EQ(code_of(d), ErrorCode::kDistributionNotNormalized);
}

TEST(ValidateGame, TargetMustBeSink) {
  auto d = snowball_description();
  d.delta[1].second[0][1] = "d_bot";
  EXPECT_EQ(code_of(d), ErrorCode::kTargetNotSink);
}

TEST(ValidateGame, DanglingNatureState) {
  auto d = snowball_description();
  d.delta[0].second[0][0] = "d_nowhere";
  EXPECT_EQ(code_of(d), ErrorCode::kUnknownIdentifier);
}

TEST(ValidateGame, ReportsEveryViolation) {
  auto d = snowball_description();
  d.nature[1].second = {{"top", 0.9}};
  d.delta[0].second[0][0] = "d_nowhere";
  try {
    ConcurrentGame::validate(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_GE(e.details().size(), 2U);
  }
}

TEST(LocalInteraction, SnowballQ0) {
  const auto g = ConcurrentGame::validate(snowball_description());
  const auto f = g.local_interaction(0);
  ASSERT_EQ(f.outcome_count(), 3U);
  EXPECT_EQ(f.outcome_names()[f.outcome(0, 0)], "d_loop");
  EXPECT_EQ(f.outcome_names()[f.outcome(0, 1)], "d_top");
  EXPECT_EQ(f.outcome_names()[f.outcome(1, 0)], "d_top");
  EXPECT_EQ(f.outcome_names()[f.outcome(1, 1)], "d_bot");
}

TEST(LocalInteraction, TargetHasOneOutcome) {
  const auto g = ConcurrentGame::validate(snowball_description());
  const auto f = g.local_interaction(1);
  ASSERT_EQ(f.outcome_count(), 1U);
  EXPECT_EQ(f.outcome_names()[0], "top_loop");
}

TEST(LocalInteraction, MatchesTableLookup) {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto g = testing::random_game(rng, {4, 3, 2, 2, true, false, false});
    for (std::size_t q = 0; q < g.state_count(); ++q) {
      const auto f = g.local_interaction(q);
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          EXPECT_EQ(f.outcome_names()[f.outcome(a, b)], g.nature_names()[g.nature_of(q, a, b)]);
        }
      }
    }
  }
}

TEST(TransitionProb, SnowballFormula) {
  const auto g = ConcurrentGame::validate(snowball_description());
  for (double p : {0.0, 0.3, 0.5, 1.0}) {
    for (double r : {0.0, 0.25, 0.9}) {
      const double expected = p * (1 - r) + (1 - p) * r;
      EXPECT_NEAR(g.transition_prob(0, 1, {p, 1 - p}, {r, 1 - r}), expected, 1e-12);
      EXPECT_NEAR(expected, p + r - 2 * p * r, 1e-12);
    }
  }
}

TEST(TransitionProb, TargetStays) {
  const auto g = ConcurrentGame::validate(snowball_description());
  EXPECT_DOUBLE_EQ(g.transition_prob(1, 1, {0.4, 0.6}, {0.2, 0.8}), 1.0);
}

TEST(TransitionProb, PureActionsAreLookups) {
  Rng rng(3);
  const auto g = testing::random_game(rng, {5, 2, 3, 3, true, false, false});
  for (std::size_t q = 0; q < 5; ++q) {
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        for (std::size_t q2 = 0; q2 < 5; ++q2) {
          EXPECT_DOUBLE_EQ(g.transition_prob(q, q2, pure_action(2, a), pure_action(3, b)),
                           g.dist(g.nature_of(q, a, b))[q2]);
        }
      }
    }
  }
}

TEST(TransitionProb, RowsSumToOneAndBilinear) {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto g = testing::random_game(rng, {5, 3, 3, 3, true, false, false});
    const auto sa = testing::random_mixed(rng, 3);
    const auto sa2 = testing::random_mixed(rng, 3);
    const auto sb = testing::random_mixed(rng, 3);
    const double lam = std::uniform_real_distribution<double>(0, 1)(rng);
    MixedAction mix(3);
    for (std::size_t a = 0; a < 3; ++a) mix[a] = lam * sa[a] + (1 - lam) * sa2[a];
    for (std::size_t q = 0; q < 5; ++q) {
      double total = 0.0;
      for (std::size_t q2 = 0; q2 < 5; ++q2) {
        total += g.transition_prob(q, q2, sa, sb);
        EXPECT_NEAR(g.transition_prob(q, q2, mix, sb),
                    lam * g.transition_prob(q, q2, sa, sb) + (1 - lam) * g.transition_prob(q, q2, sa2, sb), 1e-12);
      }
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(TransitionProb, ExpectationEqualsLocalPayoff) {
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    const auto g = testing::random_game(rng, {4, 2, 3, 2, true, false, false});
    const auto v = testing::random_valuation(rng, g);
    const auto sa = testing::random_mixed(rng, 2);
    const auto sb = testing::random_mixed(rng, 3);
    const auto mu = lift(g, v);
    for (std::size_t q = 0; q < 4; ++q) {
      double lhs = 0.0;
      for (std::size_t q2 = 0; q2 < 4; ++q2) lhs += g.transition_prob(q, q2, sa, sb) * v[q2];
      EXPECT_NEAR(lhs, payoff(local_matrix(g, q, mu), sa, sb), 1e-9);
    }
  }
}

TEST(GameFormType, RejectsUnusedOutcome) {
  EXPECT_THROW(GameForm({"x", "y", "z"}, 1, 2, {0, 1}), Error);
}

TEST(GameFormType, RejectsOutOfRangeCell) {
  EXPECT_THROW(GameForm({"x"}, 1, 1, {3}), Error);
}

TEST(PartialValuationType, CompleteWith) {
  PartialValuation alpha{{0.0, 1.0, 0.0}, {true, false, false}};
  const auto v = alpha.complete_with(0.4);
  EXPECT_EQ(v, (Valuation{0.4, 1.0, 0.0}));
}

TEST(Strategy, ValidationRejectsBadMass) {
  const auto g = testing::snowball();
  PositionalStrategy s{Player::kA, {{0.5, 0.4}, {1, 0}, {1, 0}}};
  EXPECT_THROW(validate_strategy(g, s), Error);
  s.choices[0] = {0.5, 0.5};
  EXPECT_NO_THROW(validate_strategy(g, s));
}

TEST(NatureTouching, GoodSetOfSnowball) {
  const auto g = testing::snowball();
  StateSet top{false, true, false};
  const auto touching = nature_states_touching(g, top);
  EXPECT_FALSE(touching[0]);
  EXPECT_TRUE(touching[1]);
  EXPECT_FALSE(touching[2]);
  EXPECT_TRUE(touching[3]);
}

}  // namespace
}  // namespace reachgame
