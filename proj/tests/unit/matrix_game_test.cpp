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
#include "reachgame/errors.hpp"
#include "reachgame/matrix_game.hpp"

namespace reachgame {
namespace {

using testing::Rng;

TEST(Payoff, Examples) {
  const MatrixGame pennies{{0, 1}, {1, 0}};
  EXPECT_DOUBLE_EQ(payoff(pennies, {0.5, 0.5}, {0.5, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(payoff(pennies, {0, 1}, {1, 0}), 1.0);
  EXPECT_THROW(payoff(pennies, {1}, {0.5, 0.5}), Error);
}

TEST(Payoff, OptimalRowAgainstOptimalColumn) {
  // Value 1/2 game: 1/2 = 1/2 * 3/4 + 1/2 * 1/4.
  const MatrixGame mg{{0.75, 0.5}, {0.25, 0.5}};
  const auto s = solve(mg);
  EXPECT_NEAR(s.value, 0.5, 1e-9);
  EXPECT_NEAR(payoff(mg, {0.5, 0.5}, {1, 0}), 0.5, 1e-12);
}

TEST(Solve, MatchingPennies) {
  const auto s = solve(MatrixGame{{0, 1}, {1, 0}});
  EXPECT_NEAR(s.value, 0.5, 1e-12);
  EXPECT_NEAR(s.row_strategy[0], 0.5, 1e-12);
  EXPECT_NEAR(s.col_strategy[0], 0.5, 1e-12);
}

TEST(Solve, Constant) {
  const auto s = solve(MatrixGame{{0.3}});
  EXPECT_DOUBLE_EQ(s.value, 0.3);
  EXPECT_EQ(s.row_strategy, MixedAction{1.0});
}

TEST(Solve, SnowballFamily) {
  for (double x : {0.0, 0.2, 0.5, 0.9, 0.99}) {
    const MatrixGame mg{{x, 1}, {1, 0}};
    EXPECT_NEAR(solve(mg).value, 1 / (2 - x), 1e-9) << x;
    EXPECT_NEAR(testing::grid_value(mg, 2000), 1 / (2 - x), 1e-3);
  }
}

TEST(Solve, PureOptimumIsLowestIndex) {
  const auto s = solve(MatrixGame{{1, 1}, {1, 1}});
  EXPECT_EQ(s.row_strategy, (MixedAction{1, 0}));
  EXPECT_EQ(s.col_strategy, (MixedAction{1, 0}));
}

TEST(Solve, NearTieMixesOnTinyMass) {
  // Equalizer puts mass (1 - b) / (1 + a - b) ~ 1.4e-9 on the first row.
  const double a = 0.99999999935358752, b = 0.99999999859681554;
  const auto s = solve(MatrixGame{{0, a}, {1, b}});
  EXPECT_LE(s.duality_gap, 1e-12);
  EXPECT_NEAR(s.value, 1 - (1 - b) / (1 + a - b), 1e-15);
}

TEST(Solve, NearConstantMatrix) {
  const double c = 0.18286393159094214;
  std::vector<double> e(30, c);
  for (std::size_t k : {0, 9, 14, 21, 24, 28}) e[k] += 2e-6;
  const auto s = solve(MatrixGame(5, 6, e));
  EXPECT_LE(s.duality_gap, 1e-12);
  EXPECT_GE(s.value, c);
  EXPECT_LE(s.value, c + 2e-6);
}

TEST(Solve, EqualizersAreExact) {
  EXPECT_EQ(solve(MatrixGame{{1, 0}, {0, 1}}).value, 0.5);
  EXPECT_EQ(solve(MatrixGame{{1, 0}, {0, 1}}).row_strategy, (MixedAction{0.5, 0.5}));
}

TEST(Solve, DualityOnRandomMatrices) {
  Rng rng(21);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int i = 0; i < 200; ++i) {
    const auto mg = testing::random_matrix(rng, dim(rng), dim(rng));
    const auto s = solve(mg);
    EXPECT_LE(s.duality_gap, 1e-7);
    EXPECT_LE(std::abs(value_of_row_strategy(mg, s.row_strategy) - value_of_col_strategy(mg, s.col_strategy)),
              2e-9);
    EXPECT_GE(s.value, mg.min_entry() - 1e-12);
    EXPECT_LE(s.value, mg.max_entry() + 1e-12);
    // Optimal strategies guarantee the value against every mixed opponent.
    for (int k = 0; k < 5; ++k) {
      const auto sb = testing::random_mixed(rng, mg.cols());
      const auto sa = testing::random_mixed(rng, mg.rows());
      EXPECT_GE(payoff(mg, s.row_strategy, sb), s.value - 1e-9);
      EXPECT_LE(payoff(mg, sa, s.col_strategy), s.value + 1e-9);
      EXPECT_LE(value_of_row_strategy(mg, sa), s.value + 1e-9);
    }
  }
}

TEST(Solve, ValueShiftsWithValuation) {
  Rng rng(4);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 100; ++i) {
    const std::size_t r = 3, c = 3;
    const double x = 0.3 * unit(rng);
    std::vector<double> lo(r * c), hi(r * c);
    for (std::size_t k = 0; k < r * c; ++k) {
      lo[k] = 0.7 * unit(rng);
      hi[k] = std::min(1.0, lo[k] + x + 0.1 * unit(rng));
    }
    const double vlo = solve(MatrixGame(r, c, lo)).value;
    const double vhi = solve(MatrixGame(r, c, hi)).value;
    EXPECT_LE(vlo + x, vhi + 1e-9);
  }
}

TEST(Solve, QuarterGridAgainstClosedForm) {
  const double q[] = {0, 0.25, 0.5, 0.75, 1};
  for (double a : q)
    for (double b : q)
      for (double c : q)
        for (double d : q) {
          const MatrixGame mg{{a, b}, {c, d}};
          EXPECT_NEAR(solve(mg).value, testing::closed_form_2x2(a, b, c, d), 1e-9);
        }
}

TEST(Solve, QuarterGrid3x3AgainstGrid) {
  Rng rng(9);
  std::uniform_int_distribution<int> pick(0, 4);
  for (int i = 0; i < 60; ++i) {
    std::vector<double> e(9);
    for (double& x : e) x = pick(rng) / 4.0;
    const MatrixGame mg(3, 3, e);
    EXPECT_NEAR(solve(mg).value, testing::grid_value(mg, 200), 2e-2);
  }
}

TEST(RowStrategy, Examples) {
  EXPECT_DOUBLE_EQ(value_of_row_strategy(MatrixGame{{1, 1}, {1, 0}}, {1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(value_of_row_strategy(MatrixGame{{0, 1}, {1, 0}}, {0.5, 0.5}), 0.5);
}

TEST(OptimalActions, Examples) {
  const MatrixGame mg{{1, 1}, {1, 0}};
  EXPECT_EQ(optimal_actions(mg, {1, 0}), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(optimal_actions(mg, {0.9, 0.1}), (std::vector<std::size_t>{1}));
  EXPECT_EQ(optimal_actions(MatrixGame{{0.4, 0.4, 0.4}}, {1}), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Patterns, SnowballAtValueOne) {
  const auto ps = enumerate_support_patterns(MatrixGame{{1, 1}, {1, 0}});
  ASSERT_EQ(ps.size(), 1U);
  EXPECT_EQ(ps[0].rows, std::vector<std::size_t>{0});
  EXPECT_EQ(ps[0].tight_columns, (std::vector<std::size_t>{0, 1}));
}

TEST(Patterns, MatchingPennies) {
  const auto ps = enumerate_support_patterns(MatrixGame{{0, 1}, {1, 0}});
  ASSERT_EQ(ps.size(), 1U);
  EXPECT_EQ(ps[0].rows, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(ps[0].tight_columns, (std::vector<std::size_t>{0, 1}));
}

TEST(Patterns, ConstantMatrix) {
  const auto ps = enumerate_support_patterns(MatrixGame{{0.5, 0.5}, {0.5, 0.5}});
  ASSERT_EQ(ps.size(), 3U);
  for (const auto& p : ps) EXPECT_EQ(p.tight_columns, (std::vector<std::size_t>{0, 1}));
}

TEST(Patterns, CapExceeded) {
  const MatrixGame big(13, 1, std::vector<double>(13, 0.5));
  try {
    enumerate_support_patterns(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
}

TEST(Patterns, WitnessesVerifyIndependently) {
  Rng rng(13);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  std::uniform_int_distribution<int> pick(0, 4);
  const Tolerances tol;
  for (int i = 0; i < 100; ++i) {
    const std::size_t r = dim(rng), c = dim(rng);
    std::vector<double> e(r * c);
    for (double& x : e) x = pick(rng) / 4.0;
    const MatrixGame mg(r, c, e);
    const double value = solve(mg).value;
    const auto ps = enumerate_support_patterns(mg);
    EXPECT_FALSE(ps.empty());
    for (const auto& p : ps) {
      EXPECT_TRUE(verify_pattern(mg, p));
      // Replay without the library: support, optimality, tight set.
      EXPECT_EQ(support_of(p.witness), p.rows);
      const auto cols = column_payoffs(mg, p.witness);
      for (std::size_t b = 0; b < c; ++b) {
        const bool tight = std::find(p.tight_columns.begin(), p.tight_columns.end(), b) != p.tight_columns.end();
        EXPECT_GE(cols[b], value - tol.theta_eq);
        if (tight) { EXPECT_LE(cols[b], value + tol.theta_eq); }
        else { EXPECT_GT(cols[b], value + tol.theta_strict); }
      }
    }
  }
}

TEST(Format, RendersRows) {
  const auto s = format_matrix(MatrixGame{{0, 1}, {1, 0.5}}, 2);
  EXPECT_NE(s.find("0.50"), std::string::npos);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
}

}  // namespace
}  // namespace reachgame
