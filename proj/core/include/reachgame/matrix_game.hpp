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

#include "reachgame/game.hpp"

namespace reachgame {

// Thresholds shared by every "equals the value" / "strictly exceeds" split.
struct Tolerances {
  double theta_eq = 1e-7;      // membership in optimal-action sets, tight columns
  double theta_strict = 1e-6;  // minimum slack for a strict inequality
  std::size_t pattern_cap = 12;  // max rows/cols for support-pattern enumeration
};

// Zero-sum matrix game, row player maximizes. Entries lie in [0,1].
class MatrixGame {
 public:
  MatrixGame(std::size_t rows, std::size_t cols, std::vector<double> entries);
  MatrixGame(std::initializer_list<std::initializer_list<double>> rows);

  // v o rho for a game form and a valuation of its outcomes.
  static MatrixGame from_form(const GameForm& form, const Valuation& outcome_values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  double min_entry() const;
  double max_entry() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

struct MatrixSolution {
  double value = 0.0;
  MixedAction row_strategy;
  MixedAction col_strategy;
  double duality_gap = 0.0;
};

// (Supp(sigma), B_sigma) pair realized by an optimal row strategy `witness`.
struct SupportPattern {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> tight_columns;
  MixedAction witness;
  double slack = 0.0;
};

// Result of the exhaustive (S,T) scan. `margin` is the smallest distance
// between a feasible program's optimal slack and theta_strict: small values
// mean a tolerance shift could flip some pattern's realizability.
struct PatternScan {
  std::vector<SupportPattern> patterns;
  double margin = 1.0;
  double value = 0.0;
};

// sum_a sum_b sa(a) sb(b) M[a][b]. kDimensionMismatch on size errors.
double payoff(const MatrixGame& mg, const MixedAction& sa, const MixedAction& sb);

// Payoff of `sa` against each pure column.
std::vector<double> column_payoffs(const MatrixGame& mg, const MixedAction& sa);
// Payoff of each pure row against `sb`.
std::vector<double> row_payoffs(const MatrixGame& mg, const MixedAction& sb);

// Minimax solution via the primal/dual LPs. When a pure strategy is optimal
// the lowest-index one is returned; otherwise the simplex vertex.
// kSolverDidNotConverge when the certified duality gap exceeds 1e-9.
MatrixSolution solve(const MatrixGame& mg);

// inf over column strategies of payoff(sa, .) = min over pure columns.
double value_of_row_strategy(const MatrixGame& mg, const MixedAction& sa);
// sup over row strategies of payoff(., sb) = max over pure rows.
double value_of_col_strategy(const MatrixGame& mg, const MixedAction& sb);

// B_sigma: columns paying within theta_eq of value_of_row_strategy(sa).
std::vector<std::size_t> optimal_actions(const MatrixGame& mg, const MixedAction& sa,
                                         double theta_eq = Tolerances{}.theta_eq);

// Every (S,T) realizable by an optimal row strategy with support exactly S
// (masses >= slack), tight columns exactly T, and slack > theta_strict.
// kCapExceeded when rows or cols exceed tol.pattern_cap.
PatternScan scan_support_patterns(const MatrixGame& mg, const Tolerances& tol = {});
std::vector<SupportPattern> enumerate_support_patterns(const MatrixGame& mg, const Tolerances& tol = {});

// Re-checks a pattern's invariants against `mg` from scratch.
bool verify_pattern(const MatrixGame& mg, const SupportPattern& pattern, const Tolerances& tol = {});

// Aligned text rendering for diagnostics.
std::string format_matrix(const MatrixGame& mg, int precision = 4);

}  // namespace reachgame
