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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace reachgame {

enum class Player { kA, kB };

// Probability vector over one player's global action set.
using MixedAction = std::vector<double>;

// Dense map from an indexed domain (states, Nature states or outcomes) to
// [0,1]. The domain is implied by the object it is paired with.
using Valuation = std::vector<double>;

// Membership mask over states (or outcomes).
using StateSet = std::vector<bool>;

// Tolerance for "sums to one" checks on distributions and mixed actions.
inline constexpr double kDistributionTolerance = 1e-9;

// Probabilities below this are structural zeros when building supports.
inline constexpr double kStructuralZero = 1e-12;

MixedAction pure_action(std::size_t count, std::size_t index);
MixedAction uniform_action(std::size_t count);

// Throws kInvalidInput when `action` is not a distribution over `count`
// actions (within kDistributionTolerance).
void validate_mixed_action(const MixedAction& action, std::size_t count, std::string_view what);

std::vector<std::size_t> support_of(const MixedAction& action);
std::vector<std::size_t> members(const StateSet& set);
std::size_t count_members(const StateSet& set);

// Sup-norm distance between valuations.
double sup_distance(const Valuation& lhs, const Valuation& rhs);

// A matrix of abstract outcomes. Rows are Player-A actions, columns Player-B
// actions. Every outcome must occur in at least one cell.
class GameForm {
 public:
  GameForm(std::vector<std::string> outcome_names, std::size_t rows, std::size_t cols,
           std::vector<std::size_t> table);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t outcome_count() const { return outcome_names_.size(); }
  std::size_t outcome(std::size_t row, std::size_t col) const { return table_[row * cols_ + col]; }
  const std::vector<std::string>& outcome_names() const { return outcome_names_; }
  std::optional<std::size_t> outcome_index(std::string_view name) const;

 private:
  std::vector<std::string> outcome_names_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> table_;
};

// alpha: O \ E -> [0,1]. `values[o]` is ignored for unvalued outcomes.
struct PartialValuation {
  Valuation values;
  StateSet unvalued;

  // alpha[y]: the total valuation giving `y` to every unvalued outcome.
  Valuation complete_with(double y) const;
};

void validate_partial_valuation(const GameForm& form, const PartialValuation& alpha);

struct PositionalStrategy {
  Player player = Player::kA;
  std::vector<MixedAction> choices;
};

// Unvalidated game description, addressed by identifiers. This is what the
// JSON reader produces; ConcurrentGame::validate turns it into a game.
struct GameDescription {
  std::vector<std::string> states;
  std::string target;
  std::vector<std::string> actions_a;
  std::vector<std::string> actions_b;
  // Nature state name -> list of (state name, probability).
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, double>>>> nature;
  // State name -> row-major table of Nature state names.
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> delta;
};

// Finite concurrent reachability arena with global action sets and a
// self-looping target sink. Immutable once validated.
class ConcurrentGame {
 public:
  // Checks distributions, the sink condition at the target and every
  // identifier reference. Throws Error listing all violations; the code is
  // the one of the first violation found.
  static ConcurrentGame validate(const GameDescription& description);

  // Index-based construction for programmatic games. `delta` is indexed as
  // (q * |A| + a) * |B| + b. Names are generated ("q0", "a0", "b0", "d0").
  static ConcurrentGame from_tables(std::size_t states, std::size_t target, std::size_t actions_a,
                                    std::size_t actions_b, std::vector<std::vector<double>> dist,
                                    std::vector<std::size_t> delta);

  std::size_t state_count() const { return state_names_.size(); }
  std::size_t action_count(Player player) const {
    return player == Player::kA ? action_a_names_.size() : action_b_names_.size();
  }
  std::size_t nature_count() const { return nature_names_.size(); }
  std::size_t target() const { return target_; }

  std::size_t nature_of(std::size_t q, std::size_t a, std::size_t b) const {
    return delta_[(q * action_count(Player::kA) + a) * action_count(Player::kB) + b];
  }
  std::span<const double> dist(std::size_t d) const { return {dist_[d].data(), dist_[d].size()}; }
  // States with probability above kStructuralZero under dist(d).
  const std::vector<std::size_t>& support(std::size_t d) const { return supports_[d]; }

  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& action_names(Player player) const {
    return player == Player::kA ? action_a_names_ : action_b_names_;
  }
  const std::vector<std::string>& nature_names() const { return nature_names_; }

  std::optional<std::size_t> state_index(std::string_view name) const;
  std::optional<std::size_t> action_index(Player player, std::string_view name) const;

  // F_q: outcomes are the Nature states occurring at q, in index order.
  GameForm local_interaction(std::size_t q) const;

  // Probability to move from q to q2 when the players use the given mixed
  // actions at q.
  double transition_prob(std::size_t q, std::size_t q2, const MixedAction& sa,
                         const MixedAction& sb) const;

  GameDescription describe() const;

 private:
  ConcurrentGame() = default;
  void build_supports();

  std::vector<std::string> state_names_;
  std::vector<std::string> action_a_names_;
  std::vector<std::string> action_b_names_;
  std::vector<std::string> nature_names_;
  std::size_t target_ = 0;
  std::vector<std::size_t> delta_;
  std::vector<std::vector<double>> dist_;
  std::vector<std::vector<std::size_t>> supports_;
};

// Throws kInvalidInput unless the strategy covers every state with a valid
// mixed action of the right player.
void validate_strategy(const ConcurrentGame& game, const PositionalStrategy& strategy);

PositionalStrategy uniform_strategy(const ConcurrentGame& game, Player player);

// Nature states whose support meets `states` (Gd_D / Bd_D).
StateSet nature_states_touching(const ConcurrentGame& game, const StateSet& states);

}  // namespace reachgame
