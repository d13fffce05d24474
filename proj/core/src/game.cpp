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

#include "reachgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "reachgame/errors.hpp"

namespace reachgame {

MixedAction pure_action(std::size_t count, std::size_t index) {
  MixedAction action(count, 0.0);
  action.at(index) = 1.0;
  return action;
}

MixedAction uniform_action(std::size_t count) {
  return MixedAction(count, 1.0 / static_cast<double>(count));
}

void validate_mixed_action(const MixedAction& action, std::size_t count, std::string_view what) {
  if (action.size() != count) {
    throw Error(ErrorCode::kInvalidInput, std::string(what) + ": expected " +
                                              std::to_string(count) + " probabilities, got " +
                                              std::to_string(action.size()));
  }
  double total = 0.0;
  for (double p : action) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidInput, std::string(what) + ": probability outside [0,1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kDistributionTolerance) {
    std::ostringstream os;
    os << what << ": probabilities sum to " << total;
    throw Error(ErrorCode::kInvalidInput, os.str());
  }
}

std::vector<std::size_t> support_of(const MixedAction& action) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < action.size(); ++i) {
    if (action[i] > kStructuralZero) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> members(const StateSet& set) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i]) out.push_back(i);
  }
  return out;
}

std::size_t count_members(const StateSet& set) {
  return static_cast<std::size_t>(std::count(set.begin(), set.end(), true));
}

double sup_distance(const Valuation& lhs, const Valuation& rhs) {
  double out = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) out = std::max(out, std::abs(lhs[i] - rhs.at(i)));
  return out;
}

// ---------------------------------------------------------------------------
// GameForm

GameForm::GameForm(std::vector<std::string> outcome_names, std::size_t rows, std::size_t cols,
                   std::vector<std::size_t> table)
    : outcome_names_(std::move(outcome_names)), rows_(rows), cols_(cols), table_(std::move(table)) {
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorCode::kInvalidInput, "game form needs at least one row and one column");
  }
  if (table_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "game form table has " +
                                                   std::to_string(table_.size()) +
                                                   " cells, expected " +
                                                   std::to_string(rows_ * cols_));
  }
  std::vector<bool> used(outcome_names_.size(), false);
  for (std::size_t o : table_) {
    if (o >= outcome_names_.size()) {
      throw Error(ErrorCode::kUnknownIdentifier, "game form cell names outcome #" +
                                                     std::to_string(o) + " which does not exist");
    }
    used[o] = true;
  }
  for (std::size_t o = 0; o < used.size(); ++o) {
    if (!used[o]) {
      throw Error(ErrorCode::kInvalidInput,
                  "outcome '" + outcome_names_[o] + "' does not appear in the table");
    }
  }
}

std::optional<std::size_t> GameForm::outcome_index(std::string_view name) const {
  auto it = std::find(outcome_names_.begin(), outcome_names_.end(), name);
  if (it == outcome_names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - outcome_names_.begin());
}

Valuation PartialValuation::complete_with(double y) const {
  Valuation out(values.size());
  for (std::size_t o = 0; o < values.size(); ++o) out[o] = unvalued[o] ? y : values[o];
  return out;
}

void validate_partial_valuation(const GameForm& form, const PartialValuation& alpha) {
  if (alpha.values.size() != form.outcome_count() || alpha.unvalued.size() != form.outcome_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "partial valuation does not match the outcome set");
  }
  for (std::size_t o = 0; o < alpha.values.size(); ++o) {
    if (alpha.unvalued[o]) continue;
    if (!(alpha.values[o] >= 0.0 && alpha.values[o] <= 1.0)) {
      throw Error(ErrorCode::kInvalidInput,
                  "alpha(" + form.outcome_names()[o] + ") is outside [0,1]");
    }
  }
}

// ---------------------------------------------------------------------------
// ConcurrentGame

namespace {

template <typename Names>
std::optional<std::size_t> find_name(const Names& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

struct Violations {
  std::optional<ErrorCode> first;
  std::vector<std::string> lines;

  void add(ErrorCode code, std::string line) {
    if (!first) first = code;
    lines.push_back(std::move(line));
  }
};

void check_duplicates(const std::vector<std::string>& names, std::string_view kind,
                      Violations& out) {
  std::map<std::string, int> seen;
  for (const auto& n : names) {
    if (++seen[n] == 2) out.add(ErrorCode::kInvalidInput, "duplicate " + std::string(kind) + " '" + n + "'");
  }
}

}  // namespace

ConcurrentGame ConcurrentGame::validate(const GameDescription& desc) {
  Violations v;
  ConcurrentGame game;
  game.state_names_ = desc.states;
  game.action_a_names_ = desc.actions_a;
  game.action_b_names_ = desc.actions_b;
  check_duplicates(desc.states, "state", v);
  check_duplicates(desc.actions_a, "Player-A action", v);
  check_duplicates(desc.actions_b, "Player-B action", v);
  if (desc.states.empty()) v.add(ErrorCode::kInvalidInput, "game has no states");
  if (desc.actions_a.empty()) v.add(ErrorCode::kInvalidInput, "Player A has no actions");
  if (desc.actions_b.empty()) v.add(ErrorCode::kInvalidInput, "Player B has no actions");

  auto target = find_name(desc.states, desc.target);
  if (!target) {
    v.add(ErrorCode::kUnknownIdentifier, "target '" + desc.target + "' is not a state");
  } else {
    game.target_ = *target;
  }

  const std::size_t nq = desc.states.size();
  for (const auto& [name, row] : desc.nature) {
    game.nature_names_.push_back(name);
    std::vector<double> dist(nq, 0.0);
    double total = 0.0;
    bool ok = true;
    for (const auto& [state, p] : row) {
      auto idx = find_name(desc.states, state);
      if (!idx) {
        v.add(ErrorCode::kUnknownIdentifier,
              "Nature state '" + name + "' refers to unknown state '" + state + "'");
        ok = false;
        continue;
      }
      if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "Nature state '" << name << "' gives probability " << p << " to '" << state << "'";
        v.add(ErrorCode::kDistributionNotNormalized, os.str());
        ok = false;
      }
      dist[*idx] += p;
      total += p;
    }
    if (ok && std::abs(total - 1.0) > kDistributionTolerance) {
      std::ostringstream os;
      os << "Nature state '" << name << "' sums to " << total;
      v.add(ErrorCode::kDistributionNotNormalized, os.str());
    }
    game.dist_.push_back(std::move(dist));
  }
  check_duplicates(game.nature_names_, "Nature state", v);

  const std::size_t na = desc.actions_a.size();
  const std::size_t nb = desc.actions_b.size();
  game.delta_.assign(nq * na * nb, 0);
  std::vector<bool> defined(nq, false);
  for (const auto& [state, table] : desc.delta) {
    auto q = find_name(desc.states, state);
    if (!q) {
      v.add(ErrorCode::kUnknownIdentifier, "delta refers to unknown state '" + state + "'");
      continue;
    }
    if (defined[*q]) {
      v.add(ErrorCode::kInvalidInput, "delta defined twice for state '" + state + "'");
      continue;
    }
    defined[*q] = true;
    if (table.size() != na) {
      v.add(ErrorCode::kDimensionMismatch, "delta['" + state + "'] has " +
                                               std::to_string(table.size()) + " rows, expected " +
                                               std::to_string(na));
      continue;
    }
    for (std::size_t a = 0; a < na; ++a) {
      if (table[a].size() != nb) {
        v.add(ErrorCode::kDimensionMismatch, "delta['" + state + "'][" + std::to_string(a) +
                                                 "] has " + std::to_string(table[a].size()) +
                                                 " columns, expected " + std::to_string(nb));
        continue;
      }
      for (std::size_t b = 0; b < nb; ++b) {
        auto d = find_name(game.nature_names_, table[a][b]);
        if (!d) {
          v.add(ErrorCode::kUnknownIdentifier, "delta['" + state + "'] refers to unknown Nature state '" +
                                                   table[a][b] + "'");
          continue;
        }
        game.delta_[(*q * na + a) * nb + b] = *d;
      }
    }
  }
  for (std::size_t q = 0; q < nq; ++q) {
    if (!defined[q]) v.add(ErrorCode::kInvalidInput, "no delta table for state '" + desc.states[q] + "'");
  }

  if (!v.first) {
    game.build_supports();
    const std::size_t t = game.target_;
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < nb; ++b) {
        const auto& sup = game.support(game.nature_of(t, a, b));
        if (sup.size() != 1 || sup[0] != t) {
          v.add(ErrorCode::kTargetNotSink, "target '" + desc.target + "' leaves itself under (" +
                                               desc.actions_a[a] + ", " + desc.actions_b[b] +
                                               ") via Nature state '" +
                                               game.nature_names_[game.nature_of(t, a, b)] + "'");
        }
      }
    }
  }

  if (v.first) {
    std::string summary = v.lines.front();
    if (v.lines.size() > 1) summary += " (+" + std::to_string(v.lines.size() - 1) + " more)";
    throw Error(*v.first, summary, v.lines);
  }
  return game;
}

ConcurrentGame ConcurrentGame::from_tables(std::size_t states, std::size_t target,
                                           std::size_t actions_a, std::size_t actions_b,
                                           std::vector<std::vector<double>> dist,
                                           std::vector<std::size_t> delta) {
  GameDescription desc;
  for (std::size_t q = 0; q < states; ++q) desc.states.push_back("q" + std::to_string(q));
  desc.target = target < states ? desc.states[target] : std::string("?");
  for (std::size_t a = 0; a < actions_a; ++a) desc.actions_a.push_back("a" + std::to_string(a));
  for (std::size_t b = 0; b < actions_b; ++b) desc.actions_b.push_back("b" + std::to_string(b));
  for (std::size_t d = 0; d < dist.size(); ++d) {
    if (dist[d].size() != states) {
      throw Error(ErrorCode::kDimensionMismatch, "distribution row has wrong length");
    }
    std::vector<std::pair<std::string, double>> row;
    for (std::size_t q = 0; q < states; ++q) {
      if (dist[d][q] != 0.0) row.emplace_back(desc.states[q], dist[d][q]);
    }
    desc.nature.emplace_back("d" + std::to_string(d), std::move(row));
  }
  if (delta.size() != states * actions_a * actions_b) {
    throw Error(ErrorCode::kDimensionMismatch, "delta table has wrong size");
  }
  for (std::size_t q = 0; q < states; ++q) {
    std::vector<std::vector<std::string>> table(actions_a, std::vector<std::string>(actions_b));
    for (std::size_t a = 0; a < actions_a; ++a) {
      for (std::size_t b = 0; b < actions_b; ++b) {
        std::size_t d = delta[(q * actions_a + a) * actions_b + b];
        table[a][b] = "d" + std::to_string(d);
      }
    }
    desc.delta.emplace_back(desc.states[q], std::move(table));
  }
  return validate(desc);
}

void ConcurrentGame::build_supports() {
  supports_.clear();
  for (const auto& row : dist_) {
    std::vector<std::size_t> sup;
    for (std::size_t q = 0; q < row.size(); ++q) {
      if (row[q] > kStructuralZero) sup.push_back(q);
    }
    supports_.push_back(std::move(sup));
  }
}

std::optional<std::size_t> ConcurrentGame::state_index(std::string_view name) const {
  return find_name(state_names_, name);
}

std::optional<std::size_t> ConcurrentGame::action_index(Player player, std::string_view name) const {
  return find_name(action_names(player), name);
}

GameForm ConcurrentGame::local_interaction(std::size_t q) const {
  const std::size_t na = action_count(Player::kA);
  const std::size_t nb = action_count(Player::kB);
  std::vector<std::size_t> used;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) used.push_back(nature_of(q, a, b));
  }
  std::vector<std::size_t> outcomes = used;
  std::sort(outcomes.begin(), outcomes.end());
  outcomes.erase(std::unique(outcomes.begin(), outcomes.end()), outcomes.end());
  std::vector<std::string> names;
  for (std::size_t d : outcomes) names.push_back(nature_names_[d]);
  std::vector<std::size_t> table;
  for (std::size_t d : used) {
    table.push_back(static_cast<std::size_t>(
        std::lower_bound(outcomes.begin(), outcomes.end(), d) - outcomes.begin()));
  }
  return GameForm(std::move(names), na, nb, std::move(table));
}

double ConcurrentGame::transition_prob(std::size_t q, std::size_t q2, const MixedAction& sa,
                                       const MixedAction& sb) const {
  double p = 0.0;
  for (std::size_t a = 0; a < sa.size(); ++a) {
    if (sa[a] == 0.0) continue;
    for (std::size_t b = 0; b < sb.size(); ++b) {
      if (sb[b] == 0.0) continue;
      p += sa[a] * sb[b] * dist_[nature_of(q, a, b)][q2];
    }
  }
  return p;
}

GameDescription ConcurrentGame::describe() const {
  GameDescription desc;
  desc.states = state_names_;
  desc.target = state_names_[target_];
  desc.actions_a = action_a_names_;
  desc.actions_b = action_b_names_;
  for (std::size_t d = 0; d < dist_.size(); ++d) {
    std::vector<std::pair<std::string, double>> row;
    for (std::size_t q = 0; q < dist_[d].size(); ++q) {
      if (dist_[d][q] != 0.0) row.emplace_back(state_names_[q], dist_[d][q]);
    }
    desc.nature.emplace_back(nature_names_[d], std::move(row));
  }
  const std::size_t na = action_a_names_.size();
  const std::size_t nb = action_b_names_.size();
  for (std::size_t q = 0; q < state_names_.size(); ++q) {
    std::vector<std::vector<std::string>> table(na, std::vector<std::string>(nb));
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < nb; ++b) table[a][b] = nature_names_[nature_of(q, a, b)];
    }
    desc.delta.emplace_back(state_names_[q], std::move(table));
  }
  return desc;
}

void validate_strategy(const ConcurrentGame& game, const PositionalStrategy& strategy) {
  if (strategy.choices.size() != game.state_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy covers " +
                                                   std::to_string(strategy.choices.size()) +
                                                   " states, game has " +
                                                   std::to_string(game.state_count()));
  }
  const std::size_t n = game.action_count(strategy.player);
  for (std::size_t q = 0; q < strategy.choices.size(); ++q) {
    validate_mixed_action(strategy.choices[q], n, "strategy at '" + game.state_names()[q] + "'");
  }
}

PositionalStrategy uniform_strategy(const ConcurrentGame& game, Player player) {
  PositionalStrategy s;
  s.player = player;
  s.choices.assign(game.state_count(), uniform_action(game.action_count(player)));
  return s;
}

StateSet nature_states_touching(const ConcurrentGame& game, const StateSet& states) {
  StateSet out(game.nature_count(), false);
  for (std::size_t d = 0; d < game.nature_count(); ++d) {
    for (std::size_t q : game.support(d)) {
      if (states[q]) {
        out[d] = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace reachgame
