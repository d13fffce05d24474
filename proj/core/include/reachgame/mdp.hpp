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
#include <span>
#include <vector>

#include "reachgame/game.hpp"
#include "reachgame/matrix_game.hpp"

namespace reachgame {

// MDP left once one player's positional strategy is fixed. The remaining
// player (`controller`) picks actions from its global action set.
struct InducedMdp {
  Player controller = Player::kB;
  std::size_t states = 0;
  std::size_t actions = 0;
  std::size_t target = 0;
  std::vector<std::vector<double>> transitions;  // [q * actions + action] -> distribution

  std::span<const double> row(std::size_t q, std::size_t action) const {
    const auto& r = transitions[q * actions + action];
    return {r.data(), r.size()};
  }
  // Successors with probability above kStructuralZero.
  std::vector<std::size_t> successors(std::size_t q, std::size_t action) const;
};

// Closed, strongly connected sub-MDP; `actions[i]` are the enabled actions
// at `states[i]`.
struct EndComponent {
  std::vector<std::size_t> states;
  std::vector<std::vector<std::size_t>> actions;
};

using MarkovChain = std::vector<std::vector<double>>;

struct ReachResult {
  Valuation values;
  PositionalStrategy witness;  // pure positional strategy of the controller
  std::size_t improvements = 0;
};

struct LocalDomination {
  std::vector<double> margins;  // val_<F_q, mu_v>(sa(q)) - v(q)
  std::vector<std::size_t> violations;
  bool dominates() const { return violations.empty(); }
};

// Fixing `fixed` (a positional strategy of either player) leaves an MDP for
// the other player: iota(q,b)(q') = p_{q,q'}(sa(q), b).
InducedMdp induce_mdp(const ConcurrentGame& game, const PositionalStrategy& fixed);

// Maximal end components by iterated SCC pruning. Pairwise disjoint.
std::vector<EndComponent> maximal_end_components(const InducedMdp& mdp);

MarkovChain markov_chain(const InducedMdp& mdp, const PositionalStrategy& controller_strategy);
MarkovChain markov_chain(const ConcurrentGame& game, const PositionalStrategy& sa,
                         const PositionalStrategy& sb);

// Strongly connected components of the support graph, in discovery order.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& graph);

std::vector<std::vector<std::size_t>> bottom_sccs(const MarkovChain& chain);
std::vector<std::vector<std::size_t>> bsccs_under(const InducedMdp& mdp,
                                                  const PositionalStrategy& controller_strategy);

// Exact probability of eventually hitting `target`, by Gaussian elimination
// on the states that can reach it. kSingularSystem on degenerate systems.
Valuation reach_probabilities(const MarkovChain& chain, const StateSet& target);

// P(n, target) for every start state by the backward recursion.
Valuation finite_horizon_reach(const MarkovChain& chain, const StateSet& target, std::size_t steps);

Valuation evaluate_pair(const ConcurrentGame& game, const PositionalStrategy& sa,
                        const PositionalStrategy& sb);

double finite_horizon_prob(const ConcurrentGame& game, const PositionalStrategy& sa,
                           const PositionalStrategy& sb, std::size_t q, std::size_t steps);

// Controller minimizes / maximizes the probability of reaching `target`.
// Policy iteration with exact evaluation.
ReachResult min_reach(const InducedMdp& mdp, const StateSet& target);
ReachResult max_reach(const InducedMdp& mdp, const StateSet& target);

// val^{sa}: Player B best-responds to a positional Player-A strategy.
ReachResult evaluate_against_best_b(const ConcurrentGame& game, const PositionalStrategy& sa);
// Player A best-responds to a positional Player-B strategy.
ReachResult evaluate_against_best_a(const ConcurrentGame& game, const PositionalStrategy& sb);

// At every state a column-optimal strategy of <F_q, mu_m>.
PositionalStrategy optimal_b_strategy(const ConcurrentGame& game, const Valuation& m);
// At every state a row-optimal strategy of <F_q, mu_m>.
PositionalStrategy optimal_a_strategy(const ConcurrentGame& game, const Valuation& m);

LocalDomination check_local_domination(const ConcurrentGame& game, const PositionalStrategy& sa,
                                       const Valuation& v, double theta_eq = Tolerances{}.theta_eq);

}  // namespace reachgame
