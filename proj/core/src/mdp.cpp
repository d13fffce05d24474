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

#include "reachgame/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "reachgame/errors.hpp"
#include "reachgame/fixpoint.hpp"

namespace reachgame {

namespace {

constexpr double kImprovement = 1e-10;
constexpr double kPivotFloor = 1e-14;
constexpr std::size_t kMaxImprovements = 10000;

void count_improvement(ReachResult& res) {
  if (++res.improvements > kMaxImprovements) {
    throw Error(ErrorCode::kSolverDidNotConverge, "policy iteration exceeded " +
                                                      std::to_string(kMaxImprovements) + " improvements");
  }
}

Player other(Player p) { return p == Player::kA ? Player::kB : Player::kA; }

std::vector<std::vector<std::size_t>> support_graph(const MarkovChain& chain) {
  std::vector<std::vector<std::size_t>> g(chain.size());
  for (std::size_t q = 0; q < chain.size(); ++q) {
    for (std::size_t r = 0; r < chain[q].size(); ++r) {
      if (chain[q][r] > kStructuralZero) g[q].push_back(r);
    }
  }
  return g;
}

// States from which `target` is reachable in `graph`.
StateSet backward_reachable(const std::vector<std::vector<std::size_t>>& graph, const StateSet& target) {
  const std::size_t n = graph.size();
  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r : graph[q]) reverse[r].push_back(q);
  }
  StateSet seen = target;
  std::vector<std::size_t> stack = members(target);
  while (!stack.empty()) {
    const std::size_t r = stack.back();
    stack.pop_back();
    for (std::size_t q : reverse[r]) {
      if (!seen[q]) {
        seen[q] = true;
        stack.push_back(q);
      }
    }
  }
  return seen;
}

double action_value(const InducedMdp& mdp, std::size_t q, std::size_t a, const Valuation& x) {
  const auto row = mdp.row(q, a);
  double s = 0.0;
  for (std::size_t r = 0; r < row.size(); ++r) s += row[r] * x[r];
  return s;
}

PositionalStrategy pure_policy(const InducedMdp& mdp, const std::vector<std::size_t>& choice) {
  PositionalStrategy s;
  s.player = mdp.controller;
  for (std::size_t q = 0; q < mdp.states; ++q) s.choices.push_back(pure_action(mdp.actions, choice[q]));
  return s;
}

}  // namespace

std::vector<std::size_t> InducedMdp::successors(std::size_t q, std::size_t action) const {
  std::vector<std::size_t> out;
  const auto r = row(q, action);
  for (std::size_t s = 0; s < r.size(); ++s) {
    if (r[s] > kStructuralZero) out.push_back(s);
  }
  return out;
}

InducedMdp induce_mdp(const ConcurrentGame& game, const PositionalStrategy& fixed) {
  validate_strategy(game, fixed);
  InducedMdp mdp;
  mdp.controller = other(fixed.player);
  mdp.states = game.state_count();
  mdp.actions = game.action_count(mdp.controller);
  mdp.target = game.target();
  mdp.transitions.assign(mdp.states * mdp.actions, std::vector<double>(mdp.states, 0.0));
  const std::size_t nfixed = game.action_count(fixed.player);
  for (std::size_t q = 0; q < mdp.states; ++q) {
    for (std::size_t c = 0; c < mdp.actions; ++c) {
      auto& row = mdp.transitions[q * mdp.actions + c];
      for (std::size_t f = 0; f < nfixed; ++f) {
        const double p = fixed.choices[q][f];
        if (p == 0.0) continue;
        const std::size_t d = fixed.player == Player::kA ? game.nature_of(q, f, c) : game.nature_of(q, c, f);
        const auto dist = game.dist(d);
        for (std::size_t r : game.support(d)) row[r] += p * dist[r];
      }
    }
  }
  return mdp;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& graph) {
  // Tarjan, recursive; graphs here are desk-sized.
  const std::size_t n = graph.size();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : graph[v]) {
      if (index[w] == kUnset) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w = kUnset;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] == kUnset) visit(v);
  }
  return out;
}

std::vector<EndComponent> maximal_end_components(const InducedMdp& mdp) {
  const std::size_t n = mdp.states;
  std::vector<std::vector<bool>> enabled(n, std::vector<bool>(mdp.actions, true));
  std::vector<bool> alive(n, true);
  std::vector<std::vector<std::vector<std::size_t>>> succ(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < mdp.actions; ++a) succ[q].push_back(mdp.successors(q, a));
  }

  std::vector<std::vector<std::size_t>> sccs;
  while (true) {
    std::vector<std::vector<std::size_t>> graph(n);
    for (std::size_t q = 0; q < n; ++q) {
      if (!alive[q]) continue;
      for (std::size_t a = 0; a < mdp.actions; ++a) {
        if (!enabled[q][a]) continue;
        for (std::size_t r : succ[q][a]) {
          if (alive[r]) graph[q].push_back(r);
        }
      }
    }
    sccs = strongly_connected_components(graph);
    std::vector<std::size_t> comp(n, 0);
    for (std::size_t i = 0; i < sccs.size(); ++i) {
      for (std::size_t q : sccs[i]) comp[q] = i;
    }
    bool changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (!alive[q]) continue;
      bool any = false;
      for (std::size_t a = 0; a < mdp.actions; ++a) {
        if (!enabled[q][a]) continue;
        for (std::size_t r : succ[q][a]) {
          if (!alive[r] || comp[r] != comp[q]) {
            enabled[q][a] = false;
            changed = true;
            break;
          }
        }
        any = any || enabled[q][a];
      }
      if (!any) {
        alive[q] = false;
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<EndComponent> out;
  for (const auto& scc : sccs) {
    if (!alive[scc.front()]) continue;
    EndComponent ec;
    ec.states = scc;
    for (std::size_t q : scc) {
      std::vector<std::size_t> acts;
      for (std::size_t a = 0; a < mdp.actions; ++a) {
        if (enabled[q][a]) acts.push_back(a);
      }
      ec.actions.push_back(std::move(acts));
    }
    out.push_back(std::move(ec));
  }
  std::sort(out.begin(), out.end(),
            [](const EndComponent& x, const EndComponent& y) { return x.states.front() < y.states.front(); });
  return out;
}

MarkovChain markov_chain(const InducedMdp& mdp, const PositionalStrategy& controller_strategy) {
  if (controller_strategy.player != mdp.controller || controller_strategy.choices.size() != mdp.states) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy does not control this MDP");
  }
  MarkovChain chain(mdp.states, std::vector<double>(mdp.states, 0.0));
  for (std::size_t q = 0; q < mdp.states; ++q) {
    const auto& choice = controller_strategy.choices[q];
    for (std::size_t a = 0; a < mdp.actions; ++a) {
      if (choice[a] == 0.0) continue;
      const auto row = mdp.row(q, a);
      for (std::size_t r = 0; r < mdp.states; ++r) chain[q][r] += choice[a] * row[r];
    }
  }
  return chain;
}

MarkovChain markov_chain(const ConcurrentGame& game, const PositionalStrategy& sa,
                         const PositionalStrategy& sb) {
  if (sa.player != Player::kA || sb.player != Player::kB) {
    throw Error(ErrorCode::kInvalidInput, "expected a Player-A and a Player-B strategy");
  }
  validate_strategy(game, sb);
  return markov_chain(induce_mdp(game, sa), sb);
}

std::vector<std::vector<std::size_t>> bottom_sccs(const MarkovChain& chain) {
  const auto graph = support_graph(chain);
  auto sccs = strongly_connected_components(graph);
  std::vector<std::size_t> comp(chain.size(), 0);
  for (std::size_t i = 0; i < sccs.size(); ++i) {
    for (std::size_t q : sccs[i]) comp[q] = i;
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < sccs.size(); ++i) {
    bool bottom = true;
    for (std::size_t q : sccs[i]) {
      for (std::size_t r : graph[q]) bottom = bottom && comp[r] == i;
    }
    if (bottom) out.push_back(sccs[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> bsccs_under(const InducedMdp& mdp,
                                                  const PositionalStrategy& controller_strategy) {
  return bottom_sccs(markov_chain(mdp, controller_strategy));
}

Valuation reach_probabilities(const MarkovChain& chain, const StateSet& target) {
  const std::size_t n = chain.size();
  auto graph = support_graph(chain);
  for (std::size_t q = 0; q < n; ++q) {
    if (target[q]) graph[q].clear();
  }
  const StateSet can_reach = backward_reachable(graph, target);
  StateSet doomed(n, false);
  for (std::size_t q = 0; q < n; ++q) doomed[q] = !can_reach[q];
  // Almost-sure states get exactly 1; solving for them leaves round-off that
  // policy iteration can mistake for an improvement.
  const StateSet risky = backward_reachable(graph, doomed);
  std::vector<std::size_t> unknown;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t q = 0; q < n; ++q) {
    if (risky[q] && can_reach[q] && !target[q]) {
      slot[q] = unknown.size();
      unknown.push_back(q);
    }
  }
  const std::size_t k = unknown.size();
  // (I - P_UU) x = P_UT 1
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    const auto& row = chain[unknown[i]];
    a[i][i] = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (row[r] == 0.0) continue;
      if (target[r] || !risky[r]) {
        a[i][k] += row[r];
      } else if (slot[r] < n) {
        a[i][slot[r]] -= row[r];
      }
    }
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < k; ++i) {
      if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
    }
    if (std::abs(a[piv][col]) < kPivotFloor) {
      std::vector<std::string> states;
      for (std::size_t i = col; i < k; ++i) states.push_back(std::to_string(unknown[i]));
      throw Error(ErrorCode::kSingularSystem, "absorption system is singular", states);
    }
    std::swap(a[piv], a[col]);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == col || a[i][col] == 0.0) continue;
      const double f = a[i][col] / a[col][col];
      for (std::size_t j = col; j <= k; ++j) a[i][j] -= f * a[col][j];
    }
  }
  Valuation x(n, 0.0);
  for (std::size_t q = 0; q < n; ++q) {
    if (target[q] || !risky[q]) x[q] = 1.0;
  }
  for (std::size_t i = 0; i < k; ++i) x[unknown[i]] = std::clamp(a[i][k] / a[i][i], 0.0, 1.0);
  return x;
}

Valuation finite_horizon_reach(const MarkovChain& chain, const StateSet& target, std::size_t steps) {
  const std::size_t n = chain.size();
  Valuation x(n, 0.0);
  for (std::size_t q = 0; q < n; ++q) x[q] = target[q] ? 1.0 : 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    Valuation next(n, 0.0);
    for (std::size_t q = 0; q < n; ++q) {
      if (target[q]) {
        next[q] = 1.0;
        continue;
      }
      double v = 0.0;
      for (std::size_t r = 0; r < n; ++r) v += chain[q][r] * x[r];
      next[q] = v;
    }
    x = std::move(next);
  }
  return x;
}

Valuation evaluate_pair(const ConcurrentGame& game, const PositionalStrategy& sa,
                        const PositionalStrategy& sb) {
  StateSet target(game.state_count(), false);
  target[game.target()] = true;
  return reach_probabilities(markov_chain(game, sa, sb), target);
}

double finite_horizon_prob(const ConcurrentGame& game, const PositionalStrategy& sa,
                           const PositionalStrategy& sb, std::size_t q, std::size_t steps) {
  StateSet target(game.state_count(), false);
  target[game.target()] = true;
  return finite_horizon_reach(markov_chain(game, sa, sb), target, steps).at(q);
}

ReachResult min_reach(const InducedMdp& mdp, const StateSet& target) {
  const std::size_t n = mdp.states;
  // States where the controller can avoid the target forever.
  StateSet trap(n);
  for (std::size_t q = 0; q < n; ++q) trap[q] = !target[q];
  std::vector<std::size_t> choice(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (!trap[q]) continue;
      bool keeps = false;
      for (std::size_t a = 0; a < mdp.actions && !keeps; ++a) {
        const auto succ = mdp.successors(q, a);
        keeps = std::all_of(succ.begin(), succ.end(), [&](std::size_t r) { return trap[r]; });
        if (keeps) choice[q] = a;
      }
      if (!keeps) {
        trap[q] = false;
        choice[q] = 0;
        changed = true;
      }
    }
  }

  ReachResult res;
  while (true) {
    auto policy = pure_policy(mdp, choice);
    Valuation x = reach_probabilities(markov_chain(mdp, policy), target);
    bool improved = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (target[q] || trap[q]) continue;
      std::size_t best = choice[q];
      double best_value = action_value(mdp, q, best, x);
      for (std::size_t a = 0; a < mdp.actions; ++a) {
        const double v = action_value(mdp, q, a, x);
        if (v < best_value - kImprovement) {
          best = a;
          best_value = v;
        }
      }
      if (best != choice[q]) {
        choice[q] = best;
        improved = true;
      }
    }
    if (!improved) {
      for (std::size_t q = 0; q < n; ++q) {
        if (trap[q]) x[q] = 0.0;
      }
      res.values = std::move(x);
      res.witness = std::move(policy);
      return res;
    }
    count_improvement(res);
  }
}

ReachResult max_reach(const InducedMdp& mdp, const StateSet& target) {
  const std::size_t n = mdp.states;
  // Attractor layering gives an initial policy that reaches the target with
  // positive probability from every state that can reach it at all.
  std::vector<std::size_t> choice(n, 0);
  StateSet reached = target;
  bool changed = true;
  while (changed) {
    changed = false;
    StateSet next = reached;
    for (std::size_t q = 0; q < n; ++q) {
      if (reached[q]) continue;
      for (std::size_t a = 0; a < mdp.actions; ++a) {
        const auto succ = mdp.successors(q, a);
        if (std::any_of(succ.begin(), succ.end(), [&](std::size_t r) { return reached[r]; })) {
          choice[q] = a;
          next[q] = true;
          changed = true;
          break;
        }
      }
    }
    reached = std::move(next);
  }

  ReachResult res;
  while (true) {
    auto policy = pure_policy(mdp, choice);
    Valuation x = reach_probabilities(markov_chain(mdp, policy), target);
    bool improved = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (target[q] || !reached[q]) continue;
      std::size_t best = choice[q];
      double best_value = action_value(mdp, q, best, x);
      for (std::size_t a = 0; a < mdp.actions; ++a) {
        const double v = action_value(mdp, q, a, x);
        if (v > best_value + kImprovement) {
          best = a;
          best_value = v;
        }
      }
      if (best != choice[q]) {
        choice[q] = best;
        improved = true;
      }
    }
    if (!improved) {
      res.values = std::move(x);
      res.witness = std::move(policy);
      return res;
    }
    count_improvement(res);
  }
}

ReachResult evaluate_against_best_b(const ConcurrentGame& game, const PositionalStrategy& sa) {
  if (sa.player != Player::kA) throw Error(ErrorCode::kInvalidInput, "expected a Player-A strategy");
  StateSet target(game.state_count(), false);
  target[game.target()] = true;
  return min_reach(induce_mdp(game, sa), target);
}

ReachResult evaluate_against_best_a(const ConcurrentGame& game, const PositionalStrategy& sb) {
  if (sb.player != Player::kB) throw Error(ErrorCode::kInvalidInput, "expected a Player-B strategy");
  StateSet target(game.state_count(), false);
  target[game.target()] = true;
  return max_reach(induce_mdp(game, sb), target);
}

PositionalStrategy optimal_b_strategy(const ConcurrentGame& game, const Valuation& m) {
  const auto mu = lift(game, m);
  PositionalStrategy s;
  s.player = Player::kB;
  for (std::size_t q = 0; q < game.state_count(); ++q) {
    s.choices.push_back(solve(local_matrix(game, q, mu)).col_strategy);
  }
  return s;
}

PositionalStrategy optimal_a_strategy(const ConcurrentGame& game, const Valuation& m) {
  const auto mu = lift(game, m);
  PositionalStrategy s;
  s.player = Player::kA;
  for (std::size_t q = 0; q < game.state_count(); ++q) {
    s.choices.push_back(solve(local_matrix(game, q, mu)).row_strategy);
  }
  return s;
}

LocalDomination check_local_domination(const ConcurrentGame& game, const PositionalStrategy& sa,
                                       const Valuation& v, double theta_eq) {
  validate_strategy(game, sa);
  const auto mu = lift(game, v);
  LocalDomination out;
  for (std::size_t q = 0; q < game.state_count(); ++q) {
    const double margin = value_of_row_strategy(local_matrix(game, q, mu), sa.choices[q]) - v[q];
    out.margins.push_back(margin);
    if (margin < -theta_eq) out.violations.push_back(q);
  }
  return out;
}

}  // namespace reachgame
