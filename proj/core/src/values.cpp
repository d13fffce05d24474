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

#include "reachgame/values.hpp"

#include <algorithm>
#include <cstdio>

#include "reachgame/mdp.hpp"

namespace reachgame {

namespace {

constexpr int kRounds = 4;
constexpr double kFixedPointSlack = 1e-9;
constexpr double kMaxSelectableGap = 1e-2;

double pinned_residual(const ConcurrentGame& game, const Valuation& v, const StateSet& zero) {
  Valuation d = apply_delta(game, v);
  for (std::size_t q = 0; q < d.size(); ++q) {
    if (zero[q]) d[q] = 0.0;
  }
  return sup_distance(d, v);
}

std::string format_gap(const char* what, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s %.3g", what, x);
  return buf;
}

}  // namespace

GameValues solve_values(const ConcurrentGame& game, const FixpointOptions& options) {
  GameValues out;
  out.kleene = least_fixed_point(game, options);
  out.zero_set = out.kleene.zero_set;
  const std::size_t n = game.state_count();
  const std::size_t top = game.target();

  out.lower = out.kleene.values;
  out.upper.assign(n, 1.0);
  for (std::size_t q = 0; q < n; ++q) {
    if (out.zero_set[q]) out.upper[q] = 0.0;
  }

  auto tighten = [&](const Valuation& anchor) {
    const auto sa = optimal_a_strategy(game, anchor);
    const auto la = evaluate_against_best_b(game, sa).values;
    const auto sb = optimal_b_strategy(game, anchor);
    const auto ub = evaluate_against_best_a(game, sb).values;
    for (std::size_t q = 0; q < n; ++q) {
      out.lower[q] = std::max(out.lower[q], la[q]);
      out.upper[q] = std::min(out.upper[q], ub[q]);
    }
  };

  for (int round = 0; round < kRounds; ++round) {
    const Valuation l = out.lower;
    const Valuation u = out.upper;
    tighten(l);
    tighten(u);
    if (sup_distance(l, out.lower) == 0.0 && sup_distance(u, out.upper) == 0.0) break;
  }
  for (std::size_t q = 0; q < n; ++q) {
    // Round-off can cross the bounds by a few ulps.
    out.upper[q] = std::max(out.upper[q], out.lower[q]);
  }
  out.lower[top] = out.upper[top] = 1.0;
  out.gap = sup_distance(out.upper, out.lower);

  const double upper_residual = pinned_residual(game, out.upper, out.zero_set);
  out.upper_selected = upper_residual <= kFixedPointSlack && out.gap <= kMaxSelectableGap;
  out.values = out.upper_selected ? out.upper : out.lower;
  out.residual = out.upper_selected ? upper_residual : pinned_residual(game, out.lower, out.zero_set);
  out.converged = out.upper_selected || out.kleene.converged;

  if (!out.kleene.converged) {
    out.warnings.push_back("value iteration stopped at the iteration cap (" +
                           std::to_string(out.kleene.iterations) + " iterations)");
  }
  if (!out.upper_selected && out.gap > options.tol) {
    out.warnings.push_back(format_gap("values bracketed only up to a gap of", out.gap));
  }
  return out;
}

}  // namespace reachgame
