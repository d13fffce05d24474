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

#include "reachgame/fixpoint.hpp"

#include <algorithm>
#include <cmath>

#include "reachgame/errors.hpp"

namespace reachgame {

Valuation lift(const ConcurrentGame& game, const Valuation& v) {
  if (v.size() != game.state_count()) throw Error(ErrorCode::kDimensionMismatch, "valuation size mismatch");
  Valuation mu(game.nature_count(), 0.0);
  for (std::size_t d = 0; d < game.nature_count(); ++d) {
    const auto dist = game.dist(d);
    double s = 0.0;
    for (std::size_t q : game.support(d)) s += dist[q] * v[q];
    mu[d] = std::clamp(s, 0.0, 1.0);
  }
  return mu;
}

MatrixGame local_matrix(const ConcurrentGame& game, std::size_t q, const Valuation& nature_values) {
  const std::size_t na = game.action_count(Player::kA);
  const std::size_t nb = game.action_count(Player::kB);
  std::vector<double> e(na * nb);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) e[a * nb + b] = nature_values[game.nature_of(q, a, b)];
  }
  return MatrixGame(na, nb, std::move(e));
}

Valuation apply_delta(const ConcurrentGame& game, const Valuation& v) {
  const auto mu = lift(game, v);
  Valuation out(game.state_count(), 0.0);
  for (std::size_t q = 0; q < game.state_count(); ++q) {
    if (q == game.target()) {
      out[q] = 1.0;
      continue;
    }
    try {
      out[q] = solve(local_matrix(game, q, mu)).value;
    } catch (const Error& e) {
      throw Error(e.code(), "at state '" + game.state_names()[q] + "': " + e.what());
    }
  }
  return out;
}

Valuation initial_valuation(const ConcurrentGame& game) {
  Valuation v(game.state_count(), 0.0);
  v[game.target()] = 1.0;
  return v;
}

StateSet zero_value_set(const ConcurrentGame& game) {
  const std::size_t nq = game.state_count();
  const std::size_t na = game.action_count(Player::kA);
  const std::size_t nb = game.action_count(Player::kB);
  StateSet positive(nq, false);
  positive[game.target()] = true;
  auto touches = [&](std::size_t d) {
    for (std::size_t q : game.support(d)) {
      if (positive[q]) return true;
    }
    return false;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    StateSet next = positive;
    for (std::size_t q = 0; q < nq; ++q) {
      if (positive[q]) continue;
      bool every_column = true;
      for (std::size_t b = 0; b < nb && every_column; ++b) {
        bool some_row = false;
        for (std::size_t a = 0; a < na && !some_row; ++a) some_row = touches(game.nature_of(q, a, b));
        every_column = some_row;
      }
      if (every_column) {
        next[q] = true;
        changed = true;
      }
    }
    positive = std::move(next);
  }
  StateSet zero(nq);
  for (std::size_t q = 0; q < nq; ++q) zero[q] = !positive[q];
  return zero;
}

FixpointResult least_fixed_point(const ConcurrentGame& game, const FixpointOptions& options) {
  if (!(options.tol > 0.0)) throw Error(ErrorCode::kInvalidInput, "fixpoint tolerance must be positive");
  FixpointResult result;
  result.zero_set = zero_value_set(game);
  Valuation v = initial_valuation(game);
  if (options.trace_limit > 0) result.trace.push_back(v);
  while (result.iterations < options.max_iter) {
    Valuation next = apply_delta(game, v);
    for (std::size_t q = 0; q < next.size(); ++q) {
      if (result.zero_set[q]) next[q] = 0.0;
    }
    const double step = sup_distance(next, v);
    v = std::move(next);
    ++result.iterations;
    if (result.trace.size() < options.trace_limit) result.trace.push_back(v);
    if (step <= options.tol) {
      result.converged = true;
      break;
    }
  }
  Valuation check = apply_delta(game, v);
  for (std::size_t q = 0; q < check.size(); ++q) {
    if (result.zero_set[q]) check[q] = 0.0;
  }
  result.residual = sup_distance(check, v);
  result.values = std::move(v);
  return result;
}

}  // namespace reachgame
