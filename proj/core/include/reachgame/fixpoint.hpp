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
#include <vector>

#include "reachgame/game.hpp"
#include "reachgame/matrix_game.hpp"

namespace reachgame {

struct FixpointOptions {
  double tol = 1e-6;
  std::size_t max_iter = 1'000'000;
  // Keep at most this many iterates in FixpointResult::trace (0 = none).
  std::size_t trace_limit = 0;
};

struct FixpointResult {
  Valuation values;
  std::size_t iterations = 0;
  double residual = 0.0;  // sup-norm of Delta(values) - values
  bool converged = false;
  StateSet zero_set;
  std::vector<Valuation> trace;  // v_0, v_1, ... up to trace_limit entries
};

// mu_v(d) = sum_q dist(d)(q) v(q).
Valuation lift(const ConcurrentGame& game, const Valuation& v);

// <F_q, mu> as a matrix game; `nature_values` is indexed by Nature state.
MatrixGame local_matrix(const ConcurrentGame& game, std::size_t q, const Valuation& nature_values);

// Delta(v)(target) = 1, Delta(v)(q) = val <F_q, mu_v> otherwise.
Valuation apply_delta(const ConcurrentGame& game, const Valuation& v);

// v_0 = indicator of the target.
Valuation initial_valuation(const ConcurrentGame& game);

// Kleene iteration v_{n+1} = Delta(v_n) from v_0 until the sup-norm step is
// at most `tol` or `max_iter` is reached. Zero-set states are pinned to 0.
FixpointResult least_fixed_point(const ConcurrentGame& game, const FixpointOptions& options = {});

// States of value 0: complement of the least P containing the target and
// closed under "for every column some row reaches P with positive
// probability". Exact (combinatorial).
StateSet zero_value_set(const ConcurrentGame& game);

}  // namespace reachgame
