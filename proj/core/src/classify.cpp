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

#include "reachgame/classify.hpp"

#include <algorithm>

#include "reachgame/errors.hpp"

namespace reachgame {

EffQuery EffQuery::make(const ConcurrentGame& game, std::size_t q, const StateSet& good, const StateSet& bad) {
  if (good.size() != game.state_count() || bad.size() != game.state_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "state set size mismatch");
  }
  EffQuery query;
  query.state = q;
  query.good = good;
  query.bad = bad;
  query.good_nature = nature_states_touching(game, good);
  query.bad_nature = nature_states_touching(game, bad);
  return query;
}

LocalPatterns LocalPatterns::scan(const ConcurrentGame& game, const Valuation& m, const Tolerances& tol) {
  const auto mu = lift(game, m);
  LocalPatterns out;
  out.scans.resize(game.state_count());
  for (std::size_t q = 0; q < game.state_count(); ++q) {
    if (q == game.target()) continue;
    out.scans[q] = scan_support_patterns(local_matrix(game, q, mu), tol);
  }
  return out;
}

double LocalPatterns::min_margin() const {
  double m = 1.0;
  for (const auto& s : scans) m = std::min(m, s.margin);
  return m;
}

bool is_progressive(const ConcurrentGame& game, const EffQuery& query, const SupportPattern& pattern) {
  for (std::size_t b : pattern.tight_columns) {
    bool hit = false;
    for (std::size_t a : pattern.rows) hit = hit || query.good_nature[game.nature_of(query.state, a, b)];
    if (!hit) return false;
  }
  return true;
}

bool avoids_risk(const ConcurrentGame& game, const EffQuery& query, const SupportPattern& pattern) {
  for (std::size_t b : pattern.tight_columns) {
    for (std::size_t a : pattern.rows) {
      if (query.bad_nature[game.nature_of(query.state, a, b)]) return false;
    }
  }
  return true;
}

std::vector<SupportPattern> progressive_strategies(const ConcurrentGame& game, const Valuation& m,
                                                   std::size_t q, const StateSet& good,
                                                   const Tolerances& tol) {
  return risky_strategies_excluded(game, m, q, good, StateSet(game.state_count(), false), tol);
}

std::vector<SupportPattern> risky_strategies_excluded(const ConcurrentGame& game, const Valuation& m,
                                                      std::size_t q, const StateSet& good,
                                                      const StateSet& bad, const Tolerances& tol) {
  const auto query = EffQuery::make(game, q, good, bad);
  const auto mg = local_matrix(game, q, lift(game, m));
  std::vector<SupportPattern> out;
  for (auto& p : enumerate_support_patterns(mg, tol)) {
    if (is_progressive(game, query, p) && avoids_risk(game, query, p)) out.push_back(std::move(p));
  }
  return out;
}

SecureStates secure_states(const ConcurrentGame& game, const LocalPatterns& patterns,
                           const StateSet& zero_set, const StateSet& bad) {
  const std::size_t n = game.state_count();
  SecureStates out;
  out.level_of.assign(n, -1);
  out.witness.resize(n);
  StateSet level(n, false);
  level[game.target()] = true;
  out.level_of[game.target()] = 0;
  out.levels.push_back(level);
  while (true) {
    StateSet next = level;
    bool grew = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (level[q] || bad[q]) continue;
      const auto query = EffQuery::make(game, q, level, bad);
      for (const auto& p : patterns.scans[q].patterns) {
        if (is_progressive(game, query, p) && avoids_risk(game, query, p)) {
          next[q] = true;
          out.level_of[q] = static_cast<int>(out.levels.size());
          out.witness[q] = p;
          grew = true;
          break;
        }
      }
    }
    if (!grew) break;
    level = std::move(next);
    out.levels.push_back(level);
    if (out.levels.size() > n + 1) throw Error(ErrorCode::kInvalidInput, "Sec hierarchy failed to stabilize");
  }
  out.secure = level;
  for (std::size_t q = 0; q < n; ++q) out.secure[q] = out.secure[q] || zero_set[q];
  return out;
}

SecureStates secure_states(const ConcurrentGame& game, const Valuation& m, const StateSet& zero_set,
                           const StateSet& bad, const Tolerances& tol) {
  return secure_states(game, LocalPatterns::scan(game, m, tol), zero_set, bad);
}

ClassificationReport classify_with_values(const ConcurrentGame& game, const GameValues& values,
                                          const Tolerances& tol, bool force) {
  ClassificationReport report;
  report.warnings = values.warnings;
  if (!values.converged) {
    if (!force) {
      throw Error(ErrorCode::kValuesNotConverged,
                  "value iteration did not converge; rerun with a larger iteration cap or force");
    }
    report.warnings.push_back("classifying non-converged values (forced)");
  }
  const std::size_t n = game.state_count();
  report.values = values.values;
  report.lower = values.lower;
  report.upper = values.upper;
  report.zero_set = values.zero_set;
  report.iterations = values.kleene.iterations;
  report.residual = values.residual;
  report.converged = values.converged;
  report.value_gap = values.gap;
  report.tolerances = tol;

  const auto patterns = LocalPatterns::scan(game, values.values, tol);
  report.min_margin = patterns.min_margin();

  StateSet bad(n, false);
  report.bad_iterations.push_back(bad);
  SecureStates sec;
  while (true) {
    sec = secure_states(game, patterns, values.zero_set, bad);
    report.sec_hierarchy.push_back(sec.levels);
    StateSet next(n);
    for (std::size_t q = 0; q < n; ++q) next[q] = !sec.secure[q];
    if (next == bad) break;
    bad = std::move(next);
    report.bad_iterations.push_back(bad);
    if (report.bad_iterations.size() > n + 2) throw Error(ErrorCode::kInvalidInput, "Bad iteration failed to stabilize");
  }

  report.max_states = sec.secure;
  report.submax_states = bad;
  report.witnesses.resize(n);
  report.witness_level = sec.level_of;
  report.patterns = sec.witness;
  const auto mu = lift(game, values.values);
  const std::size_t na = game.action_count(Player::kA);
  for (std::size_t q = 0; q < n; ++q) {
    if (sec.level_of[q] > 0) {
      report.witnesses[q] = sec.witness[q].witness;
    } else if (bad[q]) {
      report.witnesses[q] = solve(local_matrix(game, q, mu)).row_strategy;
    } else {
      report.witnesses[q] = uniform_action(na);
    }
  }
  if (report.min_margin < 10.0 * tol.theta_strict) {
    report.warnings.push_back("some support pattern lies within 10*theta_strict of the realizability threshold");
  }
  return report;
}

ClassificationReport classify_states(const ConcurrentGame& game, const ClassifyOptions& options) {
  return classify_with_values(game, solve_values(game, options.fixpoint), options.tolerances, options.force);
}

}  // namespace reachgame
