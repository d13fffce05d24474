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

#include "reachgame/synthesize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "reachgame/errors.hpp"
#include "reachgame/fixpoint.hpp"
#include "reachgame/mdp.hpp"

namespace reachgame {

namespace {

constexpr double kVerifySlack = 1e-4;
// "Equal" in the n_= / n_up split of the reduction step.
constexpr double kSameValue = 1e-12;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Delta with the `pinned` states held at m.
Valuation pinned_delta(const ConcurrentGame& game, const Valuation& m, const StateSet& pinned,
                       const Valuation& w) {
  Valuation out = apply_delta(game, w);
  for (std::size_t q = 0; q < out.size(); ++q) {
    if (pinned[q]) out[q] = m[q];
  }
  return out;
}

// f^0(w), ..., f^k(w).
std::vector<Valuation> powers(const ConcurrentGame& game, const Valuation& m, const StateSet& pinned,
                              const Valuation& w, std::size_t k) {
  std::vector<Valuation> out{w};
  for (std::size_t i = 0; i < k; ++i) out.push_back(pinned_delta(game, m, pinned, out.back()));
  return out;
}

}  // namespace

double optimal_action_gap(const ConcurrentGame& game, const Valuation& m,
                          const std::vector<MixedAction>& sa, const StateSet& domain,
                          const Tolerances& tol) {
  const auto mu = lift(game, m);
  double eta = 1.0;
  for (std::size_t q = 0; q < game.state_count(); ++q) {
    if (!domain[q]) continue;
    const auto mg = local_matrix(game, q, mu);
    const auto pay = column_payoffs(mg, sa[q]);
    const double val = *std::min_element(pay.begin(), pay.end());
    for (double p : pay) {
      if (p - val > tol.theta_eq) eta = std::min(eta, p - val);
    }
  }
  if (eta <= tol.theta_strict) {
    throw Error(ErrorCode::kDegenerateGap, "optimal-action gap " + fmt(eta) + " is below theta_strict");
  }
  return eta;
}

IncreasingValuation increasing_valuation(const ConcurrentGame& game, const Valuation& m,
                                         const StateSet& pinned, double epsilon,
                                         const Tolerances& tol, std::size_t max_power) {
  const std::size_t n = game.state_count();
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidInput, "epsilon must be positive");
  const auto free = [&] {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n; ++q) {
      if (!pinned[q]) out.push_back(q);
    }
    return out;
  }();
  IncreasingValuation result;
  result.values = m;
  result.min_increase = std::numeric_limits<double>::infinity();
  if (free.empty()) return result;

  double iota = epsilon;
  for (std::size_t q : free) iota = std::min(iota, m[q]);
  if (!(iota > 0.0)) {
    throw Error(ErrorCode::kConstructionFailed, "a state outside the pinned set has value 0");
  }
  Valuation w = m;
  for (std::size_t q : free) w[q] = std::clamp(m[q] - iota, 0.0, 1.0);

  // Smallest K with w < f^K(w) by theta_strict on every free state.
  std::size_t K = 0;
  {
    Valuation cur = w;
    while (true) {
      if (K >= max_power) {
        throw Error(ErrorCode::kConstructionFailed,
                    "no power of the pinned operator strictly increases the start valuation");
      }
      cur = pinned_delta(game, m, pinned, cur);
      ++K;
      bool strict = true;
      for (std::size_t q : free) strict = strict && cur[q] > w[q] + tol.theta_strict;
      if (strict) break;
    }
  }
  result.initial_power = K;

  while (K > 1) {
    const std::size_t k = K - 1;
    const auto f = powers(game, m, pinned, w, K);
    double m_eq = std::numeric_limits<double>::infinity();
    double m_up = std::numeric_limits<double>::infinity();
    std::vector<bool> equal(n, false);
    for (std::size_t q : free) {
      equal[q] = f[k][q] - w[q] <= kSameValue;
      if (equal[q]) {
        m_eq = std::min(m_eq, f[k + 1][q] - f[k][q]);
      } else {
        m_up = std::min(m_up, f[k][q] - w[q]);
      }
    }
    const double mm = std::min(m_eq, m_up);
    if (!(mm > 0.0)) throw Error(ErrorCode::kConstructionFailed, "reduction margin vanished at power " + std::to_string(K));
    for (std::size_t q : free) {
      if (!equal[q]) w[q] = f[k][q] - mm / 2.0;
    }
    K = k;
  }

  const auto d = apply_delta(game, w);
  std::vector<std::string> residuals;
  for (std::size_t q : free) {
    const double inc = d[q] - w[q];
    result.min_increase = std::min(result.min_increase, inc);
    if (!(inc > tol.theta_strict)) residuals.push_back(game.state_names()[q] + ": " + fmt(inc));
  }
  if (!residuals.empty()) {
    throw Error(ErrorCode::kConstructionFailed, "Delta(v) does not strictly exceed v off the pinned set",
                residuals);
  }
  result.values = std::move(w);
  return result;
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kTarget: return "target";
    case Provenance::kZeroSet: return "zero-set";
    case Provenance::kEfficient: return "efficient";
    case Provenance::kBadConstruction: return "bad-construction";
  }
  return "unknown";
}

SynthesisResult synthesize_a(const ConcurrentGame& game, const ClassificationReport& report, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidInput, "epsilon must be positive");
  const std::size_t n = game.state_count();
  const std::size_t na = game.action_count(Player::kA);
  const auto& m = report.values;
  const auto& tol = report.tolerances;

  SynthesisResult res;
  res.epsilon = epsilon;
  res.strategy.player = Player::kA;
  res.strategy.choices.assign(n, uniform_action(na));
  res.provenance.assign(n, Provenance::kZeroSet);
  res.level.assign(n, -1);

  StateSet efficient(n, false);
  for (std::size_t q = 0; q < n; ++q) {
    if (q == game.target()) {
      res.provenance[q] = Provenance::kTarget;
    } else if (report.submax_states[q]) {
      res.provenance[q] = Provenance::kBadConstruction;
    } else if (report.witness_level[q] > 0) {
      res.provenance[q] = Provenance::kEfficient;
      res.level[q] = report.witness_level[q];
      res.strategy.choices[q] = report.patterns[q].witness;
      efficient[q] = true;
    }
  }

  res.eta = optimal_action_gap(game, m, res.strategy.choices, efficient, tol);
  res.epsilon_used = std::min(res.eta, epsilon);

  if (count_members(report.submax_states) == 0) {
    res.guarantee = m;
  } else {
    res.guarantee = increasing_valuation(game, m, report.max_states, res.epsilon_used, tol).values;
    const auto mu = lift(game, res.guarantee);
    for (std::size_t q = 0; q < n; ++q) {
      if (report.submax_states[q]) res.strategy.choices[q] = solve(local_matrix(game, q, mu)).row_strategy;
    }
  }

  res.evaluated = evaluate_against_best_b(game, res.strategy).values;
  res.verified = true;
  for (std::size_t q = 0; q < n; ++q) {
    const auto& name = game.state_names()[q];
    if (res.evaluated[q] < res.guarantee[q] - kVerifySlack) {
      res.verified = false;
      res.warnings.push_back("state '" + name + "' evaluates to " + fmt(res.evaluated[q]) +
                             " below its guarantee " + fmt(res.guarantee[q]));
    }
    if (report.max_states[q] && std::abs(res.evaluated[q] - m[q]) > kVerifySlack) {
      res.verified = false;
      res.warnings.push_back("maximizable state '" + name + "' evaluates to " + fmt(res.evaluated[q]) +
                             " instead of " + fmt(m[q]));
    }
  }
  return res;
}

OpponentSynthesis synthesize_b(const ConcurrentGame& game, const Valuation& m) {
  OpponentSynthesis out;
  out.strategy = optimal_b_strategy(game, m);
  out.evaluated = evaluate_against_best_a(game, out.strategy).values;
  out.verified = true;
  for (std::size_t q = 0; q < game.state_count(); ++q) {
    if (out.evaluated[q] > m[q] + kVerifySlack) out.verified = false;
  }
  return out;
}

}  // namespace reachgame
