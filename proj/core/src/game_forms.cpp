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

#include "reachgame/game_forms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "reachgame/errors.hpp"

namespace reachgame {

namespace {

constexpr double kCertifiedFixedPoint = 1e-12;
constexpr double kMaxSelectableGap = 1e-2;

bool row_inside(const GameForm& form, std::size_t a, std::uint64_t mask) {
  for (std::size_t b = 0; b < form.cols(); ++b) {
    if (!(mask >> form.outcome(a, b) & 1U)) return false;
  }
  return true;
}

bool col_outside(const GameForm& form, std::size_t b, std::uint64_t mask) {
  for (std::size_t a = 0; a < form.rows(); ++a) {
    if (mask >> form.outcome(a, b) & 1U) return false;
  }
  return true;
}

// Max over pure rows of the eventual probability of reaching the valued
// outcomes' top mass when Player B repeats `sb` and unvalued cells loop.
double best_response_bound(const GameForm& form, const PartialValuation& alpha, const MixedAction& sb) {
  double best = 0.0;
  for (std::size_t a = 0; a < form.rows(); ++a) {
    double loop = 0.0;
    double top = 0.0;
    for (std::size_t b = 0; b < form.cols(); ++b) {
      const std::size_t o = form.outcome(a, b);
      if (alpha.unvalued[o]) {
        loop += sb[b];
      } else {
        top += sb[b] * alpha.values[o];
      }
    }
    if (loop < 1.0 - 1e-15) best = std::max(best, std::min(1.0, top / (1.0 - loop)));
  }
  return best;
}

}  // namespace

Determinacy is_determined(const GameForm& form, std::size_t cap) {
  const std::size_t n = form.outcome_count();
  if (n > cap || n >= 63) {
    throw Error(ErrorCode::kCapExceeded,
                std::to_string(n) + " outcomes exceed the determinacy cap of " + std::to_string(cap));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  for (int size = static_cast<int>(n); size >= 0; --size) {
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      if (std::popcount(mask) != size) continue;
      bool ok = false;
      for (std::size_t a = 0; a < form.rows() && !ok; ++a) ok = row_inside(form, a, mask);
      for (std::size_t b = 0; b < form.cols() && !ok; ++b) ok = col_outside(form, b, mask);
      if (!ok) {
        Determinacy d;
        d.determined = false;
        d.counterexample.assign(n, false);
        for (std::size_t o = 0; o < n; ++o) d.counterexample[o] = (mask >> o & 1U) != 0;
        return d;
      }
    }
  }
  return {};
}

double f_alpha(const GameForm& form, const PartialValuation& alpha, double y) {
  return solve(MatrixGame::from_form(form, alpha.complete_with(y))).value;
}

AlphaFixpoint f_alpha_lfp(const GameForm& form, const PartialValuation& alpha, double tol,
                          std::size_t max_iter) {
  validate_partial_valuation(form, alpha);
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidInput, "tolerance must be positive");
  AlphaFixpoint out;
  if (std::none_of(alpha.unvalued.begin(), alpha.unvalued.end(), [](bool e) { return e; })) {
    out.v_alpha = out.lower = out.upper = f_alpha(form, alpha, 0.0);
    out.total = alpha.complete_with(0.0);
    out.converged = true;
    return out;
  }

  double y = 0.0;
  while (out.iterations < max_iter) {
    const double next = f_alpha(form, alpha, y);
    ++out.iterations;
    const double step = std::abs(next - y);
    y = std::max(y, next);
    if (step <= tol) {
      out.converged = true;
      break;
    }
  }
  out.lower = y;

  // Column-optimal mixes of <form, alpha[y]> bound v_alpha from above.
  double u = 1.0;
  double anchor = y;
  for (int round = 0; round < 3; ++round) {
    const auto sb = solve(MatrixGame::from_form(form, alpha.complete_with(anchor))).col_strategy;
    u = std::min(u, best_response_bound(form, alpha, sb));
    anchor = std::max(u, y);
  }
  out.upper = std::max(u, y);

  const bool certified = std::abs(f_alpha(form, alpha, out.upper) - out.upper) <= kCertifiedFixedPoint &&
                         out.upper - out.lower <= kMaxSelectableGap;
  out.v_alpha = certified ? out.upper : out.lower;
  out.converged = out.converged || certified;
  out.residual = std::abs(f_alpha(form, alpha, out.v_alpha) - out.v_alpha);
  out.total = alpha.complete_with(out.v_alpha);
  return out;
}

RmVerdict rm_wrt(const GameForm& form, const PartialValuation& alpha, const Tolerances& tol) {
  const auto fix = f_alpha_lfp(form, alpha);
  RmVerdict v;
  v.v_alpha = fix.v_alpha;
  v.total = fix.total;
  const auto scan = scan_support_patterns(MatrixGame::from_form(form, v.total), tol);
  v.margin = scan.margin;
  if (v.v_alpha <= tol.theta_eq) {
    v.rm = true;
    return v;
  }
  for (const auto& p : scan.patterns) {
    bool all = true;
    for (std::size_t b : p.tight_columns) {
      bool leaves = false;
      for (std::size_t a : p.rows) leaves = leaves || !alpha.unvalued[form.outcome(a, b)];
      all = all && leaves;
    }
    if (all) {
      v.rm = true;
      v.witness = p;
      return v;
    }
  }
  return v;
}

Falsification rm_falsify(const GameForm& form, std::size_t samples, std::uint64_t seed, const Tolerances& tol) {
  const std::size_t n = form.outcome_count();
  Falsification out;
  if (n < 2 || n >= 63) return out;  // no non-empty proper subset to sample
  const std::uint64_t proper = (std::uint64_t{1} << n) - 2;
  for (std::size_t i = 0; i < samples; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(std::uint64_t{i} >> 32)};
    std::mt19937_64 rng(seq);
    const std::uint64_t mask = 1 + std::uniform_int_distribution<std::uint64_t>(0, proper - 1)(rng);
    PartialValuation alpha;
    alpha.values.assign(n, 0.0);
    alpha.unvalued.assign(n, false);
    std::uniform_int_distribution<int> grid(0, 8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t o = 0; o < n; ++o) {
      alpha.unvalued[o] = (mask >> o & 1U) != 0;
      if (alpha.unvalued[o]) continue;
      switch (i % 5) {
        case 0: alpha.values[o] = 1.0; break;
        case 1: alpha.values[o] = 0.0; break;
        case 4: alpha.values[o] = unit(rng); break;
        default: alpha.values[o] = grid(rng) / 8.0; break;
      }
    }
    ++out.samples_tried;
    auto verdict = rm_wrt(form, alpha, tol);
    if (!verdict.rm) {
      out.counterexample_found = true;
      out.alpha = std::move(alpha);
      out.verdict = std::move(verdict);
      return out;
    }
  }
  return out;
}

ConcurrentGame embed_three_state(const GameForm& form, const PartialValuation& alpha) {
  validate_partial_valuation(form, alpha);
  GameDescription desc;
  desc.states = {"q0", "top", "bot"};
  desc.target = "top";
  for (std::size_t a = 0; a < form.rows(); ++a) desc.actions_a.push_back("a" + std::to_string(a + 1));
  for (std::size_t b = 0; b < form.cols(); ++b) desc.actions_b.push_back("b" + std::to_string(b + 1));

  auto nature_of = [&](std::size_t o) {
    return alpha.unvalued[o] ? std::string("d_loop") : "d_" + form.outcome_names()[o];
  };
  bool any_unvalued = false;
  for (std::size_t o = 0; o < form.outcome_count(); ++o) {
    if (alpha.unvalued[o]) {
      any_unvalued = true;
      continue;
    }
    std::vector<std::pair<std::string, double>> row;
    if (alpha.values[o] > 0.0) row.emplace_back("top", alpha.values[o]);
    if (alpha.values[o] < 1.0) row.emplace_back("bot", 1.0 - alpha.values[o]);
    desc.nature.emplace_back(nature_of(o), std::move(row));
  }
  if (any_unvalued) desc.nature.push_back({"d_loop", {{"q0", 1.0}}});
  desc.nature.push_back({"top_loop", {{"top", 1.0}}});
  desc.nature.push_back({"bot_loop", {{"bot", 1.0}}});

  std::vector<std::vector<std::string>> q0(form.rows(), std::vector<std::string>(form.cols()));
  for (std::size_t a = 0; a < form.rows(); ++a) {
    for (std::size_t b = 0; b < form.cols(); ++b) q0[a][b] = nature_of(form.outcome(a, b));
  }
  desc.delta.emplace_back("q0", std::move(q0));
  desc.delta.emplace_back("top", std::vector<std::vector<std::string>>(
                                     form.rows(), std::vector<std::string>(form.cols(), "top_loop")));
  desc.delta.emplace_back("bot", std::vector<std::vector<std::string>>(
                                     form.rows(), std::vector<std::string>(form.cols(), "bot_loop")));
  return ConcurrentGame::validate(desc);
}

}  // namespace reachgame
