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

#include "reachgame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "reachgame/errors.hpp"
#include "reachgame/fixpoint.hpp"
#include "reachgame/mdp.hpp"

namespace reachgame::oracle {

namespace {

// SplitMix64 keyed by (seed, run): every run owns an independent stream.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t run) : state_(mix(seed) ^ mix(run + 0x632be59bd9b4e019ULL)) {}

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t next() { return mix(state_ += 0x9e3779b97f4a7c15ULL); }

  std::uint64_t state_;
};

template <class Weights>
std::size_t draw(Stream& s, const Weights& w) {
  const double u = s.uniform();
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    acc += w[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

double pairwise(const std::uint8_t* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise(x, h) + pairwise(x + h, n - h);
}

bool is_sink(const ConcurrentGame& game, std::size_t q) {
  for (std::size_t a = 0; a < game.action_count(Player::kA); ++a) {
    for (std::size_t b = 0; b < game.action_count(Player::kB); ++b) {
      const auto& s = game.support(game.nature_of(q, a, b));
      if (s.size() != 1 || s[0] != q) return false;
    }
  }
  return true;
}

// All compositions of `steps` into `parts` non-negative parts, as mixed actions.
std::vector<MixedAction> compositions(std::size_t parts, std::size_t steps) {
  std::vector<MixedAction> out;
  std::vector<std::size_t> c(parts, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == parts) {
      c[i] = left;
      MixedAction m(parts);
      for (std::size_t j = 0; j < parts; ++j) m[j] = static_cast<double>(c[j]) / static_cast<double>(steps);
      out.push_back(std::move(m));
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      c[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, steps);
  return out;
}

}  // namespace

double pairwise_mean(const std::vector<std::uint8_t>& hits) {
  if (hits.empty()) return 0.0;
  return pairwise(hits.data(), hits.size()) / static_cast<double>(hits.size());
}

Estimate simulate(const ConcurrentGame& game, const HistoryStrategy& sa, const HistoryStrategy& sb,
                  std::size_t from, const SimulationConfig& cfg) {
  if (cfg.runs == 0 || cfg.horizon == 0) throw Error(ErrorCode::kInvalidInput, "runs and horizon must be positive");
  if (from >= game.state_count()) throw Error(ErrorCode::kDimensionMismatch, "start state out of range");
  std::vector<std::uint8_t> hits(cfg.runs, 0);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> history;
    for (std::size_t r = begin; r < end; ++r) {
      Stream s(cfg.seed, r);
      history.assign(1, from);
      std::size_t q = from;
      for (std::size_t t = 0; t < cfg.horizon && q != game.target(); ++t) {
        const std::size_t a = draw(s, sa(history));
        const std::size_t b = draw(s, sb(history));
        q = draw(s, game.dist(game.nature_of(q, a, b)));
        history.push_back(q);
      }
      hits[r] = q == game.target() ? 1 : 0;
    }
  };
  unsigned threads = cfg.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.runs));
  if (threads <= 1) {
    work(0, cfg.runs);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (cfg.runs + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(cfg.runs, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  Estimate est;
  est.runs = cfg.runs;
  est.p = pairwise_mean(hits);
  est.std_error = std::sqrt(est.p * (1.0 - est.p) / static_cast<double>(cfg.runs));
  return est;
}

Estimate simulate(const ConcurrentGame& game, const PositionalStrategy& sa, const PositionalStrategy& sb,
                  std::size_t from, const SimulationConfig& cfg) {
  validate_strategy(game, sa);
  validate_strategy(game, sb);
  auto pa = [&](const std::vector<std::size_t>& h) -> MixedAction { return sa.choices[h.back()]; };
  auto pb = [&](const std::vector<std::size_t>& h) -> MixedAction { return sb.choices[h.back()]; };
  return simulate(game, HistoryStrategy(pa), HistoryStrategy(pb), from, cfg);
}

Valuation grid_best_positional_a(const ConcurrentGame& game, std::size_t steps, std::size_t cap) {
  if (steps == 0) throw Error(ErrorCode::kInvalidInput, "grid step count must be positive");
  const std::size_t na = game.action_count(Player::kA);
  const auto grid = compositions(na, steps);
  std::vector<std::size_t> free;
  for (std::size_t q = 0; q < game.state_count(); ++q) {
    if (!is_sink(game, q)) free.push_back(q);
  }
  double points = 1.0;
  for (std::size_t i = 0; i < free.size(); ++i) points *= static_cast<double>(grid.size());
  if (points > static_cast<double>(cap)) {
    throw Error(ErrorCode::kCapExceeded, "strategy grid has more than " + std::to_string(cap) + " points");
  }
  PositionalStrategy sa = uniform_strategy(game, Player::kA);
  Valuation best(game.state_count(), 0.0);
  std::vector<std::size_t> idx(free.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < free.size(); ++i) sa.choices[free[i]] = grid[idx[i]];
    const auto v = evaluate_against_best_b(game, sa).values;
    for (std::size_t q = 0; q < v.size(); ++q) best[q] = std::max(best[q], v[q]);
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == grid.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return best;
}

HistoryStrategy KleeneChain::strategy() const {
  const auto stages_copy = stages;
  return [stages_copy](const std::vector<std::size_t>& history) -> MixedAction {
    const std::size_t n = stages_copy.size();
    const std::size_t played = history.size() - 1;
    const std::size_t left = played < n ? n - played : 1;
    return stages_copy[std::max<std::size_t>(left, 1) - 1].choices[history.back()];
  };
}

KleeneChain kleene_strategy_chain(const ConcurrentGame& game, std::size_t n) {
  KleeneChain chain;
  chain.guarantees.push_back(initial_valuation(game));
  for (std::size_t k = 1; k <= n; ++k) {
    chain.stages.push_back(optimal_a_strategy(game, chain.guarantees.back()));
    chain.guarantees.push_back(apply_delta(game, chain.guarantees.back()));
  }
  // Backward induction: with k steps left Player B best-responds to stage k.
  Valuation w = initial_valuation(game);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto mu = lift(game, w);
    Valuation next(game.state_count(), 1.0);
    for (std::size_t q = 0; q < game.state_count(); ++q) {
      if (q == game.target()) continue;
      next[q] = value_of_row_strategy(local_matrix(game, q, mu), chain.stages[k - 1].choices[q]);
    }
    w = std::move(next);
  }
  chain.worst_case = std::move(w);
  return chain;
}

}  // namespace reachgame::oracle
