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

#include <benchmark/benchmark.h>

#include <random>

#include "reachgame/classify.hpp"
#include "reachgame/fixpoint.hpp"
#include "reachgame/matrix_game.hpp"

namespace {

using namespace reachgame;

MatrixGame random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<double> e(n * n);
  for (double& x : e) x = unit(rng);
  return MatrixGame(n, n, std::move(e));
}

// A chain of snowball-like states: each one either loops, moves down the
// chain or falls into the trap, depending on the joint action.
ConcurrentGame snowball_chain(std::size_t length) {
  const std::size_t n = length + 2;  // target 0, trap n-1
  std::vector<std::vector<double>> dist;
  auto dirac = [&](std::size_t q) {
    std::vector<double> d(n, 0.0);
    d[q] = 1.0;
    dist.push_back(d);
  };
  for (std::size_t q = 0; q < n; ++q) dirac(q);
  std::vector<std::size_t> delta;
  for (std::size_t q = 0; q < n; ++q) {
    if (q == 0 || q == n - 1) {
      delta.insert(delta.end(), 4, q);
      continue;
    }
    delta.insert(delta.end(), {q, q - 1, q - 1, n - 1});
  }
  return ConcurrentGame::from_tables(n, 0, 2, 2, std::move(dist), std::move(delta));
}

void BM_SolveMatrix(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto mg = random_matrix(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(mg).value);
}
BENCHMARK(BM_SolveMatrix)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_PatternScan(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto mg = random_matrix(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_support_patterns(mg).patterns.size());
}
BENCHMARK(BM_PatternScan)->Arg(2)->Arg(3)->Arg(4);

void BM_LeastFixedPoint(benchmark::State& state) {
  const auto game = snowball_chain(static_cast<std::size_t>(state.range(0)));
  FixpointOptions opt;
  opt.max_iter = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(least_fixed_point(game, opt).iterations);
}
BENCHMARK(BM_LeastFixedPoint)->Arg(1)->Arg(4)->Arg(16);

void BM_Classify(benchmark::State& state) {
  const auto game = snowball_chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_states(game).submax_states.size());
}
BENCHMARK(BM_Classify)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
