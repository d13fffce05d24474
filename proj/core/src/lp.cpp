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

#include "reachgame/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reachgame/errors.hpp"

namespace reachgame::lp {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kFeasibilityEps = 1e-9;
constexpr double kCostEps = 1e-12;
constexpr std::size_t kMaxPivots = 100000;
constexpr std::size_t kStablePivots = 1000;

// Tableau rows hold [coefficients | rhs]; `cost` is the reduced-cost row of a
// maximization, with cost[width] the current objective value.
struct Tableau {
  std::size_t width = 0;  // number of columns excluding rhs
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> basis;
  std::vector<double> cost;
  std::vector<bool> banned;  // columns never allowed to enter

  void pivot(std::size_t r, std::size_t s) {
    auto& pr = rows[r];
    const double p = pr[s];
    for (double& v : pr) v /= p;
    pr[s] = 1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const double f = rows[i][s];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= width; ++j) rows[i][j] -= f * pr[j];
      rows[i][s] = 0.0;
    }
    const double f = cost[s];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= width; ++j) cost[j] -= f * pr[j];
      cost[s] = 0.0;
    }
    basis[r] = s;
  }

  // Sets the reduced-cost row for maximizing c . x given the current basis.
  void price(const std::vector<double>& c) {
    cost.assign(width + 1, 0.0);
    for (std::size_t j = 0; j < width; ++j) cost[j] = -c[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double f = cost[basis[i]];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= width; ++j) cost[j] -= f * rows[i][j];
    }
  }

  // Ratio test for column `enter`; ties go to the lowest basic index.
  std::size_t leaving_row(std::size_t enter) const {
    std::size_t leave = rows.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double a = rows[i][enter];
      if (a <= kPivotEps) continue;
      const double ratio = rows[i][width] / a;
      if (ratio < best - 1e-12 ||
          (std::abs(ratio - best) <= 1e-12 && leave < rows.size() && basis[i] < basis[leave])) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    return leave;
  }

  // Among improving columns the one with the largest pivot element enters, so
  // degenerate rows with tiny entries are not pivoted on while a stable choice
  // exists. After kStablePivots pivots Bland's rule (lowest index) takes over,
  // which cannot cycle.
  Status run(std::size_t& pivots) {
    std::size_t local = 0;
    while (true) {
      const bool bland = local >= kStablePivots;
      std::size_t enter = width;
      std::size_t leave = rows.size();
      double best_pivot = -1.0;
      for (std::size_t j = 0; j < width; ++j) {
        if (banned[j] || cost[j] >= -kCostEps) continue;
        const std::size_t r = leaving_row(j);
        if (r == rows.size()) return Status::kUnbounded;
        if (rows[r][j] > best_pivot) {
          best_pivot = rows[r][j];
          enter = j;
          leave = r;
        }
        if (bland) break;
      }
      if (enter == width) return Status::kOptimal;
      pivot(leave, enter);
      ++local;
      if (++pivots > kMaxPivots) return Status::kIterationLimit;
    }
  }
};

}  // namespace

Result solve(const Problem& problem) {
  const std::size_t n = problem.variables;
  if (problem.objective.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "LP objective length differs from variable count");
  }
  for (const auto& c : problem.constraints) {
    if (c.coeffs.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "LP constraint length differs from variable count");
    }
  }

  // Normalize rows to non-negative right-hand sides.
  struct Row {
    std::vector<double> coeffs;
    Sense sense;
    double rhs;
  };
  std::vector<Row> normalized;
  for (const auto& c : problem.constraints) {
    Row r{c.coeffs, c.sense, c.rhs};
    if (r.rhs < 0.0) {
      for (double& v : r.coeffs) v = -v;
      r.rhs = -r.rhs;
      if (r.sense == Sense::kLessEqual) {
        r.sense = Sense::kGreaterEqual;
      } else if (r.sense == Sense::kGreaterEqual) {
        r.sense = Sense::kLessEqual;
      }
    }
    normalized.push_back(std::move(r));
  }

  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (const auto& r : normalized) {
    if (r.sense != Sense::kEqual) ++slack_count;
    if (r.sense != Sense::kLessEqual) ++artificial_count;
  }
  const std::size_t first_artificial = n + slack_count;
  Tableau t;
  t.width = n + slack_count + artificial_count;
  t.banned.assign(t.width, false);
  std::size_t next_slack = n;
  std::size_t next_art = first_artificial;
  for (const auto& r : normalized) {
    std::vector<double> row(t.width + 1, 0.0);
    std::copy(r.coeffs.begin(), r.coeffs.end(), row.begin());
    row[t.width] = r.rhs;
    std::size_t basic = 0;
    if (r.sense == Sense::kLessEqual) {
      row[next_slack] = 1.0;
      basic = next_slack++;
    } else if (r.sense == Sense::kGreaterEqual) {
      row[next_slack++] = -1.0;
      row[next_art] = 1.0;
      basic = next_art++;
    } else {
      row[next_art] = 1.0;
      basic = next_art++;
    }
    t.rows.push_back(std::move(row));
    t.basis.push_back(basic);
  }

  Result result;
  if (artificial_count > 0) {
    std::vector<double> phase1(t.width, 0.0);
    for (std::size_t j = first_artificial; j < t.width; ++j) phase1[j] = -1.0;
    t.price(phase1);
    Status s = t.run(result.pivots);
    if (s == Status::kIterationLimit) {
      result.status = s;
      return result;
    }
    if (t.cost[t.width] < -kFeasibilityEps) {
      result.status = Status::kInfeasible;
      return result;
    }
    // Drive remaining artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::abs(t.rows[i][j]) > kPivotEps) {
          col = j;
          break;
        }
      }
      if (col == first_artificial) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      t.pivot(i, col);
      ++i;
    }
    for (std::size_t j = first_artificial; j < t.width; ++j) t.banned[j] = true;
  }

  std::vector<double> c(t.width, 0.0);
  for (std::size_t j = 0; j < n; ++j) c[j] = problem.maximize ? problem.objective[j] : -problem.objective[j];
  t.price(c);
  result.status = t.run(result.pivots);
  if (result.status != Status::kOptimal) return result;

  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < n) result.x[t.basis[i]] = std::max(0.0, t.rows[i][t.width]);
  }
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += problem.objective[j] * result.x[j];
  result.objective = obj;
  return result;
}

}  // namespace reachgame::lp
