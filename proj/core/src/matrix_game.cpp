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

#include "reachgame/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <iomanip>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "reachgame/errors.hpp"
#include "reachgame/lp.hpp"

namespace reachgame {

namespace {

constexpr double kEntrySlack = 1e-12;
constexpr double kMaxDualityGap = 1e-9;
constexpr double kPureTolerance = 1e-12;

MixedAction clean_distribution(std::vector<double> x) {
  double total = 0.0;
  for (double& p : x) {
    if (p < kStructuralZero) p = 0.0;
    total += p;
  }
  for (double& p : x) p /= total;
  return x;
}

// Solves sum_{i in own} s_i M(i, j) = v for j in other, sum s = 1, on the
// supports found by the simplex. Square systems only; nullopt when singular
// or when the solution leaves the simplex.
std::optional<MixedAction> equalize(std::size_t size, const std::vector<std::size_t>& own,
                                    const std::vector<std::size_t>& other,
                                    const std::function<double(std::size_t, std::size_t)>& entry) {
  const std::size_t k = own.size();
  if (other.size() != k) return std::nullopt;
  // Unknowns s_0..s_{k-1}, v; rows: k equalities then the normalization.
  std::vector<std::vector<double>> a(k + 1, std::vector<double>(k + 2, 0.0));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t i = 0; i < k; ++i) a[r][i] = entry(own[i], other[r]);
    a[r][k] = -1.0;
  }
  for (std::size_t i = 0; i < k; ++i) a[k][i] = 1.0;
  a[k][k + 1] = 1.0;
  for (std::size_t col = 0; col <= k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r <= k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return std::nullopt;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r <= k; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t j = col; j <= k + 1; ++j) a[r][j] -= f * a[col][j];
    }
  }
  MixedAction out(size, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const double x = a[i][k + 1] / a[i][i];
    if (x < 0.0) return std::nullopt;
    out[own[i]] = x;
  }
  double total = 0.0;
  for (double x : out) total += x;
  if (std::abs(total - 1.0) > 1e-9) return std::nullopt;
  return clean_distribution(std::move(out));
}

}  // namespace

MatrixGame::MatrixGame(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::kInvalidInput, "matrix game needs a row and a column");
  if (entries_.size() != rows_ * cols_) throw Error(ErrorCode::kDimensionMismatch, "matrix entries do not match shape");
  for (double& e : entries_) {
    if (!(e >= -kEntrySlack && e <= 1.0 + kEntrySlack)) {
      throw Error(ErrorCode::kInvalidInput, "matrix entry outside [0,1]");
    }
    e = std::clamp(e, 0.0, 1.0);
  }
}

MatrixGame::MatrixGame(std::initializer_list<std::initializer_list<double>> rows)
    : MatrixGame(
          rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(), [&] {
            std::vector<double> e;
            const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
            for (const auto& r : rows) {
              if (r.size() != width) throw Error(ErrorCode::kDimensionMismatch, "ragged matrix");
              e.insert(e.end(), r.begin(), r.end());
            }
            return e;
          }()) {}

MatrixGame MatrixGame::from_form(const GameForm& form, const Valuation& outcome_values) {
  if (outcome_values.size() != form.outcome_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "outcome valuation does not match the game form");
  }
  std::vector<double> e;
  e.reserve(form.rows() * form.cols());
  for (std::size_t a = 0; a < form.rows(); ++a) {
    for (std::size_t b = 0; b < form.cols(); ++b) e.push_back(outcome_values[form.outcome(a, b)]);
  }
  return MatrixGame(form.rows(), form.cols(), std::move(e));
}

double MatrixGame::min_entry() const { return *std::min_element(entries_.begin(), entries_.end()); }
double MatrixGame::max_entry() const { return *std::max_element(entries_.begin(), entries_.end()); }

double payoff(const MatrixGame& mg, const MixedAction& sa, const MixedAction& sb) {
  if (sa.size() != mg.rows() || sb.size() != mg.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy sizes do not match the matrix");
  }
  double out = 0.0;
  for (std::size_t a = 0; a < mg.rows(); ++a) {
    if (sa[a] == 0.0) continue;
    for (std::size_t b = 0; b < mg.cols(); ++b) out += sa[a] * sb[b] * mg(a, b);
  }
  return out;
}

std::vector<double> column_payoffs(const MatrixGame& mg, const MixedAction& sa) {
  if (sa.size() != mg.rows()) throw Error(ErrorCode::kDimensionMismatch, "row strategy size mismatch");
  std::vector<double> out(mg.cols(), 0.0);
  for (std::size_t a = 0; a < mg.rows(); ++a) {
    if (sa[a] == 0.0) continue;
    for (std::size_t b = 0; b < mg.cols(); ++b) out[b] += sa[a] * mg(a, b);
  }
  return out;
}

std::vector<double> row_payoffs(const MatrixGame& mg, const MixedAction& sb) {
  if (sb.size() != mg.cols()) throw Error(ErrorCode::kDimensionMismatch, "column strategy size mismatch");
  std::vector<double> out(mg.rows(), 0.0);
  for (std::size_t a = 0; a < mg.rows(); ++a) {
    for (std::size_t b = 0; b < mg.cols(); ++b) out[a] += sb[b] * mg(a, b);
  }
  return out;
}

double value_of_row_strategy(const MatrixGame& mg, const MixedAction& sa) {
  const auto p = column_payoffs(mg, sa);
  return *std::min_element(p.begin(), p.end());
}

double value_of_col_strategy(const MatrixGame& mg, const MixedAction& sb) {
  const auto p = row_payoffs(mg, sb);
  return *std::max_element(p.begin(), p.end());
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

// max sum y s.t. A y <= 1, y >= 0 for a positive A, by Bland's rule in exact
// arithmetic. Returns y / sum y.
MixedAction exact_packing(const std::vector<std::vector<Rational>>& a) {
  const std::size_t m = a.size();
  const std::size_t n = a.front().size();
  const std::size_t w = n + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(w + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    std::copy(a[r].begin(), a[r].end(), t[r].begin());
    t[r][n + r] = 1;
    t[r][w] = 1;
    basis[r] = n + r;
  }
  std::vector<Rational> cost(w + 1);
  for (std::size_t j = 0; j < n; ++j) cost[j] = -1;
  while (true) {
    std::size_t enter = w;
    for (std::size_t j = 0; j < w && enter == w; ++j) {
      if (cost[j] < 0) enter = j;
    }
    if (enter == w) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][w] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    // A positive matrix keeps the program bounded, so a leaving row exists.
    const Rational p = t[leave][enter];
    for (auto& v : t[leave]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= w; ++j) t[i][j] -= f * t[leave][j];
    }
    const Rational f = cost[enter];
    for (std::size_t j = 0; j <= w; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  std::vector<Rational> y(n);
  Rational total;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) {
      y[basis[i]] = t[i][w];
      total += t[i][w];
    }
  }
  MixedAction out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = Rational(y[k] / total).convert_to<double>();
  return out;
}

// Polishes a candidate pair, prefers pure optima and certifies both bounds.
MatrixSolution finish(const MatrixGame& mg, MixedAction row, MixedAction col) {
  const std::size_t m = mg.rows();
  const std::size_t n = mg.cols();
  MatrixSolution sol;
  sol.row_strategy = std::move(row);
  sol.col_strategy = std::move(col);
  double lower = value_of_row_strategy(mg, sol.row_strategy);
  double upper = value_of_col_strategy(mg, sol.col_strategy);

  // Polishing on the simplex supports recovers exact equalizers such as 1/2
  // that the normalized simplex output misses by an ulp.
  const auto rows_used = support_of(sol.row_strategy);
  const auto cols_used = support_of(sol.col_strategy);
  const auto at = [&](std::size_t a, std::size_t b) { return mg(a, b); };
  if (const auto x = equalize(m, rows_used, cols_used, at)) {
    const double v = value_of_row_strategy(mg, *x);
    if (v >= lower) {
      sol.row_strategy = *x;
      lower = v;
    }
  }
  if (const auto y = equalize(n, cols_used, rows_used, [&](std::size_t b, std::size_t a) { return at(a, b); })) {
    const double v = value_of_col_strategy(mg, *y);
    if (v <= upper) {
      sol.col_strategy = *y;
      upper = v;
    }
  }

  for (std::size_t a = 0; a < m; ++a) {
    double worst = 1.0;
    for (std::size_t b = 0; b < n; ++b) worst = std::min(worst, mg(a, b));
    if (worst >= upper - kPureTolerance) {
      sol.row_strategy = pure_action(m, a);
      lower = worst;
      break;
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    double best = 0.0;
    for (std::size_t a = 0; a < m; ++a) best = std::max(best, mg(a, b));
    if (best <= lower + kPureTolerance) {
      sol.col_strategy = pure_action(n, b);
      upper = best;
      break;
    }
  }
  sol.duality_gap = std::max(0.0, upper - lower);
  sol.value = lower;
  return sol;
}

}  // namespace

MatrixSolution solve(const MatrixGame& mg) {
  const std::size_t m = mg.rows();
  const std::size_t n = mg.cols();

  // Classic reformulation: for a positive matrix A, max sum y s.t. A y <= 1
  // gives the column player's strategy as y / sum y, and the row player's
  // strategy is the column strategy of c - A^T. Both programs start from a
  // feasible all-slack basis.
  const auto positive_program = [](std::size_t rows, std::size_t cols, auto entry) {
    lp::Problem p;
    p.variables = cols;
    p.objective.assign(cols, 1.0);
    for (std::size_t r = 0; r < rows; ++r) {
      lp::Constraint c{std::vector<double>(cols, 0.0), lp::Sense::kLessEqual, 1.0};
      for (std::size_t k = 0; k < cols; ++k) c.coeffs[k] = entry(r, k);
      p.constraints.push_back(std::move(c));
    }
    return lp::solve(p);
  };
  // Optimal strategies are invariant under positive affine maps, so stretch
  // the entries over [0,1] first; near-constant matrices otherwise lose their
  // differences to cancellation.
  const double lo = mg.min_entry();
  const double hi = mg.max_entry();
  const double span = hi - lo;
  const auto unit = [&](std::size_t a, std::size_t b) { return span > 0.0 ? (mg(a, b) - lo) / span : 0.0; };
  const auto cr = positive_program(m, n, [&](std::size_t a, std::size_t b) { return 1.0 + unit(a, b); });
  const auto rr = positive_program(n, m, [&](std::size_t b, std::size_t a) { return 2.0 - unit(a, b); });
  if (rr.status == lp::Status::kOptimal && cr.status == lp::Status::kOptimal) {
    auto sol = finish(mg, clean_distribution(rr.x), clean_distribution(cr.x));
    if (sol.duality_gap <= kMaxDualityGap) return sol;
  }

  // Floating-point simplex lost the optimum; redo both programs exactly.
  // Entries are dyadic, so the shifted matrices are exact.
  std::vector<std::vector<Rational>> col_program(m, std::vector<Rational>(n));
  std::vector<std::vector<Rational>> row_program(n, std::vector<Rational>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      col_program[a][b] = Rational(mg(a, b)) - Rational(lo) + 1;
      row_program[b][a] = Rational(hi) - Rational(mg(a, b)) + 1;
    }
  }
  auto sol = finish(mg, clean_distribution(exact_packing(row_program)),
                    clean_distribution(exact_packing(col_program)));
  if (sol.duality_gap > kMaxDualityGap) {
    std::ostringstream os;
    os << "duality gap " << sol.duality_gap << " on a " << m << "x" << n << " matrix game";
    throw Error(ErrorCode::kSolverDidNotConverge, os.str());
  }
  return sol;
}

std::vector<std::size_t> optimal_actions(const MatrixGame& mg, const MixedAction& sa, double theta_eq) {
  const auto p = column_payoffs(mg, sa);
  const double v = *std::min_element(p.begin(), p.end());
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (p[b] <= v + theta_eq) out.push_back(b);
  }
  return out;
}

namespace {

// `value` is a certified lower value, so optimality needs no theta_eq slack;
// a slack of theta_eq would let a dominated row carry mass theta_eq / gap.
constexpr double kOptimalitySlack = 1e-10;

// max s over sigma supported on `rows` with sigma_a >= s, every column paying
// at least value - kOptimalitySlack, columns in `tight` at most
// value + theta_eq - kOptimalitySlack and columns outside `tight` at least value + s. `tight == nullptr` drops the
// tightness split (used as a per-support pre-filter).
lp::Result max_slack_program(const MatrixGame& mg, const std::vector<std::size_t>& rows,
                             const std::vector<bool>* tight, double value, double theta_eq) {
  const std::size_t k = rows.size();
  lp::Problem p;
  p.variables = k + 1;
  p.objective.assign(k + 1, 0.0);
  p.objective[k] = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    lp::Constraint c{std::vector<double>(k + 1, 0.0), lp::Sense::kGreaterEqual, 0.0};
    c.coeffs[i] = 1.0;
    c.coeffs[k] = -1.0;
    p.constraints.push_back(std::move(c));
  }
  {
    lp::Constraint c{std::vector<double>(k + 1, 1.0), lp::Sense::kEqual, 1.0};
    c.coeffs[k] = 0.0;
    p.constraints.push_back(std::move(c));
  }
  {
    lp::Constraint c{std::vector<double>(k + 1, 0.0), lp::Sense::kLessEqual, 1.0};
    c.coeffs[k] = 1.0;
    p.constraints.push_back(std::move(c));
  }
  for (std::size_t b = 0; b < mg.cols(); ++b) {
    std::vector<double> coeffs(k + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) coeffs[i] = mg(rows[i], b);
    p.constraints.push_back({coeffs, lp::Sense::kGreaterEqual, value - kOptimalitySlack});
    if (tight == nullptr) continue;
    if ((*tight)[b]) {
      // Pulled inside by the same slack so round-off cannot push a witness
      // past value + theta_eq.
      p.constraints.push_back({coeffs, lp::Sense::kLessEqual, value + theta_eq - kOptimalitySlack});
    } else {
      coeffs[k] = -1.0;
      p.constraints.push_back({coeffs, lp::Sense::kGreaterEqual, value});
    }
  }
  return lp::solve(p);
}

// Optima at or below theta_eq are round-off around an impossible pattern,
// not near misses.
void note_margin(PatternScan& scan, double slack, const Tolerances& tol) {
  if (slack <= tol.theta_eq) return;
  scan.margin = std::min(scan.margin, std::abs(slack - tol.theta_strict));
}

}  // namespace

PatternScan scan_support_patterns(const MatrixGame& mg, const Tolerances& tol) {
  const std::size_t m = mg.rows();
  const std::size_t n = mg.cols();
  if (m > tol.pattern_cap || n > tol.pattern_cap) {
    throw Error(ErrorCode::kCapExceeded, std::to_string(m) + "x" + std::to_string(n) +
                                             " matrix exceeds the pattern enumeration cap of " +
                                             std::to_string(tol.pattern_cap));
  }
  PatternScan scan;
  scan.value = solve(mg).value;
  for (std::size_t smask = 1; smask < (std::size_t{1} << m); ++smask) {
    std::vector<std::size_t> rows;
    for (std::size_t a = 0; a < m; ++a) {
      if (smask & (std::size_t{1} << a)) rows.push_back(a);
    }
    const auto pre = max_slack_program(mg, rows, nullptr, scan.value, tol.theta_eq);
    if (pre.status != lp::Status::kOptimal) continue;
    note_margin(scan, pre.objective, tol);
    if (pre.objective <= tol.theta_strict) continue;

    for (std::size_t tmask = 1; tmask < (std::size_t{1} << n); ++tmask) {
      std::vector<bool> tight(n);
      for (std::size_t b = 0; b < n; ++b) tight[b] = (tmask & (std::size_t{1} << b)) != 0;
      const auto res = max_slack_program(mg, rows, &tight, scan.value, tol.theta_eq);
      if (res.status != lp::Status::kOptimal) continue;
      note_margin(scan, res.objective, tol);
      if (res.objective <= tol.theta_strict) continue;
      SupportPattern pat;
      pat.rows = rows;
      for (std::size_t b = 0; b < n; ++b) {
        if (tight[b]) pat.tight_columns.push_back(b);
      }
      pat.witness.assign(m, 0.0);
      double total = 0.0;
      for (std::size_t i = 0; i < rows.size(); ++i) total += res.x[i];
      for (std::size_t i = 0; i < rows.size(); ++i) pat.witness[rows[i]] = res.x[i] / total;
      pat.slack = res.objective;
      scan.patterns.push_back(std::move(pat));
    }
  }
  return scan;
}

std::vector<SupportPattern> enumerate_support_patterns(const MatrixGame& mg, const Tolerances& tol) {
  return scan_support_patterns(mg, tol).patterns;
}

bool verify_pattern(const MatrixGame& mg, const SupportPattern& pattern, const Tolerances& tol) {
  constexpr double kSlop = 1e-9;
  if (pattern.witness.size() != mg.rows()) return false;
  if (!(pattern.slack > tol.theta_strict)) return false;
  double total = 0.0;
  for (std::size_t a = 0; a < mg.rows(); ++a) {
    const bool in_support = std::find(pattern.rows.begin(), pattern.rows.end(), a) != pattern.rows.end();
    const double p = pattern.witness[a];
    if (in_support && p < pattern.slack - kSlop) return false;
    if (!in_support && p != 0.0) return false;
    total += p;
  }
  if (std::abs(total - 1.0) > kDistributionTolerance) return false;
  const double value = solve(mg).value;
  const auto pay = column_payoffs(mg, pattern.witness);
  for (std::size_t b = 0; b < mg.cols(); ++b) {
    if (pay[b] < value - tol.theta_eq - kSlop) return false;
    const bool in_t = std::find(pattern.tight_columns.begin(), pattern.tight_columns.end(), b) !=
                      pattern.tight_columns.end();
    if (in_t && pay[b] > value + tol.theta_eq + kSlop) return false;
    if (!in_t && pay[b] < value + pattern.slack - kSlop) return false;
  }
  return true;
}

std::string format_matrix(const MatrixGame& mg, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision);
  const int width = precision + 3;
  for (std::size_t a = 0; a < mg.rows(); ++a) {
    os << "[";
    for (std::size_t b = 0; b < mg.cols(); ++b) {
      if (b > 0) os << ' ';
      os << std::setw(width) << mg(a, b);
    }
    os << " ]\n";
  }
  return os.str();
}

}  // namespace reachgame
