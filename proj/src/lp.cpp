// Copyright 2026 The silab Authors
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

#include "silab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "silab/error.hpp"

namespace silab::lp {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Standard-form tableau: rows [0, m) are constraints, row m is the reduced
// cost row. The last column holds the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), width_(cols + 1), data_((rows + 1) * (cols + 1), 0.0),
        basis_(rows, kNone) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * width_ + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    double* prow = &data_[r * width_];
    const double inv = 1.0 / prow[c];
    for (std::size_t k = 0; k < width_; ++k) prow[k] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = &data_[i * width_];
      const double factor = row[c];
      if (factor == 0.0) continue;
      for (std::size_t k = 0; k < width_; ++k) row[k] -= factor * prow[k];
      row[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Reduced costs for `costs` under the current basis.
  void price(const std::vector<double>& costs) {
    for (std::size_t c = 0; c <= cols_; ++c) at(rows_, c) = c < cols_ ? costs[c] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = costs[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(rows_, c) -= cb * at(r, c);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

enum class Outcome { kOptimal, kUnbounded };

Outcome run_simplex(Tableau& t, const std::vector<bool>& banned, double cost_tol,
                    const SimplexOptions& options, std::size_t& iterations) {
  auto& basis = t.basis();
  while (true) {
    if (++iterations > options.max_iterations) {
      throw SolverError("simplex iteration limit reached (" +
                        std::to_string(options.max_iterations) + ")");
    }
    // Bland: lowest-index improving column.
    std::size_t enter = kNone;
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (!banned[c] && t.cost(c) < -cost_tol) {
        enter = c;
        break;
      }
    }
    if (enter == kNone) return Outcome::kOptimal;

    std::size_t leave = kNone;
    double best = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= options.pivot_tolerance) continue;
      const double ratio = t.rhs(r) / a;
      if (leave == kNone) {
        leave = r;
        best = ratio;
        continue;
      }
      const double slack = 1e-12 * (1.0 + std::abs(best));
      if (ratio < best - slack || (ratio <= best + slack && basis[r] < basis[leave])) {
        leave = r;
        best = std::min(best, ratio);
      }
    }
    if (leave == kNone) return Outcome::kUnbounded;
    t.pivot(leave, enter);
  }
}

struct ColumnMap {
  std::size_t positive = kNone;
  std::size_t negative = kNone;  // set for free variables
  double shift = 0.0;
};

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + " has a non-finite entry");
  }
}

}  // namespace

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
  }
  return "unknown";
}

void LinearProgram::add_equality(std::vector<double> row, double rhs) {
  eq_lhs.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void LinearProgram::add_upper(std::vector<double> row, double rhs) {
  ub_lhs.push_back(std::move(row));
  ub_rhs.push_back(rhs);
}

void LinearProgram::validate() const {
  const std::size_t n = variables();
  if (n == 0) throw ValidationError("linear program has no variables");
  check_finite(objective, "objective");
  if (eq_lhs.size() != eq_rhs.size()) throw ValidationError("equality rows and rhs differ in size");
  if (ub_lhs.size() != ub_rhs.size()) throw ValidationError("inequality rows and rhs differ in size");
  for (const auto& row : eq_lhs) {
    if (row.size() != n) throw ValidationError("equality row has wrong width");
    check_finite(row, "equality row");
  }
  for (const auto& row : ub_lhs) {
    if (row.size() != n) throw ValidationError("inequality row has wrong width");
    check_finite(row, "inequality row");
  }
  check_finite(eq_rhs, "equality rhs");
  check_finite(ub_rhs, "inequality rhs");
  if (!lower_bounds.empty()) {
    if (lower_bounds.size() != n) throw ValidationError("lower bounds have wrong size");
    for (double lb : lower_bounds) {
      if (std::isnan(lb) || lb == std::numeric_limits<double>::infinity()) {
        throw ValidationError("lower bound must be finite or -infinity");
      }
    }
  }
}

Solution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  const std::size_t n = lp.variables();
  const std::size_t m_eq = lp.eq_lhs.size();
  const std::size_t m_ub = lp.ub_lhs.size();
  const std::size_t m = m_eq + m_ub;

  // Column layout: structural columns, then one slack per inequality row,
  // then one artificial per row that needs it.
  std::vector<ColumnMap> map(n);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lb = lp.lower_bounds.empty() ? 0.0 : lp.lower_bounds[j];
    map[j].positive = cols++;
    if (std::isinf(lb)) {
      map[j].negative = cols++;
    } else {
      map[j].shift = lb;
    }
  }
  const std::size_t slack_begin = cols;
  cols += m_ub;

  std::vector<std::vector<double>> rows(m, std::vector<double>(cols, 0.0));
  std::vector<double> rhs(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const bool is_eq = r < m_eq;
    const auto& src = is_eq ? lp.eq_lhs[r] : lp.ub_lhs[r - m_eq];
    double b = is_eq ? lp.eq_rhs[r] : lp.ub_rhs[r - m_eq];
    for (std::size_t j = 0; j < n; ++j) {
      const double a = src[j];
      rows[r][map[j].positive] = a;
      if (map[j].negative != kNone) rows[r][map[j].negative] = -a;
      b -= a * map[j].shift;
    }
    if (!is_eq) rows[r][slack_begin + (r - m_eq)] = 1.0;
    rhs[r] = b;
  }

  std::vector<std::size_t> initial_basis(m, kNone);
  std::size_t artificials = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (rhs[r] < 0.0) {
      for (double& a : rows[r]) a = -a;
      rhs[r] = -rhs[r];
    }
    if (r >= m_eq && rows[r][slack_begin + (r - m_eq)] > 0.0) {
      initial_basis[r] = slack_begin + (r - m_eq);
    } else {
      ++artificials;
    }
  }
  const std::size_t art_begin = cols;
  const std::size_t total = cols + artificials;

  Tableau t(m, total);
  std::size_t next_art = art_begin;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < cols; ++c) t.at(r, c) = rows[r][c];
    t.rhs(r) = rhs[r];
    if (initial_basis[r] == kNone) {
      t.at(r, next_art) = 1.0;
      t.basis()[r] = next_art++;
    } else {
      t.basis()[r] = initial_basis[r];
    }
  }

  Solution sol;
  std::vector<bool> banned(total, false);

  if (artificials > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t c = art_begin; c < total; ++c) phase1[c] = 1.0;
    t.price(phase1);
    run_simplex(t, banned, 1e-12, options, sol.iterations);
    double infeasibility = 0.0;
    double scale = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      scale = std::max(scale, std::abs(rhs[r]));
      if (t.basis()[r] >= art_begin) infeasibility += t.rhs(r);
    }
    if (infeasibility > options.feasibility_tolerance * scale) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    // Drive remaining (zero-valued) artificials out of the basis. Rows with
    // no usable pivot are redundant and keep their artificial at zero.
    for (std::size_t r = 0; r < m; ++r) {
      if (t.basis()[r] < art_begin) continue;
      for (std::size_t c = 0; c < art_begin; ++c) {
        if (std::abs(t.at(r, c)) > options.pivot_tolerance) {
          t.pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t c = art_begin; c < total; ++c) banned[c] = true;
  }

  std::vector<double> costs(total, 0.0);
  double cost_scale = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = lp.sense == Sense::kMaximize ? -lp.objective[j] : lp.objective[j];
    cost_scale = std::max(cost_scale, std::abs(c));
    costs[map[j].positive] = c;
    if (map[j].negative != kNone) costs[map[j].negative] = -c;
  }
  t.price(costs);
  const Outcome outcome =
      run_simplex(t, banned, options.feasibility_tolerance * cost_scale, options, sol.iterations);
  if (outcome == Outcome::kUnbounded) {
    sol.status = Status::kUnbounded;
    return sol;
  }

  std::vector<double> y(total, 0.0);
  for (std::size_t r = 0; r < m; ++r) y[t.basis()[r]] = t.rhs(r);
  sol.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = map[j].shift + y[map[j].positive];
    if (map[j].negative != kNone) v -= y[map[j].negative];
    sol.x[j] = v;
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  sol.status = Status::kOptimal;
  return sol;
}

}  // namespace silab::lp
