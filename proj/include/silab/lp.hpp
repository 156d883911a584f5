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

#ifndef SILAB_LP_HPP_
#define SILAB_LP_HPP_

// Dense two-phase simplex for small linear programs (up to a few hundred
// rows and columns). Pivoting follows Bland's rule, so the result is a
// deterministic function of the input.

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

namespace silab::lp {

enum class Sense { kMinimize, kMaximize };

enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string_view to_string(Status status);

/// optimize objective . x
/// subject to  eq_lhs x == eq_rhs,  ub_lhs x <= ub_rhs,  x >= lower_bounds.
/// A lower bound of -infinity makes the variable free. Empty lower_bounds
/// means every variable is nonnegative.
struct LinearProgram {
  Sense sense = Sense::kMinimize;
  std::vector<double> objective;
  std::vector<std::vector<double>> eq_lhs;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> ub_lhs;
  std::vector<double> ub_rhs;
  std::vector<double> lower_bounds;

  explicit LinearProgram(std::size_t variables = 0, Sense s = Sense::kMinimize)
      : sense(s), objective(variables, 0.0) {}

  std::size_t variables() const { return objective.size(); }

  void add_equality(std::vector<double> row, double rhs);
  void add_upper(std::vector<double> row, double rhs);

  /// Throws ValidationError on dimension mismatch or non-finite coefficients.
  void validate() const;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  std::size_t max_iterations = 200000;
};

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<double> x;  // empty unless optimal
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Returns an optimal basic feasible solution, or the infeasible/unbounded
/// status. Throws SolverError if the iteration limit is reached.
Solution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace silab::lp

#endif  // SILAB_LP_HPP_
