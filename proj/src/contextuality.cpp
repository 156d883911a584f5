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

#include "silab/contextuality.hpp"

#include <algorithm>
#include <utility>

#include "silab/error.hpp"

namespace silab::ks {
namespace {

using pauli::identity;
using pauli::kron;
using pauli::sigma_x;
using pauli::sigma_y;
using pauli::sigma_z;

// The three observables on line `k`: a row when is_row, else a column.
std::array<const Matrix*, 3> line(const OperatorSquare& sq, bool is_row, int k) {
  if (is_row) return {&sq.ops[k][0], &sq.ops[k][1], &sq.ops[k][2]};
  return {&sq.ops[0][k], &sq.ops[1][k], &sq.ops[2][k]};
}

std::array<int, 3> line_values(const Assignment& v, bool is_row, int k) {
  if (is_row) return v[k];
  return {v[0][k], v[1][k], v[2][k]};
}

std::string line_name(bool is_row, int k) {
  return std::string(is_row ? "row " : "column ") + std::to_string(k + 1);
}

}  // namespace

int identity_sign(const Matrix& product, double tol) {
  for (int sign : {1, -1}) {
    if (pauli::max_abs(product - static_cast<double>(sign) * Matrix::Identity()) < tol) return sign;
  }
  return 0;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

OperatorSquare build_square() {
  OperatorSquare sq;
  sq.ops = {{{kron(identity(), sigma_z()), kron(sigma_z(), identity()), kron(sigma_z(), sigma_z())},
             {kron(sigma_x(), identity()), kron(identity(), sigma_x()), kron(sigma_x(), sigma_x())},
             {kron(sigma_x(), sigma_z()), kron(sigma_z(), sigma_x()), kron(sigma_y(), sigma_y())}}};
  for (int k = 0; k < 3; ++k) {
    for (bool is_row : {true, false}) {
      const auto ops = line(sq, is_row, k);
      const int sign = identity_sign(*ops[0] * *ops[1] * *ops[2]);
      if (sign == 0) throw SolverError(line_name(is_row, k) + " product is not +/-I");
      (is_row ? sq.row_targets : sq.col_targets)[k] = sign;
    }
  }
  return sq;
}

AlgebraReport verify_algebra(const OperatorSquare& sq, double tol) {
  AlgebraReport report;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const Matrix& m = sq.ops[r][c];
      const double herm = pauli::max_abs(m - m.adjoint());
      const double sq_dev = pauli::max_abs(m * m - Matrix::Identity());
      report.hermitian_max = std::max(report.hermitian_max, herm);
      report.square_max = std::max(report.square_max, sq_dev);
      const std::string cell = "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
      if (herm >= tol) report.violations.push_back(cell + " is not Hermitian");
      if (sq_dev >= tol) report.violations.push_back(cell + " does not square to I");
    }
  }
  for (int k = 0; k < 3; ++k) {
    for (bool is_row : {true, false}) {
      const auto ops = line(sq, is_row, k);
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          const double d = pauli::max_abs(commutator(*ops[i], *ops[j]));
          report.commutator_max = std::max(report.commutator_max, d);
          if (d >= tol) {
            report.violations.push_back(line_name(is_row, k) + ": members " +
                                        std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                        " do not commute");
          }
        }
      }
      const int target = (is_row ? sq.row_targets : sq.col_targets)[k];
      const double dev = pauli::max_abs(*ops[0] * *ops[1] * *ops[2] -
                                        static_cast<double>(target) * Matrix::Identity());
      report.target_max = std::max(report.target_max, dev);
      if (dev >= tol) report.violations.push_back(line_name(is_row, k) + " product misses target");
    }
  }
  return report;
}

int functional_composition_check(const Matrix& a, const Matrix& b, int va, int vb) {
  if ((va != 1 && va != -1) || (vb != 1 && vb != -1)) {
    throw ValidationError("assigned values must be +1 or -1");
  }
  if (pauli::max_abs(commutator(a, b)) >= kAlgebraTolerance) {
    throw ValidationError("functional composition needs commuting observables");
  }
  return va * vb;
}

Assignment assignment_from_code(unsigned code) {
  if (code >= 512) throw IndexError("assignment code must be below 512");
  Assignment v{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) v[r][c] = ((code >> (3 * r + c)) & 1U) ? -1 : 1;
  }
  return v;
}

bool is_consistent(const OperatorSquare& sq, const ConstraintSet& constraints,
                   const Assignment& v) {
  for (int k = 0; k < 3; ++k) {
    for (bool is_row : {true, false}) {
      if (!(is_row ? constraints.rows : constraints.cols)[k]) continue;
      const auto ops = line(sq, is_row, k);
      const auto vals = line_values(v, is_row, k);
      const Matrix ab = *ops[0] * *ops[1];
      const int v_ab = functional_composition_check(*ops[0], *ops[1], vals[0], vals[1]);
      const int v_abc = functional_composition_check(ab, *ops[2], v_ab, vals[2]);
      if (v_abc != (is_row ? sq.row_targets : sq.col_targets)[k]) return false;
    }
  }
  return true;
}

SearchResult exhaustive_value_search(const OperatorSquare& sq, const ConstraintSet& constraints) {
  SearchResult result;
  for (unsigned code = 0; code < 512; ++code) {
    const Assignment v = assignment_from_code(code);
    ++result.examined;
    if (is_consistent(sq, constraints, v)) {
      if (!result.witness) result.witness = v;
      ++result.consistent;
    }
  }
  return result;
}

}  // namespace silab::ks
