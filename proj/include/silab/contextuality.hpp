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

#ifndef SILAB_CONTEXTUALITY_HPP_
#define SILAB_CONTEXTUALITY_HPP_

// The two-qubit 3x3 operator square. Every row and every column is a set of
// mutually commuting observables whose product is +I or -I. Functional
// composition then forces the product of the assigned values along each
// line to equal that sign, and no +/-1 assignment satisfies all six lines.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "silab/pauli.hpp"

namespace silab::ks {

using Matrix = pauli::Matrix4;

inline constexpr double kAlgebraTolerance = 1e-12;

struct OperatorSquare {
  std::array<std::array<Matrix, 3>, 3> ops;
  std::array<int, 3> row_targets{};
  std::array<int, 3> col_targets{};
};

/// The square
///   I (x) Z   Z (x) I   Z (x) Z
///   X (x) I   I (x) X   X (x) X
///   X (x) Z   Z (x) X   Y (x) Y
/// with line targets read off the computed products.
OperatorSquare build_square();

/// +1 or -1 when `product` equals that multiple of the identity within
/// `tol` entrywise, 0 otherwise.
int identity_sign(const Matrix& product, double tol = kAlgebraTolerance);

Matrix commutator(const Matrix& a, const Matrix& b);

struct AlgebraReport {
  double commutator_max = 0.0;   // over the 18 within-line pairs
  double hermitian_max = 0.0;    // max |M - M^dagger|
  double square_max = 0.0;       // max |M^2 - I|
  double target_max = 0.0;       // max |line product - target I|
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

AlgebraReport verify_algebra(const OperatorSquare& sq, double tol = kAlgebraTolerance);

/// Value required of AB by functional composition, vA * vB. Throws
/// ValidationError if A and B do not commute or a value is not +/-1.
int functional_composition_check(const Matrix& a, const Matrix& b, int va, int vb);

/// v[row][col] in {-1, +1}.
using Assignment = std::array<std::array<int, 3>, 3>;

/// Assignment number `code` in [0, 512): bit 3 row + col set means -1.
Assignment assignment_from_code(unsigned code);

struct ConstraintSet {
  std::array<bool, 3> rows{true, true, true};
  std::array<bool, 3> cols{true, true, true};

  static ConstraintSet all() { return {}; }
  static ConstraintSet rows_only() { return {{true, true, true}, {false, false, false}}; }
};

/// True when every enabled line's composed value equals its target.
bool is_consistent(const OperatorSquare& sq, const ConstraintSet& constraints,
                   const Assignment& v);

struct SearchResult {
  std::size_t consistent = 0;
  std::size_t examined = 0;
  std::optional<Assignment> witness;  // first consistent assignment found
};

SearchResult exhaustive_value_search(const OperatorSquare& sq,
                                     const ConstraintSet& constraints = ConstraintSet::all());

}  // namespace silab::ks

#endif  // SILAB_CONTEXTUALITY_HPP_
