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
#include <complex>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "silab/error.hpp"

namespace silab::ks {
namespace {

using pauli::identity;
using pauli::kron;
using pauli::sigma_x;
using pauli::sigma_y;
using pauli::sigma_z;

TEST(BuildSquare, FirstEntryIsDiagonal) {
  const auto sq = build_square();
  Matrix expected = Matrix::Zero();
  expected.diagonal() << 1.0, -1.0, 1.0, -1.0;
  EXPECT_LT(pauli::max_abs(sq.ops[0][0] - expected), 1e-15);
}

TEST(BuildSquare, EntriesSquareToIdentity) {
  const auto sq = build_square();
  for (const auto& row : sq.ops) {
    for (const auto& m : row) EXPECT_LT(pauli::max_abs(m * m - Matrix::Identity()), 1e-12);
  }
}

TEST(BuildSquare, TargetsMatchMatrixProducts) {
  const auto sq = build_square();
  EXPECT_EQ(sq.row_targets, (std::array<int, 3>{1, 1, 1}));
  EXPECT_EQ(sq.col_targets, (std::array<int, 3>{1, 1, -1}));
  // Independent products in a different association order.
  for (int r = 0; r < 3; ++r) {
    const Matrix p = sq.ops[r][2] * (sq.ops[r][1] * sq.ops[r][0]);
    EXPECT_LT(pauli::max_abs(p - sq.row_targets[r] * Matrix::Identity()), 1e-12);
  }
  for (int c = 0; c < 3; ++c) {
    const Matrix p = sq.ops[2][c] * (sq.ops[1][c] * sq.ops[0][c]);
    EXPECT_LT(pauli::max_abs(p - sq.col_targets[c] * Matrix::Identity()), 1e-12);
  }
  const int parity = std::accumulate(sq.row_targets.begin(), sq.row_targets.end(), 1,
                                     std::multiplies<>()) *
                     std::accumulate(sq.col_targets.begin(), sq.col_targets.end(), 1,
                                     std::multiplies<>());
  EXPECT_EQ(parity, -1);
}

TEST(IdentitySign, Examples) {
  EXPECT_EQ(identity_sign(Matrix::Identity()), 1);
  EXPECT_EQ(identity_sign(-Matrix::Identity()), -1);
  EXPECT_EQ(identity_sign(kron(sigma_z(), identity())), 0);
  EXPECT_EQ(identity_sign(Matrix::Zero()), 0);
}

TEST(VerifyAlgebra, BuiltSquareIsClean) {
  const auto report = verify_algebra(build_square());
  EXPECT_TRUE(report.ok());
  EXPECT_LT(report.commutator_max, 1e-12);
  EXPECT_LT(report.hermitian_max, 1e-12);
  EXPECT_LT(report.square_max, 1e-12);
  EXPECT_LT(report.target_max, 1e-12);
}

TEST(VerifyAlgebra, SpecificCommutators) {
  EXPECT_LT(pauli::max_abs(commutator(kron(identity(), sigma_z()), kron(sigma_z(), identity()))),
            1e-15);
  EXPECT_LT(pauli::max_abs(commutator(kron(sigma_x(), sigma_z()), kron(sigma_y(), sigma_y()))),
            1e-12);
  EXPECT_NEAR(pauli::max_abs(commutator(kron(sigma_x(), identity()), kron(sigma_z(), identity()))),
              2.0, 1e-15);
}

TEST(VerifyAlgebra, CorruptedSquareIsReported) {
  auto sq = build_square();
  sq.ops[0][1] = kron(sigma_x(), identity());
  const auto report = verify_algebra(sq);
  EXPECT_FALSE(report.ok());
  EXPECT_GT(report.commutator_max, 1.0);
}

TEST(VerifyAlgebra, NonHermitianEntryIsReported) {
  auto sq = build_square();
  sq.ops[1][1] = kron(identity(), sigma_x()) * std::complex<double>(0.0, 1.0);
  EXPECT_FALSE(verify_algebra(sq).ok());
  EXPECT_GT(verify_algebra(sq).hermitian_max, 1.0);
}

TEST(FunctionalComposition, Examples) {
  const Matrix a = kron(identity(), sigma_z());
  const Matrix b = kron(sigma_z(), identity());
  EXPECT_EQ(functional_composition_check(a, b, 1, -1), -1);
  EXPECT_EQ(functional_composition_check(a, b, -1, -1), 1);
  EXPECT_THROW(functional_composition_check(kron(sigma_x(), identity()), kron(sigma_y(), identity()),
                                            1, 1),
               ValidationError);
  EXPECT_THROW(functional_composition_check(a, b, 0, 1), ValidationError);
}

TEST(AssignmentCode, BitLayout) {
  EXPECT_EQ(assignment_from_code(0)[2][2], 1);
  const auto v = assignment_from_code(1u << 5);  // row 1, column 2
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) EXPECT_EQ(v[r][c], (r == 1 && c == 2) ? -1 : 1);
  }
  EXPECT_THROW(assignment_from_code(512), IndexError);
}

TEST(ExhaustiveSearch, FullConstraintsHaveNoSolution) {
  const auto result = exhaustive_value_search(build_square());
  EXPECT_EQ(result.examined, 512u);
  EXPECT_EQ(result.consistent, 0u);
  EXPECT_FALSE(result.witness.has_value());
}

TEST(ExhaustiveSearch, FlippedColumnTargetAdmitsAllPlusWitness) {
  auto sq = build_square();
  sq.col_targets[2] = 1;
  const auto result = exhaustive_value_search(sq);
  EXPECT_GT(result.consistent, 0u);
  EXPECT_EQ(result.consistent, 16u);
  ASSERT_TRUE(result.witness.has_value());
  EXPECT_TRUE(is_consistent(sq, ConstraintSet::all(), assignment_from_code(0)));
  EXPECT_EQ(*result.witness, assignment_from_code(0));
}

TEST(ExhaustiveSearch, RowsOnlyCount) {
  const auto result = exhaustive_value_search(build_square(), ConstraintSet::rows_only());
  EXPECT_EQ(result.consistent, 64u);
}

// Each cell sits on one row and one column, so the product of all six line
// values is +1 for every assignment while the targets multiply to -1.
TEST(ExhaustiveSearch, AgreesWithParityArgument) {
  for (unsigned code = 0; code < 512; ++code) {
    const auto v = assignment_from_code(code);
    int all = 1;
    for (int r = 0; r < 3; ++r) all *= v[r][0] * v[r][1] * v[r][2];
    for (int c = 0; c < 3; ++c) all *= v[0][c] * v[1][c] * v[2][c];
    EXPECT_EQ(all, 1);
  }
}

TEST(ExhaustiveSearch, OrderIndependent) {
  auto sq = build_square();
  for (const auto& cs : {ConstraintSet::all(), ConstraintSet::rows_only(),
                         ConstraintSet{{true, false, true}, {false, true, true}}}) {
    std::vector<unsigned> codes(512);
    std::iota(codes.begin(), codes.end(), 0u);
    std::mt19937 rng(7);
    std::shuffle(codes.begin(), codes.end(), rng);
    std::size_t count = 0;
    for (unsigned code : codes) count += is_consistent(sq, cs, assignment_from_code(code)) ? 1 : 0;
    EXPECT_EQ(count, exhaustive_value_search(sq, cs).consistent);
  }
}

}  // namespace
}  // namespace silab::ks
