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

#ifndef SILAB_PAULI_HPP_
#define SILAB_PAULI_HPP_

#include <complex>

#include <Eigen/Dense>

namespace silab::pauli {

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

inline Matrix2 identity() { return Matrix2::Identity(); }

inline Matrix2 sigma_x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Matrix2 sigma_y() {
  const std::complex<double> i(0.0, 1.0);
  Matrix2 m;
  m << 0.0, -i, i, 0.0;
  return m;
}

inline Matrix2 sigma_z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// Kronecker product; the left factor acts on the first (A) qubit.
inline Matrix4 kron(const Matrix2& left, const Matrix2& right) {
  Matrix4 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out.block<2, 2>(2 * r, 2 * c) = left(r, c) * right;
    }
  }
  return out;
}

inline Eigen::Vector4cd kron(const Eigen::Vector2cd& left, const Eigen::Vector2cd& right) {
  Eigen::Vector4cd out;
  out << left(0) * right, left(1) * right;
  return out;
}

/// Largest entrywise modulus.
inline double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace silab::pauli

#endif  // SILAB_PAULI_HPP_
