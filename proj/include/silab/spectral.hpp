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

#ifndef SILAB_SPECTRAL_HPP_
#define SILAB_SPECTRAL_HPP_

// Thin wrapper over FFTW for the periodic grids used by the wave solvers.
// Forward transforms are unnormalized, X[k] = sum_n x[n] exp(-2 pi i k n / N);
// inverse transforms carry the 1/N factor.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace silab::spectral {

using Complex = std::complex<double>;

struct RealField {
  std::vector<double> values;
  double max_imag = 0.0;  // largest discarded imaginary part
};

std::vector<Complex> forward_1d(std::span<const double> data);
RealField inverse_1d_real(std::span<const Complex> spectrum);

/// Row-major rows x cols arrays.
std::vector<Complex> forward_2d(std::span<const double> data, std::size_t rows, std::size_t cols);
RealField inverse_2d_real(std::span<const Complex> spectrum, std::size_t rows, std::size_t cols);

/// Bin i of an n-point transform as a signed frequency in [-n/2, n/2).
inline long signed_index(std::size_t i, std::size_t n) {
  return i < (n + 1) / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

/// Bin holding the negated frequency.
inline std::size_t mirror_index(std::size_t i, std::size_t n) { return i == 0 ? 0 : n - i; }

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace silab::spectral

#endif  // SILAB_SPECTRAL_HPP_
