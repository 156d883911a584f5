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

#ifndef SILAB_WAVE_CYLINDER_HPP_
#define SILAB_WAVE_CYLINDER_HPP_

// The 1+1 dimensional wave equation on a spacetime whose time direction is
// a circle of circumference T. Space is made periodic with length L = r T,
// so the modes compatible with time periodicity, k = 2 pi n / T, are
// exactly the grid modes m with m divisible by r.

#include <cstddef>
#include <vector>

#include "silab/spectral.hpp"

namespace silab::cylinder {

using spectral::Complex;

class CylinderGrid {
 public:
  /// Throws ValidationError unless period > 0, repetitions >= 1, n is a
  /// power of two >= 8, and n >= 2 * repetitions.
  CylinderGrid(double period, int repetitions, std::size_t n);

  double period() const { return period_; }
  int repetitions() const { return repetitions_; }
  std::size_t size() const { return n_; }
  double length() const { return period_ * repetitions_; }
  double dx() const { return length() / static_cast<double>(n_); }
  double x(std::size_t i) const { return dx() * static_cast<double>(i); }
  /// k of spectral bin i.
  double wavenumber(std::size_t i) const;

  friend bool operator==(const CylinderGrid&, const CylinderGrid&) = default;

 private:
  double period_;
  int repetitions_;
  std::size_t n_;
};

/// f = phi(x, 0), g = phi_t(x, 0).
struct CylinderData {
  CylinderGrid grid;
  std::vector<double> f;
  std::vector<double> g;

  static CylinderData zeros(const CylinderGrid& grid);
  void validate() const;
};

/// phi_hat(k, t) = F(k) exp(-i k t) + G(k) exp(i k t) for k != 0; the k = 0
/// bin carries the secular branch phi_hat(0, t) = mean + drift t instead.
struct TwoWaveSpectrum {
  std::vector<Complex> forward;   // F
  std::vector<Complex> backward;  // G
  Complex mean;
  Complex drift;
};

TwoWaveSpectrum two_wave_split(const CylinderData& data);

struct CylinderModeSet {
  std::size_t n = 0;
  int repetitions = 1;
  /// Allowed signed mode numbers in (-n/2, n/2]; 0 first, then increasing
  /// magnitude with the negative partner before the positive one.
  std::vector<long> modes;

  bool contains(long m) const;
  /// Nonzero allowed modes counting the Nyquist mode as a +/- pair, which
  /// gives 2 * floor(n / (2 r)).
  std::size_t nonzero_count() const;
};

CylinderModeSet allowed_modes(const CylinderGrid& grid);

/// Keeps only allowed modes of f and g, and removes the mean of g (the
/// secular drift is periodic only when it vanishes). Idempotent.
CylinderData project_periodic(const CylinderData& data);

/// Exact evolution to time t; returns (phi, phi_t) at t.
CylinderData evolve_cylinder(const CylinderData& data, double t);

/// max(|f_T - f_0|, |g_T - g_0|) over the grid, divided by max(|f_0|, |g_0|).
/// Zero data gives 0.
double periodicity_residual(const CylinderData& data);

/// max |phi(x + T, t) - phi(x, t)| divided by max |phi(., t)|. Throws
/// ValidationError when n is not divisible by r.
double spatial_repetition_residual(const CylinderData& data, double t);

/// sum (g^2 + (df/dx)^2) dx, with the derivative taken spectrally.
double energy(const CylinderData& data);

}  // namespace silab::cylinder

#endif  // SILAB_WAVE_CYLINDER_HPP_
