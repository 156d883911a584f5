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

#ifndef SILAB_WAVE_MIXED_HPP_
#define SILAB_WAVE_MIXED_HPP_

// The 2+1 dimensional massless wave equation (c = 1) with Cauchy data on the
// timelike plane x2 = 0. Data f = phi(x1, 0, t) and g = d phi / d x2 live on
// a doubly periodic (x1, t) grid. A Fourier mode exp(i(k1 x1 - omega t))
// evolves in x2 with k2^2 = omega^2 - k1^2: it oscillates when
// |omega| > |k1|, grows or decays exponentially when |k1| > |omega|, and is
// linear in x2 on the light cone |omega| = |k1|. Stable evolution therefore
// needs data whose spectrum sits inside a cone, which is a nonlocal
// restriction on f and g.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "silab/spectral.hpp"

namespace silab::wave {

using spectral::Complex;

struct SurfaceGrid {
  std::size_t n_x1 = 32;
  std::size_t n_t = 32;
  double length_x1 = 6.283185307179586;
  double period_t = 6.283185307179586;

  /// Throws ValidationError unless both counts are powers of two >= 8 and
  /// both lengths are positive and finite.
  void validate() const;

  std::size_t size() const { return n_x1 * n_t; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n_t + j; }
  double x1(std::size_t i) const;
  double t(std::size_t j) const;
  /// k1 of spectral bin i.
  double wavenumber(std::size_t i) const;
  /// omega of spectral bin j, for the mode exp(i(k1 x1 - omega t)).
  double frequency(std::size_t j) const;

  friend bool operator==(const SurfaceGrid&, const SurfaceGrid&) = default;
};

/// f and g sampled row-major: entry (i, j) is x1 index i, t index j.
struct SurfaceData {
  SurfaceGrid grid;
  std::vector<double> f;
  std::vector<double> g;

  static SurfaceData zeros(const SurfaceGrid& grid);
  void validate() const;
};

struct SpectralData {
  SurfaceGrid grid;
  std::vector<Complex> f;
  std::vector<Complex> g;
};

SpectralData to_spectral(const SurfaceData& data);

/// Inverse transform. `max_imag`, when given, receives the largest discarded
/// imaginary part.
SurfaceData from_spectral(const SpectralData& spectrum, double* max_imag = nullptr);

enum class ModeKind { kOscillatory, kExponential, kMarginal };

struct ModeCharacter {
  ModeKind kind = ModeKind::kMarginal;
  /// kappa = sqrt(omega^2 - k1^2) for oscillatory modes, the growth rate
  /// sqrt(k1^2 - omega^2) for exponential modes, 0 for marginal ones.
  double rate = 0.0;
};

/// Classifies the x2 behaviour of exp(i(k1 x1 - omega t)). Modes with
/// |omega^2 - k1^2| <= 1e-12 max(omega^2, k1^2) count as marginal.
ModeCharacter mode_character(double k1, double omega);

enum class ConeOrientation {
  kOmegaDominant,  // |omega| >= |k1| allowed
  kKDominant,      // |k1| >= |omega| allowed
  kAllPass,        // no constraint
};

const char* to_string(ConeOrientation orientation);

struct ConeMask {
  SurfaceGrid grid;
  ConeOrientation orientation = ConeOrientation::kOmegaDominant;
  bool strict = false;  // also reject the marginal light-cone modes
  std::vector<std::uint8_t> allowed;

  static ConeMask make(const SurfaceGrid& grid, ConeOrientation orientation, bool strict = false);
  bool at(std::size_t i, std::size_t j) const { return allowed[grid.index(i, j)] != 0; }
};

/// Zeroes every spectral coefficient the mask rejects. Idempotent; the output
/// is real up to the imaginary residue reported through `max_imag`.
SurfaceData project_to_cone(const SurfaceData& data, const ConeMask& mask,
                            double* max_imag = nullptr);

/// phi on the plane x2 = const.
struct FieldSlice {
  SurfaceGrid grid;
  double x2 = 0.0;
  std::vector<double> phi;
  double max_imag = 0.0;
  /// Share of the input spectral norm (f and g together) that the mask
  /// rejects. Such content is evolved anyway; it is what grows.
  double rejected_fraction = 0.0;
};

/// Exponential-mode coefficients at or below this fraction of their
/// spectrum's peak are transform roundoff and are dropped before growth.
inline constexpr double kRoundoffFloor = 1e-13;

/// Exact per-mode evolution to the plane x2:
///   oscillatory  f cos(kappa x2) + g sin(kappa x2) / kappa
///   marginal     f + g x2
///   exponential  f cosh(r x2) + g sinh(r x2) / r
FieldSlice evolve_x2(const SurfaceData& data, const ConeMask& mask, double x2);

/// Root-mean-square of the values times sqrt(2): 1 for a unit cosine.
double modal_amplitude(const std::vector<double>& values);

// Ordinary Cauchy problem on a periodic (x1, x2) grid, used to cross-check
// the timelike evolution.

struct SpatialGrid {
  std::size_t n_x1 = 32;
  std::size_t n_x2 = 32;
  double length_x1 = 6.283185307179586;
  double length_x2 = 6.283185307179586;

  void validate() const;
  std::size_t size() const { return n_x1 * n_x2; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n_x2 + j; }
  double x1(std::size_t i) const;
  double x2(std::size_t j) const;
  double cell_area() const;
};

struct SpatialField {
  SpatialGrid grid;
  std::vector<double> phi;
  std::vector<double> phidot;
};

/// Exact spectral evolution in t: per mode phi cos(|k| t) + phidot sin(|k| t) / |k|.
SpatialField evolve_t(const SpatialField& initial, double t);

/// sum (phidot^2 + |grad phi|^2) dA. The gradient term is evaluated in
/// Fourier space (spectral differentiation plus Parseval).
double energy(const SpatialField& field);

/// Half-open index rectangle [i_begin, i_end) x [j_begin, j_end).
struct IndexRect {
  std::size_t i_begin = 0;
  std::size_t i_end = 0;
  std::size_t j_begin = 0;
  std::size_t j_end = 0;

  bool empty() const { return i_end <= i_begin || j_end <= j_begin; }
  bool contains(std::size_t i, std::size_t j) const {
    return i >= i_begin && i < i_end && j >= j_begin && j < j_end;
  }
  std::size_t area() const { return empty() ? 0 : (i_end - i_begin) * (j_end - j_begin); }
};

/// max(|f|, |g|) outside the region divided by max(|f|, |g|) inside it.
/// 0 when nothing lies outside; +inf when the inside is identically zero but
/// the outside is not.
double tail_mass(const SurfaceData& data, const IndexRect& region);

/// Product of raised-cosine windows on the central quarter of each axis,
/// used for both f and g.
SurfaceData raised_cosine_bump(const SurfaceGrid& grid);

/// Index rectangle covering the bump's closed support.
IndexRect bump_support(const SurfaceGrid& grid);

struct SiFieldReport {
  std::uint64_t seed = 0;
  std::size_t ensemble_size = 0;
  std::size_t conditioning_points = 0;
  double unconditioned_variance = 0.0;
  double conditioned_variance = 0.0;
  double ratio = 0.0;
};

/// Draws `ensemble_size` white-noise fields f, projects each onto the mask,
/// and compares the variance of the mean of f over `lambda` with its
/// variance given the samples of f on `a` and `b`. The ensemble is Gaussian,
/// so the conditional variance does not depend on the conditioning values
/// and equals the variance given near-zero data on a and b; it is estimated
/// as the residual variance of a least-squares regression on those samples.
/// A ratio near 1 means the field in lambda is independent of the data in
/// a and b. Throws ValidationError for ensembles smaller than 100 or with no
/// more members than regressors.
SiFieldReport si_field_analogue(const SurfaceGrid& grid, const IndexRect& a, const IndexRect& b,
                                const IndexRect& lambda, const ConeMask& mask,
                                std::size_t ensemble_size, std::uint64_t seed);

}  // namespace silab::wave

#endif  // SILAB_WAVE_MIXED_HPP_
