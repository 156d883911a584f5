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

#include "silab/wave_cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "silab/error.hpp"

namespace silab::cylinder {
namespace {

constexpr Complex kI(0.0, 1.0);

double peak(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool bin_allowed(const CylinderGrid& grid, std::size_t i) {
  return spectral::signed_index(i, grid.size()) % grid.repetitions() == 0;
}

}  // namespace

CylinderGrid::CylinderGrid(double period, int repetitions, std::size_t n)
    : period_(period), repetitions_(repetitions), n_(n) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ValidationError("cylinder circumference must be positive and finite");
  }
  if (repetitions < 1) throw ValidationError("repetition count r must be >= 1");
  if (n < 8 || !spectral::is_power_of_two(n)) {
    throw ValidationError("cylinder grid size must be a power of two >= 8");
  }
  if (n < 2 * static_cast<std::size_t>(repetitions)) {
    throw ValidationError("cylinder grid needs n >= 2 r to hold a nonzero allowed mode");
  }
}

double CylinderGrid::wavenumber(std::size_t i) const {
  return 2.0 * std::numbers::pi * static_cast<double>(spectral::signed_index(i, n_)) / length();
}

CylinderData CylinderData::zeros(const CylinderGrid& grid) {
  return {grid, std::vector<double>(grid.size(), 0.0), std::vector<double>(grid.size(), 0.0)};
}

void CylinderData::validate() const {
  if (f.size() != grid.size() || g.size() != grid.size()) {
    throw ValidationError("cylinder data does not match its grid");
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i]) || !std::isfinite(g[i])) {
      throw ValidationError("cylinder data has non-finite samples");
    }
  }
}

TwoWaveSpectrum two_wave_split(const CylinderData& data) {
  data.validate();
  const auto phi0 = spectral::forward_1d(data.f);
  const auto phit = spectral::forward_1d(data.g);
  const std::size_t n = data.grid.size();
  TwoWaveSpectrum s{std::vector<Complex>(n), std::vector<Complex>(n), phi0[0], phit[0]};
  for (std::size_t i = 1; i < n; ++i) {
    const double k = data.grid.wavenumber(i);
    s.forward[i] = 0.5 * (phi0[i] + kI * phit[i] / k);
    s.backward[i] = 0.5 * (phi0[i] - kI * phit[i] / k);
  }
  return s;
}

bool CylinderModeSet::contains(long m) const {
  const long half = static_cast<long>(n / 2);
  return std::abs(m) <= half && m % repetitions == 0;
}

std::size_t CylinderModeSet::nonzero_count() const {
  std::size_t count = 0;
  for (long m : modes) {
    if (m == 0) continue;
    count += (m == static_cast<long>(n / 2)) ? 2 : 1;
  }
  return count;
}

CylinderModeSet allowed_modes(const CylinderGrid& grid) {
  CylinderModeSet set{grid.size(), grid.repetitions(), {0}};
  const long half = static_cast<long>(grid.size() / 2);
  for (long mag = grid.repetitions(); mag <= half; mag += grid.repetitions()) {
    if (mag < half) set.modes.push_back(-mag);
    set.modes.push_back(mag);
  }
  return set;
}

CylinderData project_periodic(const CylinderData& data) {
  data.validate();
  auto f = spectral::forward_1d(data.f);
  auto g = spectral::forward_1d(data.g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!bin_allowed(data.grid, i)) {
      f[i] = 0.0;
      g[i] = 0.0;
    }
  }
  g[0] = 0.0;
  return {data.grid, spectral::inverse_1d_real(f).values, spectral::inverse_1d_real(g).values};
}

CylinderData evolve_cylinder(const CylinderData& data, double t) {
  if (!std::isfinite(t)) throw ValidationError("time must be finite");
  const TwoWaveSpectrum s = two_wave_split(data);
  const std::size_t n = data.grid.size();
  std::vector<Complex> phi(n);
  std::vector<Complex> phit(n);
  phi[0] = s.mean + s.drift * t;
  phit[0] = s.drift;
  for (std::size_t i = 1; i < n; ++i) {
    const double k = data.grid.wavenumber(i);
    const Complex out = s.forward[i] * std::polar(1.0, -k * t);
    const Complex in = s.backward[i] * std::polar(1.0, k * t);
    phi[i] = out + in;
    phit[i] = -kI * k * out + kI * k * in;
  }
  return {data.grid, spectral::inverse_1d_real(phi).values, spectral::inverse_1d_real(phit).values};
}

double periodicity_residual(const CylinderData& data) {
  const double scale = std::max(peak(data.f), peak(data.g));
  if (scale == 0.0) return 0.0;
  const CylinderData later = evolve_cylinder(data, data.grid.period());
  double worst = 0.0;
  for (std::size_t i = 0; i < data.f.size(); ++i) {
    worst = std::max({worst, std::abs(later.f[i] - data.f[i]), std::abs(later.g[i] - data.g[i])});
  }
  return worst / scale;
}

double spatial_repetition_residual(const CylinderData& data, double t) {
  const std::size_t n = data.grid.size();
  const auto r = static_cast<std::size_t>(data.grid.repetitions());
  if (n % r != 0) {
    throw ValidationError("grid size " + std::to_string(n) + " is not divisible by r = " +
                          std::to_string(r));
  }
  const std::size_t shift = n / r;
  const CylinderData state = evolve_cylinder(data, t);
  const double scale = peak(state.f);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(state.f[(i + shift) % n] - state.f[i]));
  }
  return worst / scale;
}

double energy(const CylinderData& data) {
  data.validate();
  double kinetic = 0.0;
  for (double v : data.g) kinetic += v * v;
  const auto spec = spectral::forward_1d(data.f);
  double gradient = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double k = data.grid.wavenumber(i);
    gradient += k * k * std::norm(spec[i]);
  }
  gradient /= static_cast<double>(spec.size());
  return (kinetic + gradient) * data.grid.dx();
}

}  // namespace silab::cylinder
