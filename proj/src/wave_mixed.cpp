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

#include "silab/wave_mixed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "silab/error.hpp"
#include "silab/rng.hpp"

namespace silab::wave {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_axis(std::size_t n, double length, const char* name) {
  if (n < 8 || !spectral::is_power_of_two(n)) {
    throw ValidationError(std::string(name) + " point count must be a power of two >= 8");
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError(std::string(name) + " length must be positive and finite");
  }
}

void check_region(const SurfaceGrid& grid, const IndexRect& r, const char* name) {
  if (r.empty()) throw ValidationError(std::string(name) + " region is empty");
  if (r.i_end > grid.n_x1 || r.j_end > grid.n_t) {
    throw ValidationError(std::string(name) + " region exceeds the grid");
  }
}

bool mask_allows(ConeOrientation orientation, bool strict, const ModeCharacter& mc) {
  if (mc.kind == ModeKind::kMarginal) return !strict;
  switch (orientation) {
    case ConeOrientation::kOmegaDominant: return mc.kind == ModeKind::kOscillatory;
    case ConeOrientation::kKDominant: return mc.kind == ModeKind::kExponential;
    case ConeOrientation::kAllPass: return true;
  }
  return false;
}

struct Propagator {
  double from_f;
  double from_g;
};

Propagator x2_propagator(const ModeCharacter& mc, double x2) {
  switch (mc.kind) {
    case ModeKind::kOscillatory:
      return {std::cos(mc.rate * x2), std::sin(mc.rate * x2) / mc.rate};
    case ModeKind::kExponential:
      return {std::cosh(mc.rate * x2), std::sinh(mc.rate * x2) / mc.rate};
    case ModeKind::kMarginal:
      break;
  }
  return {1.0, x2};
}

double axis_wavenumber(std::size_t i, std::size_t n, double length) {
  return kTwoPi * static_cast<double>(spectral::signed_index(i, n)) / length;
}

}  // namespace

void SurfaceGrid::validate() const {
  check_axis(n_x1, length_x1, "x1");
  check_axis(n_t, period_t, "t");
}

double SurfaceGrid::x1(std::size_t i) const {
  return length_x1 * static_cast<double>(i) / static_cast<double>(n_x1);
}

double SurfaceGrid::t(std::size_t j) const {
  return period_t * static_cast<double>(j) / static_cast<double>(n_t);
}

double SurfaceGrid::wavenumber(std::size_t i) const { return axis_wavenumber(i, n_x1, length_x1); }

// Bin j multiplies exp(+2 pi i j' t / T), i.e. omega = -2 pi j' / T.
double SurfaceGrid::frequency(std::size_t j) const { return -axis_wavenumber(j, n_t, period_t); }

SurfaceData SurfaceData::zeros(const SurfaceGrid& grid) {
  grid.validate();
  return {grid, std::vector<double>(grid.size(), 0.0), std::vector<double>(grid.size(), 0.0)};
}

void SurfaceData::validate() const {
  grid.validate();
  if (f.size() != grid.size() || g.size() != grid.size()) {
    throw ValidationError("surface data does not match its grid");
  }
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!std::isfinite(f[k]) || !std::isfinite(g[k])) {
      throw ValidationError("surface data has non-finite samples");
    }
  }
}

SpectralData to_spectral(const SurfaceData& data) {
  data.validate();
  const auto& gr = data.grid;
  return {gr, spectral::forward_2d(data.f, gr.n_x1, gr.n_t),
          spectral::forward_2d(data.g, gr.n_x1, gr.n_t)};
}

SurfaceData from_spectral(const SpectralData& spectrum, double* max_imag) {
  const auto& gr = spectrum.grid;
  auto f = spectral::inverse_2d_real(spectrum.f, gr.n_x1, gr.n_t);
  auto g = spectral::inverse_2d_real(spectrum.g, gr.n_x1, gr.n_t);
  if (max_imag != nullptr) *max_imag = std::max(f.max_imag, g.max_imag);
  return {gr, std::move(f.values), std::move(g.values)};
}

ModeCharacter mode_character(double k1, double omega) {
  const double k2 = k1 * k1;
  const double w2 = omega * omega;
  const double scale = std::max(k2, w2);
  const double d = w2 - k2;
  if (scale == 0.0 || std::abs(d) <= 1e-12 * scale) return {ModeKind::kMarginal, 0.0};
  if (d > 0.0) return {ModeKind::kOscillatory, std::sqrt(d)};
  return {ModeKind::kExponential, std::sqrt(-d)};
}

const char* to_string(ConeOrientation orientation) {
  switch (orientation) {
    case ConeOrientation::kOmegaDominant: return "omega-dominant";
    case ConeOrientation::kKDominant: return "k-dominant";
    case ConeOrientation::kAllPass: return "all-pass";
  }
  return "unknown";
}

ConeMask ConeMask::make(const SurfaceGrid& grid, ConeOrientation orientation, bool strict) {
  grid.validate();
  ConeMask mask{grid, orientation, strict, std::vector<std::uint8_t>(grid.size(), 0)};
  for (std::size_t i = 0; i < grid.n_x1; ++i) {
    for (std::size_t j = 0; j < grid.n_t; ++j) {
      const auto mc = mode_character(grid.wavenumber(i), grid.frequency(j));
      mask.allowed[grid.index(i, j)] = mask_allows(orientation, strict, mc) ? 1 : 0;
    }
  }
  return mask;
}

SurfaceData project_to_cone(const SurfaceData& data, const ConeMask& mask, double* max_imag) {
  if (!(data.grid == mask.grid)) throw ValidationError("mask grid differs from data grid");
  SpectralData spec = to_spectral(data);
  for (std::size_t k = 0; k < spec.f.size(); ++k) {
    if (mask.allowed[k] == 0) {
      spec.f[k] = 0.0;
      spec.g[k] = 0.0;
    }
  }
  return from_spectral(spec, max_imag);
}

FieldSlice evolve_x2(const SurfaceData& data, const ConeMask& mask, double x2) {
  if (!(data.grid == mask.grid)) throw ValidationError("mask grid differs from data grid");
  if (!std::isfinite(x2)) throw ValidationError("x2 must be finite");
  const SpectralData spec = to_spectral(data);
  const auto& gr = data.grid;
  // Transform roundoff in an exponential mode would otherwise be amplified
  // by exp(r x2) and swamp the result, so such coefficients are treated as
  // exact zeros when they sit at the roundoff floor of their spectrum.
  double f_peak = 0.0;
  double g_peak = 0.0;
  for (std::size_t k = 0; k < spec.f.size(); ++k) {
    f_peak = std::max(f_peak, std::abs(spec.f[k]));
    g_peak = std::max(g_peak, std::abs(spec.g[k]));
  }
  const double f_floor = kRoundoffFloor * f_peak;
  const double g_floor = kRoundoffFloor * g_peak;
  std::vector<Complex> phi(gr.size());
  double total = 0.0;
  double rejected = 0.0;
  for (std::size_t i = 0; i < gr.n_x1; ++i) {
    for (std::size_t j = 0; j < gr.n_t; ++j) {
      const std::size_t k = gr.index(i, j);
      const double weight = std::norm(spec.f[k]) + std::norm(spec.g[k]);
      total += weight;
      if (mask.allowed[k] == 0) rejected += weight;
      const auto mc = mode_character(gr.wavenumber(i), gr.frequency(j));
      const auto p = x2_propagator(mc, x2);
      Complex fk = spec.f[k];
      Complex gk = spec.g[k];
      if (mc.kind == ModeKind::kExponential) {
        if (std::abs(fk) <= f_floor) fk = 0.0;
        if (std::abs(gk) <= g_floor) gk = 0.0;
      }
      phi[k] = p.from_f * fk + p.from_g * gk;
    }
  }
  auto real = spectral::inverse_2d_real(phi, gr.n_x1, gr.n_t);
  FieldSlice slice;
  slice.grid = gr;
  slice.x2 = x2;
  slice.phi = std::move(real.values);
  slice.max_imag = real.max_imag;
  slice.rejected_fraction = total > 0.0 ? std::sqrt(rejected / total) : 0.0;
  return slice;
}

double modal_amplitude(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(2.0 * sum / static_cast<double>(values.size()));
}

void SpatialGrid::validate() const {
  check_axis(n_x1, length_x1, "x1");
  check_axis(n_x2, length_x2, "x2");
}

double SpatialGrid::x1(std::size_t i) const {
  return length_x1 * static_cast<double>(i) / static_cast<double>(n_x1);
}

double SpatialGrid::x2(std::size_t j) const {
  return length_x2 * static_cast<double>(j) / static_cast<double>(n_x2);
}

double SpatialGrid::cell_area() const {
  return length_x1 * length_x2 / static_cast<double>(size());
}

namespace {

void check_spatial(const SpatialField& field) {
  field.grid.validate();
  if (field.phi.size() != field.grid.size() || field.phidot.size() != field.grid.size()) {
    throw ValidationError("spatial field does not match its grid");
  }
}

double spatial_wavenumber(const SpatialGrid& gr, std::size_t i, std::size_t j) {
  return std::hypot(axis_wavenumber(i, gr.n_x1, gr.length_x1),
                    axis_wavenumber(j, gr.n_x2, gr.length_x2));
}

}  // namespace

SpatialField evolve_t(const SpatialField& initial, double t) {
  check_spatial(initial);
  if (!std::isfinite(t)) throw ValidationError("t must be finite");
  const auto& gr = initial.grid;
  const auto phi0 = spectral::forward_2d(initial.phi, gr.n_x1, gr.n_x2);
  const auto dot0 = spectral::forward_2d(initial.phidot, gr.n_x1, gr.n_x2);
  std::vector<Complex> phi(gr.size());
  std::vector<Complex> dot(gr.size());
  for (std::size_t i = 0; i < gr.n_x1; ++i) {
    for (std::size_t j = 0; j < gr.n_x2; ++j) {
      const std::size_t k = gr.index(i, j);
      const double w = spatial_wavenumber(gr, i, j);
      if (w == 0.0) {
        phi[k] = phi0[k] + dot0[k] * t;
        dot[k] = dot0[k];
      } else {
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        phi[k] = phi0[k] * c + dot0[k] * (s / w);
        dot[k] = -w * s * phi0[k] + c * dot0[k];
      }
    }
  }
  return {gr, spectral::inverse_2d_real(phi, gr.n_x1, gr.n_x2).values,
          spectral::inverse_2d_real(dot, gr.n_x1, gr.n_x2).values};
}

double energy(const SpatialField& field) {
  check_spatial(field);
  const auto& gr = field.grid;
  double kinetic = 0.0;
  for (double v : field.phidot) kinetic += v * v;
  // sum_x |grad phi|^2 = (1/N) sum_k |k|^2 |phi_k|^2
  const auto spec = spectral::forward_2d(field.phi, gr.n_x1, gr.n_x2);
  double gradient = 0.0;
  for (std::size_t i = 0; i < gr.n_x1; ++i) {
    for (std::size_t j = 0; j < gr.n_x2; ++j) {
      const double w = spatial_wavenumber(gr, i, j);
      gradient += w * w * std::norm(spec[gr.index(i, j)]);
    }
  }
  gradient /= static_cast<double>(gr.size());
  return (kinetic + gradient) * gr.cell_area();
}

double tail_mass(const SurfaceData& data, const IndexRect& region) {
  data.validate();
  check_region(data.grid, region, "tail");
  double inside = 0.0;
  double outside = 0.0;
  const auto& gr = data.grid;
  for (std::size_t i = 0; i < gr.n_x1; ++i) {
    for (std::size_t j = 0; j < gr.n_t; ++j) {
      const std::size_t k = gr.index(i, j);
      const double v = std::max(std::abs(data.f[k]), std::abs(data.g[k]));
      double& target = region.contains(i, j) ? inside : outside;
      target = std::max(target, v);
    }
  }
  if (outside == 0.0) return 0.0;
  if (inside == 0.0) return std::numeric_limits<double>::infinity();
  return outside / inside;
}

namespace {

std::vector<double> raised_cosine(std::size_t n) {
  const std::size_t lo = 3 * n / 8;
  const std::size_t width = n / 4;
  std::vector<double> w(n, 0.0);
  for (std::size_t i = lo; i <= lo + width; ++i) {
    const double u = static_cast<double>(i - lo) / static_cast<double>(width);
    w[i] = 0.5 * (1.0 - std::cos(kTwoPi * u));
  }
  return w;
}

}  // namespace

SurfaceData raised_cosine_bump(const SurfaceGrid& grid) {
  SurfaceData data = SurfaceData::zeros(grid);
  const auto wx = raised_cosine(grid.n_x1);
  const auto wt = raised_cosine(grid.n_t);
  for (std::size_t i = 0; i < grid.n_x1; ++i) {
    for (std::size_t j = 0; j < grid.n_t; ++j) {
      data.f[grid.index(i, j)] = wx[i] * wt[j];
    }
  }
  data.g = data.f;
  return data;
}

IndexRect bump_support(const SurfaceGrid& grid) {
  grid.validate();
  return {3 * grid.n_x1 / 8, 5 * grid.n_x1 / 8 + 1, 3 * grid.n_t / 8, 5 * grid.n_t / 8 + 1};
}

SiFieldReport si_field_analogue(const SurfaceGrid& grid, const IndexRect& a, const IndexRect& b,
                                const IndexRect& lambda, const ConeMask& mask,
                                std::size_t ensemble_size, std::uint64_t seed) {
  grid.validate();
  if (!(mask.grid == grid)) throw ValidationError("mask grid differs from ensemble grid");
  check_region(grid, a, "A");
  check_region(grid, b, "B");
  check_region(grid, lambda, "Lambda");
  if (ensemble_size < 100) throw ValidationError("ensemble must have at least 100 members");

  std::vector<std::size_t> conditioning;
  for (const IndexRect* r : {&a, &b}) {
    for (std::size_t i = r->i_begin; i < r->i_end; ++i) {
      for (std::size_t j = r->j_begin; j < r->j_end; ++j) conditioning.push_back(grid.index(i, j));
    }
  }
  const std::size_t p = conditioning.size();
  if (ensemble_size <= p + 1) {
    throw ValidationError("ensemble must be larger than the number of conditioning samples");
  }

  Eigen::MatrixXd design(ensemble_size, p + 1);
  Eigen::VectorXd response(ensemble_size);
  const Rng root = Rng(seed).split("si_field_analogue");
  SurfaceData member = SurfaceData::zeros(grid);
  for (std::size_t e = 0; e < ensemble_size; ++e) {
    Rng rng = root.split(static_cast<std::uint64_t>(e));
    for (double& v : member.f) v = rng.normal();
    const SurfaceData field = project_to_cone(member, mask);
    design(e, 0) = 1.0;
    for (std::size_t c = 0; c < p; ++c) design(e, c + 1) = field.f[conditioning[c]];
    double mean = 0.0;
    for (std::size_t i = lambda.i_begin; i < lambda.i_end; ++i) {
      for (std::size_t j = lambda.j_begin; j < lambda.j_end; ++j) mean += field.f[grid.index(i, j)];
    }
    response(e) = mean / static_cast<double>(lambda.area());
  }

  SiFieldReport report;
  report.seed = seed;
  report.ensemble_size = ensemble_size;
  report.conditioning_points = p;
  const double n = static_cast<double>(ensemble_size);
  const double centre = response.mean();
  report.unconditioned_variance = (response.array() - centre).square().sum() / (n - 1.0);

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  const Eigen::VectorXd coef = qr.solve(response);
  const double rss = (response - design * coef).squaredNorm();
  report.conditioned_variance = rss / (n - static_cast<double>(qr.rank()));
  report.ratio = report.unconditioned_variance > 0.0
                     ? report.conditioned_variance / report.unconditioned_variance
                     : 0.0;
  return report;
}

}  // namespace silab::wave
