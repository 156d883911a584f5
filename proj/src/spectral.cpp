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

#include "silab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "silab/error.hpp"

namespace silab::spectral {
namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer allocate(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw SolverError("fftw_malloc failed");
  return Buffer(p);
}

// Out-of-place c2c transform over an fftw_malloc'd buffer, so alignment and
// therefore the selected codelets are the same on every call.
void transform(const std::vector<int>& dims, fftw_complex* in, fftw_complex* out, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), in, out, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw SolverError("FFTW planning failed");
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::vector<Complex> forward(std::span<const double> data, const std::vector<int>& dims) {
  const std::size_t n = data.size();
  Buffer in = allocate(n);
  Buffer out = allocate(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = data[i];
    in[i][1] = 0.0;
  }
  transform(dims, in.get(), out.get(), FFTW_FORWARD);
  std::vector<Complex> result(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = {out[i][0], out[i][1]};
  return result;
}

RealField inverse(std::span<const Complex> spectrum, const std::vector<int>& dims) {
  const std::size_t n = spectrum.size();
  Buffer in = allocate(n);
  Buffer out = allocate(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = spectrum[i].real();
    in[i][1] = spectrum[i].imag();
  }
  transform(dims, in.get(), out.get(), FFTW_BACKWARD);
  RealField field;
  field.values.resize(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    field.values[i] = out[i][0] * scale;
    field.max_imag = std::max(field.max_imag, std::abs(out[i][1] * scale));
  }
  return field;
}

void check_size(std::size_t actual, std::size_t expected) {
  if (actual != expected || expected == 0) throw ValidationError("transform size mismatch");
}

}  // namespace

std::vector<Complex> forward_1d(std::span<const double> data) {
  check_size(data.size(), data.size());
  return forward(data, {static_cast<int>(data.size())});
}

RealField inverse_1d_real(std::span<const Complex> spectrum) {
  check_size(spectrum.size(), spectrum.size());
  return inverse(spectrum, {static_cast<int>(spectrum.size())});
}

std::vector<Complex> forward_2d(std::span<const double> data, std::size_t rows, std::size_t cols) {
  check_size(data.size(), rows * cols);
  return forward(data, {static_cast<int>(rows), static_cast<int>(cols)});
}

RealField inverse_2d_real(std::span<const Complex> spectrum, std::size_t rows, std::size_t cols) {
  check_size(spectrum.size(), rows * cols);
  return inverse(spectrum, {static_cast<int>(rows), static_cast<int>(cols)});
}

}  // namespace silab::spectral
