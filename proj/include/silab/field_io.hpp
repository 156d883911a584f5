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

#ifndef SILAB_FIELD_IO_HPP_
#define SILAB_FIELD_IO_HPP_

// Field files. CSV (RFC 4180, LF line endings, header row) is the
// authoritative format:
//   surface:  i,j,x1,t,f,g
//   cylinder: i,x,f,g
// The binary layout is a 16-byte header of two little-endian uint64
// dimensions (rows, cols; cols = 1 for cylinder data) followed by f and then
// g as row-major little-endian IEEE-754 doubles. Grid lengths are not stored
// in the binary layout and must be supplied when reading.

#include <iosfwd>

#include "silab/wave_cylinder.hpp"
#include "silab/wave_mixed.hpp"

namespace silab::io {

void write_csv(std::ostream& out, const wave::SurfaceData& data);
wave::SurfaceData read_surface_csv(std::istream& in);

void write_csv(std::ostream& out, const cylinder::CylinderData& data);
/// The circumference T comes from the caller; L is recovered from x.
cylinder::CylinderData read_cylinder_csv(std::istream& in, double period);

void write_binary(std::ostream& out, const wave::SurfaceData& data);
wave::SurfaceData read_surface_binary(std::istream& in, double length_x1, double period_t);

void write_binary(std::ostream& out, const cylinder::CylinderData& data);
cylinder::CylinderData read_cylinder_binary(std::istream& in, double period, int repetitions);

}  // namespace silab::io

#endif  // SILAB_FIELD_IO_HPP_
