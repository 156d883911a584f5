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

#include "silab/field_io.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "silab/error.hpp"

namespace silab::io {
namespace {

constexpr double kPi = std::numbers::pi;

wave::SurfaceData random_surface(const wave::SurfaceGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 3.0);
  auto d = wave::SurfaceData::zeros(grid);
  for (double& v : d.f) v = normal(rng);
  for (double& v : d.g) v = normal(rng) * 1e-7;
  return d;
}

cylinder::CylinderData random_cylinder(const cylinder::CylinderGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto d = cylinder::CylinderData::zeros(grid);
  for (double& v : d.f) v = normal(rng);
  for (double& v : d.g) v = normal(rng) * 1e5;
  return d;
}

TEST(SurfaceCsv, HeaderAndLineEndings) {
  const wave::SurfaceGrid grid{8, 8, 1.0, 2.0};
  std::ostringstream out;
  write_csv(out, random_surface(grid, 1));
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "i,j,x1,t,f,g");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n' ? 1 : 0;
  EXPECT_EQ(lines, 1 + grid.size());
}

TEST(SurfaceCsv, RoundTripIsBitExact) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const wave::SurfaceGrid grid{16, 8, 2.0 * kPi, 3.7};
    const auto d = random_surface(grid, seed);
    std::stringstream io;
    write_csv(io, d);
    const auto back = read_surface_csv(io);
    EXPECT_EQ(back.grid.n_x1, grid.n_x1);
    EXPECT_EQ(back.grid.n_t, grid.n_t);
    EXPECT_NEAR(back.grid.length_x1, grid.length_x1, 1e-12);
    EXPECT_NEAR(back.grid.period_t, grid.period_t, 1e-12);
    EXPECT_EQ(back.f, d.f);
    EXPECT_EQ(back.g, d.g);
  }
}

TEST(SurfaceCsv, RowOrderDoesNotMatter) {
  const wave::SurfaceGrid grid{8, 8, 1.0, 1.0};
  const auto d = random_surface(grid, 4);
  std::ostringstream out;
  write_csv(out, d);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  std::reverse(rows.begin(), rows.end());
  std::string shuffled = header + "\n";
  for (const auto& r : rows) shuffled += r + "\n";
  std::istringstream in(shuffled);
  EXPECT_EQ(read_surface_csv(in).f, d.f);
}

TEST(SurfaceCsv, MalformedInputIsRejected) {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_surface_csv(in);
  };
  EXPECT_THROW(parse(""), ValidationError);
  EXPECT_THROW(parse("i,j,x,t,f,g\n"), ValidationError);
  EXPECT_THROW(parse("i,j,x1,t,f,g\n0,0,0,0,1\n"), ValidationError);
  EXPECT_THROW(parse("i,j,x1,t,f,g\n0,0,0,0,1,abc\n"), ValidationError);

  const wave::SurfaceGrid grid{8, 8, 1.0, 1.0};
  std::ostringstream out;
  write_csv(out, random_surface(grid, 5));
  std::string text = out.str();
  text.erase(text.rfind('\n', text.size() - 2) + 1);  // drop the last row
  EXPECT_THROW(parse(text), ValidationError);
}

TEST(CylinderCsv, RoundTripIsBitExact) {
  const cylinder::CylinderGrid grid(0.75, 4, 32);
  const auto d = random_cylinder(grid, 9);
  std::stringstream io;
  write_csv(io, d);
  EXPECT_EQ(io.str().substr(0, 8), "i,x,f,g\n");
  const auto back = read_cylinder_csv(io, 0.75);
  EXPECT_EQ(back.grid.repetitions(), 4);
  EXPECT_EQ(back.grid.size(), 32u);
  EXPECT_EQ(back.f, d.f);
  EXPECT_EQ(back.g, d.g);
}

TEST(CylinderCsv, RejectsIncommensuratePeriod) {
  const cylinder::CylinderGrid grid(1.0, 4, 32);
  std::stringstream io;
  write_csv(io, random_cylinder(grid, 2));
  EXPECT_THROW(read_cylinder_csv(io, 1.5), ValidationError);
}

TEST(Binary, SurfaceHeaderAndRoundTrip) {
  const wave::SurfaceGrid grid{16, 8, 2.0, 3.0};
  const auto d = random_surface(grid, 6);
  std::stringstream io;
  write_binary(io, d);
  const std::string bytes = io.str();
  ASSERT_EQ(bytes.size(), 16 + 2 * 8 * grid.size());
  // Little-endian dimensions: 16 rows then 8 columns.
  EXPECT_EQ(static_cast<unsigned char>(bytes[0]), 16);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 8);
  for (int k : {1, 2, 3, 4, 5, 6, 7, 9, 10, 15}) EXPECT_EQ(bytes[k], 0) << k;
  const auto back = read_surface_binary(io, 2.0, 3.0);
  EXPECT_EQ(back.f, d.f);
  EXPECT_EQ(back.g, d.g);
}

TEST(Binary, CylinderRoundTrip) {
  const cylinder::CylinderGrid grid(1.0, 2, 64);
  const auto d = random_cylinder(grid, 7);
  std::stringstream io;
  write_binary(io, d);
  EXPECT_EQ(static_cast<unsigned char>(io.str()[8]), 1);
  const auto back = read_cylinder_binary(io, 1.0, 2);
  EXPECT_EQ(back.f, d.f);
  EXPECT_EQ(back.g, d.g);
}

TEST(Binary, TruncatedOrMismatchedInputIsRejected) {
  const wave::SurfaceGrid grid{8, 8, 1.0, 1.0};
  std::ostringstream out;
  write_binary(out, random_surface(grid, 8));
  const std::string bytes = out.str();
  std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(read_surface_binary(truncated, 1.0, 1.0), ValidationError);
  std::istringstream header_only(bytes.substr(0, 10));
  EXPECT_THROW(read_surface_binary(header_only, 1.0, 1.0), ValidationError);
  std::istringstream as_cylinder(bytes);
  EXPECT_THROW(read_cylinder_binary(as_cylinder, 1.0, 1), ValidationError);
}

}  // namespace
}  // namespace silab::io
