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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "silab/error.hpp"

namespace silab::io {
namespace {

std::string format_double(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(17);
  s << v;
  return s.str();
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream s(line);
  while (std::getline(s, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("bad number in CSV: '" + text + "'");
  }
  if (used != text.size()) throw ValidationError("bad number in CSV: '" + text + "'");
  return v;
}

std::size_t parse_index(const std::string& text) {
  const double v = parse_double(text);
  if (v < 0.0 || v != std::floor(v)) throw ValidationError("bad index in CSV: '" + text + "'");
  return static_cast<std::size_t>(v);
}

std::vector<std::vector<std::string>> read_rows(std::istream& in, const std::string& header,
                                                std::size_t width) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ValidationError("unexpected CSV header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_row(line);
    if (cells.size() != width) throw ValidationError("CSV row has wrong column count");
    rows.push_back(std::move(cells));
  }
  return rows;
}

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((v >> (8 * k)) & 0xffU);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw ValidationError("binary field file is truncated");
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  return v;
}

void put_doubles(std::ostream& out, const std::vector<double>& values) {
  for (double v : values) put_u64(out, std::bit_cast<std::uint64_t>(v));
}

std::vector<double> get_doubles(std::istream& in, std::size_t count) {
  std::vector<double> values(count);
  for (double& v : values) v = std::bit_cast<double>(get_u64(in));
  return values;
}

}  // namespace

void write_csv(std::ostream& out, const wave::SurfaceData& data) {
  data.validate();
  const auto& gr = data.grid;
  out << "i,j,x1,t,f,g\n";
  for (std::size_t i = 0; i < gr.n_x1; ++i) {
    for (std::size_t j = 0; j < gr.n_t; ++j) {
      const std::size_t k = gr.index(i, j);
      out << i << ',' << j << ',' << format_double(gr.x1(i)) << ',' << format_double(gr.t(j))
          << ',' << format_double(data.f[k]) << ',' << format_double(data.g[k]) << '\n';
    }
  }
}

wave::SurfaceData read_surface_csv(std::istream& in) {
  const auto rows = read_rows(in, "i,j,x1,t,f,g", 6);
  std::size_t n_x1 = 0;
  std::size_t n_t = 0;
  for (const auto& r : rows) {
    n_x1 = std::max(n_x1, parse_index(r[0]) + 1);
    n_t = std::max(n_t, parse_index(r[1]) + 1);
  }
  if (rows.size() != n_x1 * n_t) throw ValidationError("CSV does not cover a full grid");
  wave::SurfaceGrid grid{n_x1, n_t, 1.0, 1.0};
  wave::SurfaceData data{grid, std::vector<double>(rows.size()), std::vector<double>(rows.size())};
  std::vector<bool> seen(rows.size(), false);
  for (const auto& r : rows) {
    const std::size_t i = parse_index(r[0]);
    const std::size_t j = parse_index(r[1]);
    const std::size_t k = grid.index(i, j);
    if (seen[k]) throw ValidationError("CSV repeats a grid point");
    seen[k] = true;
    if (i == 1) data.grid.length_x1 = parse_double(r[2]) * static_cast<double>(n_x1);
    if (j == 1) data.grid.period_t = parse_double(r[3]) * static_cast<double>(n_t);
    data.f[k] = parse_double(r[4]);
    data.g[k] = parse_double(r[5]);
  }
  data.validate();
  return data;
}

void write_csv(std::ostream& out, const cylinder::CylinderData& data) {
  data.validate();
  out << "i,x,f,g\n";
  for (std::size_t i = 0; i < data.grid.size(); ++i) {
    out << i << ',' << format_double(data.grid.x(i)) << ',' << format_double(data.f[i]) << ','
        << format_double(data.g[i]) << '\n';
  }
}

cylinder::CylinderData read_cylinder_csv(std::istream& in, double period) {
  const auto rows = read_rows(in, "i,x,f,g", 4);
  const std::size_t n = rows.size();
  std::vector<double> f(n);
  std::vector<double> g(n);
  std::vector<bool> seen(n, false);
  double length = 0.0;
  for (const auto& r : rows) {
    const std::size_t i = parse_index(r[0]);
    if (i >= n || seen[i]) throw ValidationError("CSV indices are not 0..n-1");
    seen[i] = true;
    if (i == 1) length = parse_double(r[1]) * static_cast<double>(n);
    f[i] = parse_double(r[2]);
    g[i] = parse_double(r[3]);
  }
  const double ratio = length / period;
  const int reps = static_cast<int>(std::lround(ratio));
  if (std::abs(ratio - reps) > 1e-9 * ratio) {
    throw ValidationError("CSV spatial period is not an integer multiple of T");
  }
  cylinder::CylinderData data{cylinder::CylinderGrid(period, reps, n), std::move(f), std::move(g)};
  data.validate();
  return data;
}

void write_binary(std::ostream& out, const wave::SurfaceData& data) {
  data.validate();
  put_u64(out, data.grid.n_x1);
  put_u64(out, data.grid.n_t);
  put_doubles(out, data.f);
  put_doubles(out, data.g);
}

wave::SurfaceData read_surface_binary(std::istream& in, double length_x1, double period_t) {
  const std::uint64_t rows = get_u64(in);
  const std::uint64_t cols = get_u64(in);
  wave::SurfaceGrid grid{rows, cols, length_x1, period_t};
  grid.validate();
  wave::SurfaceData data{grid, get_doubles(in, grid.size()), get_doubles(in, grid.size())};
  data.validate();
  return data;
}

void write_binary(std::ostream& out, const cylinder::CylinderData& data) {
  data.validate();
  put_u64(out, data.grid.size());
  put_u64(out, 1);
  put_doubles(out, data.f);
  put_doubles(out, data.g);
}

cylinder::CylinderData read_cylinder_binary(std::istream& in, double period, int repetitions) {
  const std::uint64_t rows = get_u64(in);
  const std::uint64_t cols = get_u64(in);
  if (cols != 1) throw ValidationError("cylinder binary file must have one column");
  cylinder::CylinderGrid grid(period, repetitions, rows);
  cylinder::CylinderData data{grid, get_doubles(in, rows), get_doubles(in, rows)};
  data.validate();
  return data;
}

}  // namespace silab::io
