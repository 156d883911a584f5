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

// Acceptance run: one PASS/FAIL line per criterion, with its runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "silab/bell.hpp"
#include "silab/contextuality.hpp"
#include "silab/rng.hpp"
#include "silab/si_fit.hpp"
#include "silab/wave_cylinder.hpp"
#include "silab/wave_mixed.hpp"

namespace {

using namespace silab;

constexpr double kPi = std::numbers::pi;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
constexpr double kSingletEpsilon = 0.025888347648318436;
constexpr double kBumpTail64 = 0.23420259447821015;
// Seed 4, T = 1, r = 4, n = 128, stream "wave-cylinder".
constexpr double kRawPeriodicityResidual = 42.243682301164093;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Outcome criterion1() {
  const auto states = bell::enumerate_deterministic_models();
  bool all_two = states.size() == 16;
  for (const auto& s : states) {
    all_two = all_two &&
              bell::chsh(bell::deterministic_model({s}, bell::ConditionalDistribution::shared({1.0}))) == 2.0;
  }
  const double si_max = sifit::max_chsh_under_si(states);
  return {all_two && std::abs(si_max - 2.0) <= 1e-9,
          "16 strategies at S=2: " + std::string(all_two ? "yes" : "no") + ", max_chsh_under_si=" + fmt(si_max)};
}

Outcome criterion2() {
  double dev = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double a = 2.0 * kPi * k / 100.0;
    const double b = 0.3 - kPi * k / 45.0;
    dev = std::max(dev, std::abs(bell::singlet_correlation(a, b) + std::cos(a - b)));
  }
  const double s = bell::chsh_from_table(bell::singlet_table(bell::standard_angles()));
  return {dev <= 1e-12 && std::abs(s - kTsirelson) <= 1e-9,
          "max |E + cos(a-b)|=" + fmt(dev) + ", S=" + fmt(s)};
}

Outcome criterion3() {
  const auto states = bell::enumerate_deterministic_models();
  const auto targets = bell::singlet_table(bell::standard_angles());
  const auto a = sifit::fit_conditional_distributions(targets, states);
  const auto b = sifit::fit_conditional_distributions(targets, states);
  const bool ok = a.status == lp::Status::kOptimal && a.residual < 1e-9 &&
                  std::abs(a.chsh - kTsirelson) <= 1e-9 && a.epsilon > 0.0 &&
                  std::abs(a.epsilon - b.epsilon) <= 1e-6 &&
                  std::abs(a.epsilon - kSingletEpsilon) <= 1e-6;
  return {ok, "status=" + std::string(lp::to_string(a.status)) + ", residual=" + fmt(a.residual) +
                  ", chsh=" + fmt(a.chsh) + ", epsilon=" + fmt(a.epsilon) + " (frozen " +
                  fmt(kSingletEpsilon) + ")"};
}

Outcome criterion4() {
  const auto sweep = cli::necessity_sweep(200, 2026);
  const bool ok = sweep.non_optimal == 0 && sweep.supra_tables == 200 && sweep.supra_positive == 200 &&
                  sweep.local_tables == 200 && sweep.local_zero == 200;
  return {ok, "supra " + std::to_string(sweep.supra_positive) + "/200 with epsilon>0 (min " +
                  fmt(sweep.supra_min_epsilon) + "), local " + std::to_string(sweep.local_zero) +
                  "/200 with epsilon<1e-9 (max " + fmt(sweep.local_max_epsilon) + ")"};
}

Outcome criterion5() {
  const wave::SurfaceGrid grid{32, 32, 2.0 * kPi, 2.0 * kPi};
  std::string passing;
  int count = 0;
  std::string detail;
  for (auto o : {wave::ConeOrientation::kOmegaDominant, wave::ConeOrientation::kKDominant}) {
    const auto r = cli::stability_probe(grid, o, 10.0, 5.0);
    double allowed = 0.0;
    double growth = 0.0;
    for (const auto& p : r.probes) (p.allowed ? allowed : growth) = std::max(p.allowed ? allowed : growth, p.error);
    detail += std::string(wave::to_string(o)) + (r.passed ? " pass" : " fail") + " (amp dev " +
              fmt(allowed) + ", growth err " + fmt(growth) + "); ";
    if (r.passed) {
      ++count;
      passing = wave::to_string(o);
    }
  }
  return {count == 1, detail + "stable orientation: " + (count == 1 ? passing : "ambiguous")};
}

Outcome criterion6() {
  const wave::SurfaceGrid grid{64, 64, 2.0 * kPi, 2.0 * kPi};
  const auto projected =
      wave::project_to_cone(wave::raised_cosine_bump(grid),
                            wave::ConeMask::make(grid, wave::ConeOrientation::kOmegaDominant));
  const double tail = wave::tail_mass(projected, wave::bump_support(grid));
  return {tail >= 1e-4 && std::abs(tail - kBumpTail64) <= 1e-9,
          "tail_mass=" + fmt(tail) + " (frozen " + fmt(kBumpTail64) + ")"};
}

Outcome criterion7() {
  const double err = cli::dual_evolution_error(32);
  return {err < 1e-6, "max relative difference=" + fmt(err)};
}

Outcome criterion8() {
  const cylinder::CylinderGrid grid(1.0, 4, 128);
  Rng rng = Rng(4).split("wave-cylinder");
  auto raw = cylinder::CylinderData::zeros(grid);
  for (double& v : raw.f) v = rng.normal();
  for (double& v : raw.g) v = rng.normal();
  const auto projected = cylinder::project_periodic(raw);
  const double periodic = cylinder::periodicity_residual(projected);
  double repeat = 0.0;
  for (double t : {0.0, 0.37, 1.9}) repeat = std::max(repeat, cylinder::spatial_repetition_residual(projected, t));
  const double unprojected = cylinder::periodicity_residual(raw);
  const double e0 = cylinder::energy(projected);
  double drift = 0.0;
  for (int s = 0; s <= 60; ++s) {
    drift = std::max(drift, std::abs(cylinder::energy(cylinder::evolve_cylinder(projected, 0.05 * s)) - e0) / e0);
  }
  const bool ok = periodic < 1e-9 && repeat < 1e-9 && unprojected > 1e-2 &&
                  std::abs(unprojected / kRawPeriodicityResidual - 1.0) <= 1e-9 && drift < 1e-10;
  return {ok, "projected periodicity=" + fmt(periodic) + ", repetition=" + fmt(repeat) +
                  ", unprojected=" + fmt(unprojected) + " (frozen " + fmt(kRawPeriodicityResidual) +
                  "), energy drift=" + fmt(drift)};
}

Outcome criterion9() {
  const auto sq = ks::build_square();
  const auto algebra = ks::verify_algebra(sq);
  const auto full = ks::exhaustive_value_search(sq);
  const auto rows = ks::exhaustive_value_search(sq, ks::ConstraintSet::rows_only());
  const bool ok = algebra.ok() && algebra.commutator_max < 1e-12 &&
                  sq.row_targets == std::array<int, 3>{1, 1, 1} &&
                  sq.col_targets == std::array<int, 3>{1, 1, -1} && full.consistent == 0 &&
                  full.examined == 512 && rows.consistent == 64;
  return {ok, "commutator_max=" + fmt(algebra.commutator_max) + ", consistent " +
                  std::to_string(full.consistent) + "/" + std::to_string(full.examined) +
                  ", rows-only " + std::to_string(rows.consistent)};
}

Outcome criterion10() {
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"chsh-scan", R"({"points": 101})"},
      {"si-fit", R"({"seed": 7, "random_tables": 200, "scan_points": 31})"},
      {"wave-mixed", R"({"seed": 42, "ensemble": 2000})"},
      {"wave-cylinder", R"({"seed": 4, "repetitions": 4, "n": 128})"},
      {"ks-check", "{}"}};
  std::string mismatched;
  for (const auto& [name, body] : configs) {
    cli::ExperimentConfig cfg;
    cfg.experiment = name;
    cfg.params = cli::Json::parse(body);
    cfg.seed = cfg.params.value("seed", std::uint64_t{0});
    cfg.params.erase("seed");
    const auto a = cli::run(cfg);
    const auto b = cli::run(cfg);
    auto ja = a.to_json();
    auto jb = b.to_json();
    ja.erase("duration_seconds");
    jb.erase("duration_seconds");
    bool same = ja.dump(2) == jb.dump(2) && a.scans.size() == b.scans.size();
    for (std::size_t k = 0; same && k < a.scans.size(); ++k) {
      same = cli::to_csv(a.scans[k]) == cli::to_csv(b.scans[k]) &&
             cli::to_svg(a.scans[k]) == cli::to_svg(b.scans[k]);
    }
    if (!same) mismatched += name + " ";
  }
  return {mismatched.empty(),
          mismatched.empty() ? "5 experiments repeated byte-identically" : "differs: " + mismatched};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double budget_seconds;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, 1.0, criterion1},  {2, 1.0, criterion2},  {3, 5.0, criterion3},  {4, 60.0, criterion4},
      {5, 5.0, criterion5},  {6, 5.0, criterion6},  {7, 10.0, criterion7}, {8, 5.0, criterion8},
      {9, 1.0, criterion9},  {10, 92.0, criterion10}};
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.passed && secs < c.budget_seconds;
    if (!pass) ++failures;
    std::printf("criterion %2d: %s  [%.3f s / %.0f s]  %s\n", c.id, pass ? "PASS" : "FAIL", secs,
                c.budget_seconds, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
