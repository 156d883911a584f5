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

#ifndef SILAB_TOOLS_EXPERIMENTS_HPP_
#define SILAB_TOOLS_EXPERIMENTS_HPP_

// Experiment runners behind the silab command line, plus the pieces of each
// experiment that the acceptance checks call directly.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "silab/wave_mixed.hpp"

namespace silab::cli {

using Json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNumericalFailure = 3;

const std::vector<std::string>& experiment_names();

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  Json params = Json::object();  // experiment parameters, defaults not yet applied
  std::filesystem::path out_dir = "silab_out";
};

/// Reads a JSON config file. Top-level keys are experiment parameters, plus
/// optional "seed" and "experiment" (which must then match `experiment`).
/// Throws ValidationError on unreadable or malformed files.
ExperimentConfig load_config(const std::string& experiment, const std::filesystem::path& path);

/// A scalar result together with the tolerance it is judged against.
struct Check {
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "abs_diff_le", "le", "lt", "ge", "gt"
  double target = 0.0;   // only used by abs_diff_le
  bool passed = false;

  static Check near(double value, double target, double tol);
  static Check at_most(double value, double bound);
  static Check below(double value, double bound);
  static Check at_least(double value, double bound);
  static Check above(double value, double bound);
  Json to_json() const;
};

/// A table written as CSV, and as an SVG line chart when `chart` is set
/// (first column against each of the others).
struct Scan {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  bool chart = false;
};

struct ResultRecord {
  ExperimentConfig config;
  Json resolved_params = Json::object();
  std::map<std::string, Check> checks;
  Json details = Json::object();
  std::vector<Scan> scans;
  double duration_seconds = 0.0;

  bool passed() const;
  /// results.json content; keys sorted.
  Json to_json() const;
};

/// Runs the experiment without touching the file system. Throws
/// ValidationError for bad parameters; numerical trouble surfaces as failed
/// checks or as SolverError.
ResultRecord run(const ExperimentConfig& config);

/// Writes results.json and the scan files into config.out_dir atomically.
void write_results(const ResultRecord& record, std::ostream& warnings);

/// CSV plus optional SVG per scan. Empty scans produce a warning only.
/// Returns the file names written.
std::vector<std::string> emit_plot_data(const ResultRecord& record,
                                        const std::filesystem::path& dir,
                                        std::ostream& warnings);

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string to_csv(const Scan& scan);
std::string to_svg(const Scan& scan);

/// Command line entry point; returns the process exit code.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

// Experiment pieces shared with the acceptance checks.

struct ProbeOutcome {
  double k1 = 0.0;
  double omega = 0.0;
  bool allowed = false;
  double rate = 0.0;
  /// Allowed probes: max |amplitude - 1| over the x2 range. Disallowed
  /// probes: |amplitude(x2_growth) / exp(rate x2_growth) - 1|.
  double error = 0.0;
  bool passed = false;
};

struct StabilityReport {
  wave::ConeOrientation orientation = wave::ConeOrientation::kOmegaDominant;
  std::vector<ProbeOutcome> probes;
  bool passed = false;
};

/// Probe modes (k1, omega) in grid units: (0,1), (1,0), (3,5), (5,3), (1,2),
/// (2,1). Allowed probes carry travelling data and must keep unit amplitude
/// within 1e-6 on [0, x2_max]; disallowed probes carry the pure growing
/// solution and must match exp(rate x2_growth) within 1%.
StabilityReport stability_probe(const wave::SurfaceGrid& grid, wave::ConeOrientation orientation,
                                double x2_max = 10.0, double x2_growth = 5.0);

/// Largest difference between evolve_x2 and evolve_t on an n x n periodic
/// patch of superposed plane waves, relative to the peak field value.
double dual_evolution_error(std::size_t n);

struct NecessitySweep {
  std::size_t supra_tables = 0;
  std::size_t supra_positive = 0;     // fits with epsilon > 0
  double supra_min_epsilon = 0.0;
  std::size_t local_tables = 0;
  std::size_t local_zero = 0;         // fits with epsilon < 1e-9
  double local_max_epsilon = 0.0;
  double max_residual = 0.0;
  std::size_t non_optimal = 0;
};

/// Fits `count` random target tables with CHSH > 2 and `count` tables
/// produced by flip-symmetrized setting-independent mixtures.
NecessitySweep necessity_sweep(std::size_t count, std::uint64_t seed);

}  // namespace silab::cli

#endif  // SILAB_TOOLS_EXPERIMENTS_HPP_
