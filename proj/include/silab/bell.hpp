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

#ifndef SILAB_BELL_HPP_
#define SILAB_BELL_HPP_

// Finite hidden-variable models for the two-setting, two-party Bell
// experiment: factorizable response tables, setting-conditioned state
// distributions, the CHSH functional, and the singlet-state oracle.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace silab::bell {

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kSiTolerance = 1e-9;
inline constexpr std::size_t kPairCount = 4;

enum class Side { kA, kB };

struct Setting {
  Side side = Side::kA;
  int index = 1;  // 1 or 2
  std::optional<double> angle;

  static Setting A(int index, std::optional<double> angle = std::nullopt);
  static Setting B(int index, std::optional<double> angle = std::nullopt);
};

/// Deterministic outcomes (A(a1), A(a2), B(b1), B(b2)), each +1 or -1.
using Strategy = std::array<int, 4>;

struct HiddenState {
  int id = 0;
  std::optional<Strategy> strategy;

  friend bool operator==(const HiddenState&, const HiddenState&) = default;
};

/// Local response expectations. abar[i][s] is the mean A-outcome for setting
/// a_{i+1} in state s; bbar likewise on the B side. Neither table has an axis
/// for the distant setting, so factorizability holds by construction.
struct ResponseTable {
  std::array<std::vector<double>, 2> abar;
  std::array<std::vector<double>, 2> bbar;
};

/// Index of the setting pair (a_i, b_j) in pair-indexed arrays:
/// a1b1 = 0, a1b2 = 1, a2b1 = 2, a2b2 = 3.
std::size_t pair_index(int a_index, int b_index);
std::string_view pair_key(std::size_t pair);

/// P(state | a, b), one probability vector per setting pair.
struct ConditionalDistribution {
  std::array<std::vector<double>, kPairCount> p;

  /// The same distribution for every setting pair.
  static ConditionalDistribution shared(const std::vector<double>& p);
};

struct HiddenVariableModel {
  std::vector<HiddenState> states;
  ResponseTable responses;
  ConditionalDistribution dist;

  std::size_t size() const { return states.size(); }

  /// Position of the state with this id; throws IndexError when absent.
  std::size_t position_of(int id) const;

  /// Throws ValidationError on inconsistent sizes, duplicate ids, responses
  /// outside [-1, 1], negative probabilities, or a pair distribution whose
  /// sum differs from 1 by more than `normalization_tol`.
  void validate(double normalization_tol = kNormalizationTolerance) const;
};

/// Builds the response table from each state's strategy.
HiddenVariableModel deterministic_model(std::vector<HiddenState> states,
                                        ConditionalDistribution dist);

struct CorrelationTable {
  std::array<std::optional<double>, kPairCount> e;

  static CorrelationTable of(double e11, double e12, double e21, double e22);

  /// Throws ValidationError when the entry is missing.
  double at(int a_index, int b_index) const;
  void set(int a_index, int b_index, double value);
};

struct SettingAngles {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

/// The angles (0, pi/2, pi/4, 3pi/4) at which the singlet reaches 2*sqrt(2).
SettingAngles standard_angles();

/// The one-parameter family (0, 2*theta, theta, 3*theta).
SettingAngles scan_angles(double theta);

double expectation_given_state(const HiddenVariableModel& model, const Setting& a,
                               const Setting& b, const HiddenState& state);

/// Sum over states of abar(a) * bbar(b) * P(state | a, b).
double expectation(const HiddenVariableModel& model, const Setting& a, const Setting& b);

/// Sum over states of abar(a) * P(state | a, b). Depends on b only through P.
double a_marginal(const HiddenVariableModel& model, const Setting& a, const Setting& b);
double b_marginal(const HiddenVariableModel& model, const Setting& a, const Setting& b);

CorrelationTable correlations(const HiddenVariableModel& model);

/// |E(a1,b1) - E(a1,b2)| + |E(a2,b2) + E(a2,b1)|
double chsh(const HiddenVariableModel& model);
double chsh_from_table(const CorrelationTable& table);

struct SiCheck {
  bool independent = false;
  double max_deviation = 0.0;
};

/// max_deviation is the largest |P(s|a,b) - P(s|a',b')| over pairs and states.
SiCheck is_si(const HiddenVariableModel& model, double tol = kSiTolerance);

/// All 16 deterministic strategies. Strategy bits are read most significant
/// first as (A(a1), A(a2), B(b1), B(b2)) with a set bit meaning -1, so id 0
/// is the all +1 strategy.
std::vector<HiddenState> enumerate_deterministic_models();

/// <psi| (n_a . sigma) (x) (n_b . sigma) |psi> for the two-qubit singlet,
/// with n(theta) = (sin theta, 0, cos theta). Computed by explicit 4x4
/// matrix algebra, not from the closed form -cos(a - b).
double singlet_correlation(double angle_a, double angle_b);

CorrelationTable singlet_table(const SettingAngles& angles);

}  // namespace silab::bell

#endif  // SILAB_BELL_HPP_
