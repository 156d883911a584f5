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

#include "silab/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "silab/error.hpp"
#include "silab/pauli.hpp"

namespace silab::bell {
namespace {

void check_setting(const Setting& s, Side expected) {
  if (s.side != expected) {
    throw IndexError(expected == Side::kA ? "expected an A-side setting"
                                          : "expected a B-side setting");
  }
  if (s.index != 1 && s.index != 2) {
    throw IndexError("setting index must be 1 or 2, got " + std::to_string(s.index));
  }
  if (s.angle && !std::isfinite(*s.angle)) {
    throw ValidationError("setting angle must be finite");
  }
}

double product_at(const HiddenVariableModel& model, int a_index, int b_index, std::size_t s) {
  return model.responses.abar[a_index - 1][s] * model.responses.bbar[b_index - 1][s];
}

double weighted_sum(const HiddenVariableModel& model, const Setting& a, const Setting& b,
                    bool use_a, bool use_b) {
  check_setting(a, Side::kA);
  check_setting(b, Side::kB);
  model.validate();
  const auto& p = model.dist.p[pair_index(a.index, b.index)];
  double sum = 0.0;
  for (std::size_t s = 0; s < model.size(); ++s) {
    double term = p[s];
    if (use_a) term *= model.responses.abar[a.index - 1][s];
    if (use_b) term *= model.responses.bbar[b.index - 1][s];
    sum += term;
  }
  return sum;
}

pauli::Matrix2 spin_along(double theta) {
  return std::sin(theta) * pauli::sigma_x() + std::cos(theta) * pauli::sigma_z();
}

// (|+x>|-x> - |-x>|+x>) / sqrt(2)
Eigen::Vector4cd bell_state() {
  const double h = 1.0 / std::numbers::sqrt2;
  Eigen::Vector2cd plus_x(h, h);
  Eigen::Vector2cd minus_x(h, -h);
  return h * (pauli::kron(plus_x, minus_x) - pauli::kron(minus_x, plus_x));
}

}  // namespace

Setting Setting::A(int index, std::optional<double> angle) {
  return Setting{Side::kA, index, angle};
}

Setting Setting::B(int index, std::optional<double> angle) {
  return Setting{Side::kB, index, angle};
}

std::size_t pair_index(int a_index, int b_index) {
  if ((a_index != 1 && a_index != 2) || (b_index != 1 && b_index != 2)) {
    throw IndexError("setting indices must be 1 or 2");
  }
  return static_cast<std::size_t>(2 * (a_index - 1) + (b_index - 1));
}

std::string_view pair_key(std::size_t pair) {
  static constexpr std::array<std::string_view, kPairCount> kKeys = {"a1b1", "a1b2", "a2b1",
                                                                     "a2b2"};
  if (pair >= kPairCount) throw IndexError("setting pair out of range");
  return kKeys[pair];
}

ConditionalDistribution ConditionalDistribution::shared(const std::vector<double>& p) {
  ConditionalDistribution d;
  d.p.fill(p);
  return d;
}

std::size_t HiddenVariableModel::position_of(int id) const {
  auto it = std::find_if(states.begin(), states.end(),
                         [id](const HiddenState& s) { return s.id == id; });
  if (it == states.end()) throw IndexError("unknown hidden state id " + std::to_string(id));
  return static_cast<std::size_t>(it - states.begin());
}

void HiddenVariableModel::validate(double normalization_tol) const {
  const std::size_t n = states.size();
  if (n == 0) throw ValidationError("model has no hidden states");
  std::set<int> ids;
  for (const auto& s : states) {
    if (!ids.insert(s.id).second) {
      throw ValidationError("duplicate hidden state id " + std::to_string(s.id));
    }
    if (s.strategy) {
      for (int v : *s.strategy) {
        if (v != 1 && v != -1) throw ValidationError("strategy entries must be +1 or -1");
      }
    }
  }
  auto check_rows = [n](const std::array<std::vector<double>, 2>& rows, const char* name) {
    for (const auto& row : rows) {
      if (row.size() != n) throw ValidationError(std::string(name) + " has wrong state count");
      for (double v : row) {
        if (!(v >= -1.0 && v <= 1.0)) {
          throw ValidationError(std::string(name) + " entry outside [-1, 1]");
        }
      }
    }
  };
  check_rows(responses.abar, "abar");
  check_rows(responses.bbar, "bbar");
  for (std::size_t pair = 0; pair < kPairCount; ++pair) {
    const auto& p = dist.p[pair];
    if (p.size() != n) {
      throw ValidationError("distribution " + std::string(pair_key(pair)) +
                            " has wrong state count");
    }
    double total = 0.0;
    for (double v : p) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ValidationError("negative or non-finite probability in " +
                              std::string(pair_key(pair)));
      }
      total += v;
    }
    if (std::abs(total - 1.0) > normalization_tol) {
      throw ValidationError("distribution " + std::string(pair_key(pair)) +
                            " is not normalized (sum " + std::to_string(total) + ")");
    }
  }
}

HiddenVariableModel deterministic_model(std::vector<HiddenState> states,
                                        ConditionalDistribution dist) {
  HiddenVariableModel model;
  const std::size_t n = states.size();
  for (auto& row : model.responses.abar) row.resize(n);
  for (auto& row : model.responses.bbar) row.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!states[s].strategy) {
      throw ValidationError("state " + std::to_string(states[s].id) + " has no strategy");
    }
    const Strategy& st = *states[s].strategy;
    model.responses.abar[0][s] = st[0];
    model.responses.abar[1][s] = st[1];
    model.responses.bbar[0][s] = st[2];
    model.responses.bbar[1][s] = st[3];
  }
  model.states = std::move(states);
  model.dist = std::move(dist);
  return model;
}

CorrelationTable CorrelationTable::of(double e11, double e12, double e21, double e22) {
  CorrelationTable t;
  t.e = {e11, e12, e21, e22};
  return t;
}

double CorrelationTable::at(int a_index, int b_index) const {
  const auto& v = e[pair_index(a_index, b_index)];
  if (!v) {
    throw ValidationError("correlation table missing entry " +
                          std::string(pair_key(pair_index(a_index, b_index))));
  }
  return *v;
}

void CorrelationTable::set(int a_index, int b_index, double value) {
  e[pair_index(a_index, b_index)] = value;
}

SettingAngles standard_angles() { return scan_angles(std::numbers::pi / 4.0); }

SettingAngles scan_angles(double theta) { return {0.0, 2.0 * theta, theta, 3.0 * theta}; }

double expectation_given_state(const HiddenVariableModel& model, const Setting& a,
                               const Setting& b, const HiddenState& state) {
  check_setting(a, Side::kA);
  check_setting(b, Side::kB);
  const std::size_t s = model.position_of(state.id);
  return product_at(model, a.index, b.index, s);
}

double expectation(const HiddenVariableModel& model, const Setting& a, const Setting& b) {
  return weighted_sum(model, a, b, true, true);
}

double a_marginal(const HiddenVariableModel& model, const Setting& a, const Setting& b) {
  return weighted_sum(model, a, b, true, false);
}

double b_marginal(const HiddenVariableModel& model, const Setting& a, const Setting& b) {
  return weighted_sum(model, a, b, false, true);
}

CorrelationTable correlations(const HiddenVariableModel& model) {
  CorrelationTable t;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) t.set(i, j, expectation(model, Setting::A(i), Setting::B(j)));
  }
  return t;
}

double chsh(const HiddenVariableModel& model) { return chsh_from_table(correlations(model)); }

double chsh_from_table(const CorrelationTable& t) {
  return std::abs(t.at(1, 1) - t.at(1, 2)) + std::abs(t.at(2, 2) + t.at(2, 1));
}

SiCheck is_si(const HiddenVariableModel& model, double tol) {
  model.validate();
  double d = 0.0;
  for (std::size_t s = 0; s < model.size(); ++s) {
    double lo = model.dist.p[0][s];
    double hi = lo;
    for (std::size_t pair = 1; pair < kPairCount; ++pair) {
      lo = std::min(lo, model.dist.p[pair][s]);
      hi = std::max(hi, model.dist.p[pair][s]);
    }
    d = std::max(d, hi - lo);
  }
  return {d <= tol, d};
}

std::vector<HiddenState> enumerate_deterministic_models() {
  std::vector<HiddenState> out;
  out.reserve(16);
  for (int id = 0; id < 16; ++id) {
    Strategy st{};
    for (int k = 0; k < 4; ++k) st[k] = ((id >> (3 - k)) & 1) ? -1 : 1;
    out.push_back({id, st});
  }
  return out;
}

double singlet_correlation(double angle_a, double angle_b) {
  if (!std::isfinite(angle_a) || !std::isfinite(angle_b)) {
    throw ValidationError("singlet angles must be finite");
  }
  const Eigen::Vector4cd psi = bell_state();
  const pauli::Matrix4 op = pauli::kron(spin_along(angle_a), spin_along(angle_b));
  return psi.dot(op * psi).real();  // dot() conjugates the left operand
}

CorrelationTable singlet_table(const SettingAngles& x) {
  return CorrelationTable::of(singlet_correlation(x.a1, x.b1), singlet_correlation(x.a1, x.b2),
                              singlet_correlation(x.a2, x.b1), singlet_correlation(x.a2, x.b2));
}

}  // namespace silab::bell
