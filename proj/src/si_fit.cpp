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

#include "silab/si_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "silab/error.hpp"

namespace silab::sifit {
namespace {

using bell::HiddenState;
using bell::kPairCount;

constexpr std::array<std::array<int, 2>, kPairCount> kPairs = {{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};

const bell::Strategy& strategy_of(const HiddenState& s) {
  if (!s.strategy) {
    throw ValidationError("state " + std::to_string(s.id) + " needs a deterministic strategy");
  }
  return *s.strategy;
}

int a_value(const bell::Strategy& st, int a_index) { return st[a_index - 1]; }
int b_value(const bell::Strategy& st, int b_index) { return st[1 + b_index]; }

void require_states(std::span<const HiddenState> states) {
  if (states.empty()) throw ValidationError("hidden state set is empty");
  for (const auto& s : states) strategy_of(s);
}

}  // namespace

double max_chsh_under_si(std::span<const HiddenState> states) {
  require_states(states);
  const std::size_t n = states.size();
  double best = -1.0;
  // |X| + |Y| is the max of the four signed combinations, each linear in P.
  for (int sx : {1, -1}) {
    for (int sy : {1, -1}) {
      lp::LinearProgram prog(n, lp::Sense::kMaximize);
      for (std::size_t s = 0; s < n; ++s) {
        const auto& st = strategy_of(states[s]);
        const double x = a_value(st, 1) * (b_value(st, 1) - b_value(st, 2));
        const double y = a_value(st, 2) * (b_value(st, 2) + b_value(st, 1));
        prog.objective[s] = sx * x + sy * y;
      }
      prog.add_equality(std::vector<double>(n, 1.0), 1.0);
      const lp::Solution sol = lp::solve_lp(prog);
      if (sol.status != lp::Status::kOptimal) {
        throw SolverError("SI CHSH program ended " + std::string(lp::to_string(sol.status)) +
                          " after " + std::to_string(sol.iterations) + " iterations");
      }
      best = std::max(best, sol.objective);
    }
  }
  return best;
}

FitResult fit_conditional_distributions(const bell::CorrelationTable& targets,
                                        std::span<const HiddenState> states,
                                        bool match_marginals) {
  require_states(states);
  for (const auto& [i, j] : kPairs) {
    const double e = targets.at(i, j);
    if (!(e >= -1.0 && e <= 1.0)) throw ValidationError("target correlation outside [-1, 1]");
  }

  const std::size_t n = states.size();
  const std::size_t q0 = kPairCount * n;
  const std::size_t eps = q0 + n;
  const std::size_t vars = eps + 1;
  auto p_col = [n](std::size_t pair, std::size_t s) { return pair * n + s; };

  lp::LinearProgram prog(vars, lp::Sense::kMinimize);
  prog.objective[eps] = 1.0;

  for (std::size_t pair = 0; pair < kPairCount; ++pair) {
    const auto [ai, bi] = kPairs[pair];
    std::vector<double> norm(vars, 0.0);
    std::vector<double> corr(vars, 0.0);
    std::vector<double> a_mean(vars, 0.0);
    std::vector<double> b_mean(vars, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      const auto& st = strategy_of(states[s]);
      norm[p_col(pair, s)] = 1.0;
      corr[p_col(pair, s)] = a_value(st, ai) * b_value(st, bi);
      a_mean[p_col(pair, s)] = a_value(st, ai);
      b_mean[p_col(pair, s)] = b_value(st, bi);
    }
    prog.add_equality(std::move(norm), 1.0);
    prog.add_equality(std::move(corr), targets.at(ai, bi));
    if (match_marginals) {
      prog.add_equality(std::move(a_mean), 0.0);
      prog.add_equality(std::move(b_mean), 0.0);
    }
  }
  std::vector<double> q_norm(vars, 0.0);
  for (std::size_t s = 0; s < n; ++s) q_norm[q0 + s] = 1.0;
  prog.add_equality(std::move(q_norm), 1.0);

  // |P(s|pair) - Q(s)| <= eps
  for (std::size_t pair = 0; pair < kPairCount; ++pair) {
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<double> above(vars, 0.0);
      above[p_col(pair, s)] = 1.0;
      above[q0 + s] = -1.0;
      above[eps] = -1.0;
      std::vector<double> below(vars, 0.0);
      below[p_col(pair, s)] = -1.0;
      below[q0 + s] = 1.0;
      below[eps] = -1.0;
      prog.add_upper(std::move(above), 0.0);
      prog.add_upper(std::move(below), 0.0);
    }
  }

  const lp::Solution sol = lp::solve_lp(prog);
  FitResult out;
  out.status = sol.status;
  if (sol.status != lp::Status::kOptimal) return out;

  // Simplex output can carry roundoff-level negatives.
  auto clean = [](double v) { return (v < 0.0 && v > -1e-12) ? 0.0 : v; };
  bell::ConditionalDistribution dist;
  for (std::size_t pair = 0; pair < kPairCount; ++pair) {
    dist.p[pair].resize(n);
    for (std::size_t s = 0; s < n; ++s) dist.p[pair][s] = clean(sol.x[p_col(pair, s)]);
  }
  out.reference.resize(n);
  for (std::size_t s = 0; s < n; ++s) out.reference[s] = clean(sol.x[q0 + s]);
  out.epsilon = std::max(0.0, sol.x[eps]);
  out.model = bell::deterministic_model({states.begin(), states.end()}, std::move(dist));
  out.model.validate();

  const bell::CorrelationTable fitted = bell::correlations(out.model);
  for (const auto& [i, j] : kPairs) {
    out.residual = std::max(out.residual, std::abs(fitted.at(i, j) - targets.at(i, j)));
  }
  out.chsh = bell::chsh_from_table(fitted);
  return out;
}

double si_violation(const bell::HiddenVariableModel& model) {
  model.validate();
  const std::size_t n = model.size();
  std::vector<double> mean(n, 0.0);
  for (const auto& p : model.dist.p) {
    for (std::size_t s = 0; s < n; ++s) mean[s] += p[s] / static_cast<double>(kPairCount);
  }
  double worst = 0.0;
  for (const auto& p : model.dist.p) {
    double l1 = 0.0;
    for (std::size_t s = 0; s < n; ++s) l1 += std::abs(p[s] - mean[s]);
    worst = std::max(worst, 0.5 * l1);
  }
  return worst;
}

}  // namespace silab::sifit
