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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "silab/error.hpp"

namespace silab::sifit {
namespace {

using bell::CorrelationTable;
using bell::HiddenState;

constexpr double kSqrt2 = std::numbers::sqrt2;

// Minimal SI violation for singlet targets at the standard angles over the 16
// deterministic strategies. Frozen from an independent HiGHS solve of the
// same program (0.025888347648318436), which matches (sqrt 2 - 1) / 16.
constexpr double kSingletEpsilon = 0.025888347648318436;

std::vector<HiddenState> strategies() { return bell::enumerate_deterministic_models(); }

double chsh_of_strategy(const bell::Strategy& s) {
  return std::abs(s[0] * s[2] - s[0] * s[3]) + std::abs(s[1] * s[3] + s[1] * s[2]);
}

TEST(MaxChshUnderSi, AllStrategiesGiveTwo) {
  const auto states = strategies();
  double vertex_max = 0.0;  // every SI model is a mixture of these vertices
  for (const auto& s : states) vertex_max = std::max(vertex_max, chsh_of_strategy(*s.strategy));
  EXPECT_EQ(vertex_max, 2.0);
  EXPECT_NEAR(max_chsh_under_si(states), vertex_max, 1e-9);
}

TEST(MaxChshUnderSi, SingleAllPlusStrategy) {
  const auto states = strategies();
  EXPECT_NEAR(max_chsh_under_si(std::span(states.data(), 1)), 2.0, 1e-12);
}

TEST(MaxChshUnderSi, TwoStrategiesWithOppositeBRows) {
  const std::vector<HiddenState> states = {{0, bell::Strategy{1, 1, 1, 1}},
                                           {1, bell::Strategy{1, 1, -1, -1}}};
  // Brute force over the 1-simplex.
  double brute = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double p = k / 1000.0;
    const auto model = bell::deterministic_model(
        states, bell::ConditionalDistribution::shared({p, 1.0 - p}));
    brute = std::max(brute, bell::chsh(model));
  }
  EXPECT_NEAR(brute, 2.0, 1e-12);
  EXPECT_NEAR(max_chsh_under_si(states), brute, 1e-9);
}

TEST(MaxChshUnderSi, RequiresDeterministicStates) {
  const std::vector<HiddenState> states = {{0, std::nullopt}};
  EXPECT_THROW(max_chsh_under_si(states), ValidationError);
  EXPECT_THROW(max_chsh_under_si({}), ValidationError);
}

TEST(FitConditional, ZeroTargetsNeedNoViolation) {
  const auto fit = fit_conditional_distributions(CorrelationTable::of(0, 0, 0, 0), strategies());
  ASSERT_EQ(fit.status, lp::Status::kOptimal);
  EXPECT_NEAR(fit.epsilon, 0.0, 1e-12);
  EXPECT_LT(fit.residual, 1e-12);
}

TEST(FitConditional, PerfectCorrelationNeedsNoViolation) {
  for (bool marginals : {false, true}) {
    const auto fit =
        fit_conditional_distributions(CorrelationTable::of(1, 1, 1, 1), strategies(), marginals);
    ASSERT_EQ(fit.status, lp::Status::kOptimal);
    EXPECT_NEAR(fit.epsilon, 0.0, 1e-12);
    EXPECT_NEAR(fit.chsh, 2.0, 1e-12);
  }
}

TEST(FitConditional, SingletTargetsForceMinimalViolation) {
  const auto targets = bell::singlet_table(bell::standard_angles());
  const auto fit = fit_conditional_distributions(targets, strategies());
  ASSERT_EQ(fit.status, lp::Status::kOptimal);
  EXPECT_LT(fit.residual, 1e-9);
  EXPECT_NEAR(fit.chsh, 2.0 * kSqrt2, 1e-9);
  EXPECT_NEAR(bell::chsh(fit.model), 2.0 * kSqrt2, 1e-9);
  EXPECT_NEAR(fit.epsilon, kSingletEpsilon, 1e-9);
  EXPECT_NEAR(fit.epsilon, (kSqrt2 - 1.0) / 16.0, 1e-9);

  const auto si = bell::is_si(fit.model);
  EXPECT_FALSE(si.independent);
  EXPECT_GT(si.max_deviation, 0.0);

  // E(a1, b1) at angles (0, pi/4).
  const double e11 = bell::expectation(fit.model, bell::Setting::A(1, 0.0),
                                       bell::Setting::B(1, std::numbers::pi / 4));
  EXPECT_NEAR(e11, -std::cos(std::numbers::pi / 4), 1e-9);

  // Zero single-side means per pair.
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      EXPECT_NEAR(bell::a_marginal(fit.model, bell::Setting::A(i), bell::Setting::B(j)), 0.0, 1e-9);
      EXPECT_NEAR(bell::b_marginal(fit.model, bell::Setting::A(i), bell::Setting::B(j)), 0.0, 1e-9);
    }
  }
}

TEST(FitConditional, EpsilonIsEqualWithoutMarginalMatching) {
  const auto targets = bell::singlet_table(bell::standard_angles());
  const auto fit = fit_conditional_distributions(targets, strategies(), false);
  ASSERT_EQ(fit.status, lp::Status::kOptimal);
  EXPECT_NEAR(fit.epsilon, kSingletEpsilon, 1e-9);
}

TEST(FitConditional, UnreachableTargetsAreInfeasible) {
  const auto states = strategies();
  const auto fit = fit_conditional_distributions(CorrelationTable::of(-1, -1, -1, -1),
                                                 std::span(states.data(), 1), false);
  EXPECT_EQ(fit.status, lp::Status::kInfeasible);
}

TEST(FitConditional, RejectsOutOfRangeTargets) {
  EXPECT_THROW(fit_conditional_distributions(CorrelationTable::of(1.5, 0, 0, 0), strategies()),
               ValidationError);
  CorrelationTable missing;
  missing.set(1, 1, 0.0);
  EXPECT_THROW(fit_conditional_distributions(missing, strategies()), ValidationError);
}

TEST(SiViolation, ZeroForSharedDistribution) {
  const auto model = bell::deterministic_model(
      strategies(), bell::ConditionalDistribution::shared(std::vector<double>(16, 1.0 / 16)));
  EXPECT_EQ(si_violation(model), 0.0);
}

TEST(SiViolation, HandComputedTotalVariation) {
  bell::ConditionalDistribution dist;
  std::vector<double> first(16, 0.0);
  std::vector<double> rest(16, 0.0);
  first[0] = 1.0;
  rest[1] = 1.0;
  dist.p = {first, rest, rest, rest};
  // Average (0.25, 0.75, 0, ...): TV to the first pair is 0.75.
  EXPECT_NEAR(si_violation(bell::deterministic_model(strategies(), dist)), 0.75, 1e-15);
}

TEST(SiViolation, FittedSingletIsPositiveAndReproducible) {
  const auto targets = bell::singlet_table(bell::standard_angles());
  const double first = si_violation(fit_conditional_distributions(targets, strategies()).model);
  const double second = si_violation(fit_conditional_distributions(targets, strategies()).model);
  EXPECT_GT(first, 0.0);
  EXPECT_NEAR(first, second, 1e-6);
  EXPECT_EQ(first, second);
}

CorrelationTable random_table(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  return CorrelationTable::of(unit(rng), unit(rng), unit(rng), unit(rng));
}

TEST(FitProperty, SupraClassicalTargetsNeedViolation) {
  std::mt19937_64 rng(101);
  int tested = 0;
  while (tested < 50) {
    const auto t = random_table(rng);
    if (bell::chsh_from_table(t) <= 2.0) continue;
    ++tested;
    const auto fit = fit_conditional_distributions(t, strategies());
    ASSERT_EQ(fit.status, lp::Status::kOptimal);
    EXPECT_LT(fit.residual, 1e-9);
    EXPECT_GT(fit.epsilon, 0.0);
  }
}

TEST(FitProperty, ZeroEpsilonFitsStayLocal) {
  std::mt19937_64 rng(202);
  std::exponential_distribution<double> exp1(1.0);
  const auto states = strategies();
  for (int trial = 0; trial < 50; ++trial) {
    // Flip-symmetrized SI mixture: zero marginals, same correlations.
    std::vector<double> p(16);
    double total = 0.0;
    for (double& v : p) total += (v = exp1(rng));
    std::vector<double> sym(16);
    for (int s = 0; s < 16; ++s) sym[s] = 0.5 * (p[s] + p[15 - s]) / total;
    const auto targets = bell::correlations(
        bell::deterministic_model(states, bell::ConditionalDistribution::shared(sym)));
    const auto fit = fit_conditional_distributions(targets, states);
    ASSERT_EQ(fit.status, lp::Status::kOptimal);
    EXPECT_LT(fit.residual, 1e-9);
    EXPECT_LT(fit.epsilon, 1e-9);
    if (fit.epsilon < 1e-9) {
      EXPECT_LE(fit.chsh, 2.0 + 1e-6);
    }
  }
}

}  // namespace
}  // namespace silab::sifit
