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

#ifndef SILAB_SI_FIT_HPP_
#define SILAB_SI_FIT_HPP_

// Linear programs over setting-conditioned hidden-state distributions.
//
// With a shared distribution P(state) the CHSH value of any factorizable
// model is capped at 2. Letting P depend on the setting pair lifts the cap;
// fit_conditional_distributions finds the conditional distributions that
// reproduce a target correlation table while staying as close as possible
// (in the max-entry sense) to a single reference distribution.

#include <span>
#include <vector>

#include "silab/bell.hpp"
#include "silab/lp.hpp"

namespace silab::sifit {

struct FitResult {
  bell::HiddenVariableModel model;  // meaningful only when status is optimal
  std::vector<double> reference;    // the common reference distribution Q
  double residual = 0.0;            // max |E_model - target|
  double epsilon = 0.0;             // max |P(s|a,b) - Q(s)|
  double chsh = 0.0;
  lp::Status status = lp::Status::kInfeasible;
};

/// Largest CHSH value reachable by a single setting-independent distribution
/// over the given deterministic states. Throws SolverError if an LP fails.
double max_chsh_under_si(std::span<const bell::HiddenState> states);

/// Minimal-epsilon fit. When match_marginals is set, every pair distribution
/// must also give zero single-side means. Targets outside [-1, 1] throw
/// ValidationError; unreachable targets give status infeasible.
FitResult fit_conditional_distributions(const bell::CorrelationTable& targets,
                                        std::span<const bell::HiddenState> states,
                                        bool match_marginals = true);

/// Max over setting pairs of the total variation distance between
/// P(.|a,b) and the average of the four pair distributions.
double si_violation(const bell::HiddenVariableModel& model);

}  // namespace silab::sifit

#endif  // SILAB_SI_FIT_HPP_
