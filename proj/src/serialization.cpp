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

#include "silab/serialization.hpp"

#include <string>

#include "silab/error.hpp"

namespace silab::json_io {

Json to_json(const bell::HiddenVariableModel& model) {
  Json states = Json::array();
  for (const auto& s : model.states) {
    Json entry = {{"id", s.id}};
    if (s.strategy) entry["strategy"] = *s.strategy;
    states.push_back(std::move(entry));
  }
  Json dist = Json::object();
  for (std::size_t pair = 0; pair < bell::kPairCount; ++pair) {
    dist[std::string(bell::pair_key(pair))] = model.dist.p[pair];
  }
  return {{"states", std::move(states)},
          {"abar", model.responses.abar},
          {"bbar", model.responses.bbar},
          {"dist", std::move(dist)}};
}

bell::HiddenVariableModel model_from_json(const Json& doc) {
  bell::HiddenVariableModel model;
  try {
    for (const auto& entry : doc.at("states")) {
      bell::HiddenState s;
      s.id = entry.at("id").get<int>();
      if (entry.contains("strategy")) s.strategy = entry.at("strategy").get<bell::Strategy>();
      model.states.push_back(s);
    }
    model.responses.abar = doc.at("abar").get<std::array<std::vector<double>, 2>>();
    model.responses.bbar = doc.at("bbar").get<std::array<std::vector<double>, 2>>();
    for (std::size_t pair = 0; pair < bell::kPairCount; ++pair) {
      model.dist.p[pair] =
          doc.at("dist").at(std::string(bell::pair_key(pair))).get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model document: ") + e.what());
  }
  model.validate();
  return model;
}

Json to_json(const sifit::FitResult& fit) {
  Json out = {{"status", std::string(lp::to_string(fit.status))},
              {"epsilon", fit.epsilon},
              {"residual", fit.residual},
              {"chsh", fit.chsh}};
  if (fit.status == lp::Status::kOptimal) {
    out["model"] = to_json(fit.model);
    out["reference"] = fit.reference;
    out["si_violation"] = sifit::si_violation(fit.model);
  }
  return out;
}

Json ks_report(const ks::OperatorSquare& sq, const ks::AlgebraReport& algebra,
               const ks::SearchResult& search) {
  return {{"commutator_max", algebra.commutator_max},
          {"row_targets", sq.row_targets},
          {"col_targets", sq.col_targets},
          {"consistent_assignments", search.consistent},
          {"assignments_examined", search.examined},
          {"violations", algebra.violations}};
}

}  // namespace silab::json_io
