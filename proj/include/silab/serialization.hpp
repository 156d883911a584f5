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

#ifndef SILAB_SERIALIZATION_HPP_
#define SILAB_SERIALIZATION_HPP_

// JSON documents for models, fit results, and the operator-square report.
//
// Model layout:
//   {"states": [{"id": 0, "strategy": [1, 1, 1, 1]}, ...],
//    "abar": [[...], [...]], "bbar": [[...], [...]],
//    "dist": {"a1b1": [...], "a1b2": [...], "a2b1": [...], "a2b2": [...]}}

#include "json.hpp"

#include "silab/bell.hpp"
#include "silab/contextuality.hpp"
#include "silab/si_fit.hpp"

namespace silab::json_io {

using Json = nlohmann::json;

Json to_json(const bell::HiddenVariableModel& model);

/// Throws ValidationError on a malformed document or an invalid model.
bell::HiddenVariableModel model_from_json(const Json& doc);

Json to_json(const sifit::FitResult& fit);

Json ks_report(const ks::OperatorSquare& sq, const ks::AlgebraReport& algebra,
               const ks::SearchResult& search);

}  // namespace silab::json_io

#endif  // SILAB_SERIALIZATION_HPP_
