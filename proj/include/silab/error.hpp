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

#ifndef SILAB_ERROR_HPP_
#define SILAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace silab {

/// Input violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reference to a setting, state, or grid index that does not exist.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A numerical routine failed to produce a usable answer.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace silab

#endif  // SILAB_ERROR_HPP_
