// Copyright 2026 The ucert Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace ucert {

/// Malformed or out-of-range input (shape, domain, file contents).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested (g, T) pair violates the ellipsoid condition.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Renyi order in the gap (3/2, 2) where no certified bound is available.
class UnsupportedOrderError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A construction failed its own post-condition check.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ucert
