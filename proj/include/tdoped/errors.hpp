// Copyright 2026 The tdoped Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tdoped {

/// A caller-supplied argument violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested size exceeds what the dense engine supports.
class EngineLimitError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An internal residual check failed. Seeing this means a sign or transpose
/// convention is broken somewhere, not that the input was bad.
class ConventionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Projection onto the requested outcome has zero probability.
class PostselectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fewer successful post-selections than the tomography step needs.
class BoostingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tdoped
