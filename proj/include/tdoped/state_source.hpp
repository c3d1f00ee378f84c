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

#include <cstdint>

#include "tdoped/statevector.hpp"

namespace tdoped {

/// Copy oracle for an unknown state. Consumers never see the state except
/// through copies, and every copy drawn is counted.
///
/// copies(k) hands back one representative of k identical copies. Callers use
/// it only when each of the k copies would be measured independently in the
/// same basis, where sampling k outcomes from one Born distribution has the
/// same law as measuring k fresh copies.
class StateSource {
 public:
  explicit StateSource(StateVector psi) : psi_(std::move(psi)) {}

  int num_qubits() const { return psi_.num_qubits(); }

  StateVector copy() {
    ++used_;
    return psi_;
  }

  StateVector copies(std::uint64_t count) {
    used_ += count;
    return psi_;
  }

  std::uint64_t copies_used() const { return used_; }

 private:
  StateVector psi_;
  std::uint64_t used_ = 0;
};

}  // namespace tdoped
