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

#include <string>
#include <vector>

#include "tdoped/ortho.hpp"
#include "tdoped/pauli.hpp"
#include "tdoped/statevector.hpp"

namespace tdoped {

/// Fermionic Gaussian unitary G_O with G^† γ_μ G = Σ_ν O_{μν} γ_ν, fixed up
/// to a global phase. Compiled eagerly into plane rotations
/// exp(i (θ/2) (-i γ_μ γ_ν)) and an optional γ_1 gate.
class GaussianUnitary {
 public:
  GaussianUnitary() = default;
  explicit GaussianUnitary(const OrthogonalMatrix& o);

  static GaussianUnitary compile(const OrthogonalMatrix& o) { return GaussianUnitary(o); }
  static GaussianUnitary identity(int n) { return GaussianUnitary(OrthogonalMatrix::identity(2 * n)); }

  int num_qubits() const { return o_.dim() / 2; }
  const OrthogonalMatrix& orthogonal() const { return o_; }
  const GivensProgram& program() const { return program_; }
  std::size_t rotation_count() const { return program_.rotations.size(); }

  /// G_{O^T}; equals G^† up to a global phase.
  GaussianUnitary adjoint() const { return GaussianUnitary(o_.transpose()); }

  StateVector apply(const StateVector& psi) const;
  void apply_in_place(StateVector& psi) const;
  /// Exact inverse of apply_in_place, phase included.
  void apply_adjoint_in_place(StateVector& psi) const;
  StateVector apply_adjoint(const StateVector& psi) const;

  /// One header line, then "mu nu angle" per rotation in product order.
  std::string dump() const;

 private:
  void check(const StateVector& psi) const;

  OrthogonalMatrix o_ = OrthogonalMatrix::identity(0);
  GivensProgram program_;
  std::vector<PauliString> generators_;
};

inline GaussianUnitary compile(const OrthogonalMatrix& o) { return GaussianUnitary(o); }
inline StateVector apply(const GaussianUnitary& g, const StateVector& psi) { return g.apply(psi); }

/// |<0^n|G|0^n>| = 1 within 1e-9.
bool preserves_vacuum(const GaussianUnitary& g);

}  // namespace tdoped
