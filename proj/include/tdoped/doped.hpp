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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tdoped/gaussian.hpp"
#include "tdoped/rng.hpp"
#include "tdoped/statevector.hpp"

namespace tdoped {

/// exp(i θ herm(γ_S)); herm(γ_S) is γ_S when Hermitian and -i γ_S otherwise.
struct MonomialTerm {
  std::vector<int> indices;
  double theta = 0.0;
};

class NonGaussianGate {
 public:
  NonGaussianGate() = default;
  explicit NonGaussianGate(std::vector<MonomialTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<MonomialTerm>& terms() const { return terms_; }
  /// Sorted union of the term index sets.
  std::vector<int> support() const;

  /// Terms are applied in list order.
  void apply_in_place(StateVector& psi) const;

 private:
  std::vector<MonomialTerm> terms_;
};

/// |psi> = G_t W_t ... G_1 W_1 G_0 |0^n>.
struct DopedCircuit {
  int n = 0;
  int kappa = 0;
  std::vector<GaussianUnitary> gaussians;  // t + 1 layers
  std::vector<NonGaussianGate> gates;      // t gates

  int t() const { return static_cast<int>(gates.size()); }
  /// Throws PreconditionError on shape or support violations.
  void validate() const;
};

StateVector prepare(const DopedCircuit& circuit);

/// psi = G (phi ⊗ |0^{n-m}>).
struct CompressedForm {
  GaussianUnitary G;
  int core_qubits = 0;
  StateVector phi;
  /// Born weight left outside |0> on the trailing n - m qubits of G^† psi.
  double residual = 0.0;

  StateVector reassemble() const;
};

CompressedForm compress_state(const DopedCircuit& circuit);

/// U = G_A (u_core ⊗ I) G_B with u_core on the leading core_qubits qubits.
struct UnitaryCompression {
  GaussianUnitary G_A;
  Eigen::MatrixXcd u_core;
  int core_qubits = 0;
  GaussianUnitary G_B;

  StateVector apply(const StateVector& psi) const;
};

UnitaryCompression compress_unitary(const DopedCircuit& circuit);

/// The circuit unitary itself, applied layer by layer.
StateVector apply_circuit(const DopedCircuit& circuit, const StateVector& psi);

/// Uniform kappa-subsets with a single term each, angles uniform in
/// [0, 2π), Gaussian layers from random_orthogonal.
DopedCircuit random_doped_circuit(int n, int t, int kappa, Rng& rng, bool haar_gaussians = true);

struct GateCounts {
  std::uint64_t rotations = 0;
  std::uint64_t reflections = 0;
  std::uint64_t nongaussian_gates = 0;
  std::uint64_t nongaussian_terms = 0;
  std::uint64_t max_support = 0;
};

GateCounts report_gate_counts(const DopedCircuit& circuit);

std::string serialize_circuit(const DopedCircuit& circuit);
DopedCircuit parse_circuit(std::string_view text);

}  // namespace tdoped
