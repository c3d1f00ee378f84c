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

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tdoped/pauli.hpp"
#include "tdoped/rng.hpp"

namespace tdoped {

using cplx = std::complex<double>;

inline constexpr int kMaxStateQubits = 24;

/// Dense pure state on n qubits. Qubit 1 is the most significant bit of the
/// basis index, so the first qubits of a tensor product are the high bits.
class StateVector {
 public:
  /// |0^n>.
  explicit StateVector(int n = 0);
  static StateVector basis(int n, std::uint64_t index);
  /// Takes ownership of amplitudes; rejects inputs whose norm is off by more
  /// than 1e-10 unless `normalize` is set.
  static StateVector from_amplitudes(int n, std::vector<cplx> amps, bool normalize = false);
  static StateVector random(int n, Rng& rng);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

  /// psi <- exp(i theta P) psi = cos(theta) psi + i sin(theta) P psi.
  void apply_pauli_rotation(const PauliString& p, double theta);
  /// psi <- P psi for any Pauli string (unitary, phase included).
  void apply_pauli(const PauliString& p);
  /// Applies a 2^k x 2^k unitary to the listed 1-based qubits. The first
  /// listed qubit is the most significant bit of the matrix index.
  void apply_dense_unitary(std::span<const int> qubits, const Eigen::MatrixXcd& u);

  /// this ⊗ tail, with this state on the leading qubits.
  StateVector tensor(const StateVector& tail) const;

 private:
  StateVector(int n, std::vector<cplx> amps) : n_(n), amps_(std::move(amps)) {}

  int n_ = 0;
  std::vector<cplx> amps_;
};

cplx inner_product(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);
/// Pure-state trace distance sqrt(1 - |<a|b>|^2), evaluated as the norm of the
/// component of b orthogonal to a so that nearly equal states give ~1e-16.
double trace_distance(const StateVector& a, const StateVector& b);

/// <psi|P|psi> for Hermitian P.
double expectation(const StateVector& psi, const PauliString& p);

struct MeasurementRecord {
  std::vector<int> qubits;
  std::vector<int> outcomes;
  double probability = 0.0;
};

/// Joint Born-rule measurement of the listed qubits; returns the record and
/// the normalized post-measurement state.
std::pair<MeasurementRecord, StateVector> measure_computational(const StateVector& psi,
                                                                std::span<const int> qubits,
                                                                Rng& rng);

/// Marginal distribution over the 2^k outcomes of the listed qubits, indexed
/// with the first listed qubit as the most significant bit.
std::vector<double> marginal_probabilities(const StateVector& psi, std::span<const int> qubits);

double outcome_probability(const StateVector& psi, std::span<const int> qubits,
                           std::span<const int> outcomes);

/// Normalized projection onto the given outcomes. Throws PostselectionError
/// when the outcome has zero probability.
StateVector postselect(const StateVector& psi, std::span<const int> qubits,
                       std::span<const int> outcomes);

/// Squared norm of the part of psi with any of the trailing n-m qubits set.
double tail_weight(const StateVector& psi, int m);

/// Amplitudes of psi restricted to |.>|0^{n-m}>, on the leading m qubits,
/// normalized. Throws PostselectionError if that block is empty.
StateVector leading_core(const StateVector& psi, int m);

/// Dense 2^n x 2^n matrix of a Pauli string built from its basis action.
Eigen::MatrixXcd to_dense(const PauliString& p);

/// Fixed-length samples of a distribution's counts: draws `shots` outcomes and
/// returns how many landed on each index. Sequential conditional binomials,
/// which is exactly the multinomial law of `shots` independent draws.
std::vector<std::uint64_t> multinomial_counts(std::span<const double> probs, std::uint64_t shots,
                                              Rng& rng);

}  // namespace tdoped
