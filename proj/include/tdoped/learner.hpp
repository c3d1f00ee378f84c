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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdoped/gaussian.hpp"
#include "tdoped/metrology.hpp"
#include "tdoped/ortho.hpp"
#include "tdoped/rng.hpp"
#include "tdoped/state_source.hpp"
#include "tdoped/statevector.hpp"

namespace tdoped {

inline constexpr int kTomographyLimit = 6;

struct LearnBudget {
  int n = 0;
  int t = 0;
  double eps = 0.0;
  double delta = 0.0;
  double c_tom = 1.0;
  std::uint64_t N_corr = 0;
  std::uint64_t N_tom = 0;
  std::uint64_t N_loop = 0;
  /// eps^2 / (4 (n - t)); 0 when t = n.
  double eps_c = 0.0;
  /// t = n: no post-selection register, the whole state is tomographed.
  bool pure_tomography = false;

  std::optional<std::uint64_t> corr_shots_per_group;
  std::optional<std::uint64_t> loop_override;
  std::optional<std::uint64_t> tom_override;

  /// Override, else ceil(N_corr / (2n - 1)).
  std::uint64_t shots_per_group() const;
  std::uint64_t loop_copies() const { return loop_override.value_or(N_loop); }
  std::uint64_t tomography_copies() const { return tom_override.value_or(N_tom); }
};

/// N_corr = ceil(256 n^5 / eps^4 log(12 n^2 / delta)),
/// N_tom = ceil(c_tom 2^t max(t, 1) log(3 / delta) (eps / 2)^-4),
/// N_loop = ceil(2 N_tom + 24 log(3 / delta)).
LearnBudget plan_budget(int n, int t, double eps, double delta, double c_tom = 1.0);

/// Hoeffding shots per group so that every grouped entry is within
/// eps_c / (2n) with probability 1 - delta, which bounds the operator norm
/// error by eps_c: ceil(8 n^2 / eps_c^2 log(2M / delta)), M = n(2n - 1).
std::uint64_t hoeffding_group_shots(int n, double eps_c, double delta);

enum class LearnMode { exact, sampled };

std::string to_string(LearnMode m);
LearnMode parse_learn_mode(const std::string& name);

struct LearnedState {
  int n = 0;
  int t = 0;
  OrthogonalMatrix O_hat;
  StateVector phi_hat;

  /// Ĝ (φ̂ ⊗ |0^{n-t}>).
  StateVector reassemble() const;
};

struct LearnDiagnostics {
  Matrix C_hat;
  std::vector<double> lambdas;
  std::uint64_t correlation_copies = 0;
  std::uint64_t loop_copies = 0;
  std::uint64_t kept = 0;
  std::uint64_t shots_per_pauli = 0;
  double postselect_probability = 0.0;
  bool pure_tomography = false;
  /// Copies drawn from the source in total.
  std::uint64_t copies = 0;
};

struct LearnResult {
  LearnedState state;
  LearnDiagnostics diagnostics;
};

/// Throws BoostingFailure when fewer than N_tom post-selections succeed and
/// PostselectionError when the exact-mode projection is empty.
LearnResult learn(StateSource& source, int t, const LearnBudget& budget, LearnMode mode, Rng& rng);

/// Estimates all 4^t - 1 non-identity Pauli expectations with
/// `shots_per_pauli` ±1 draws each and returns the top eigenvector of
/// (I + Σ est P) / 2^t. Exact mode returns the core unchanged.
StateVector tomography_t_qubits(const StateVector& core, LearnMode mode, std::uint64_t shots_per_pauli, Rng& rng);

struct VerifyReport {
  double trace_distance = 0.0;
  double fidelity = 0.0;
  /// d(φ̂, φ), with φ the normalized projection of Ĝ^† ψ onto |0^{n-t}>.
  double tomography_term = 0.0;
  /// d(φ ⊗ |0^{n-t}>, Ĝ^† ψ).
  double compression_term = 0.0;
  double postselect_rate = 0.0;
};

VerifyReport verify(const LearnedState& learned, const StateVector& psi_true);

std::string serialize_learned(const LearnedState& s);
LearnedState parse_learned(std::string_view text);

}  // namespace tdoped
