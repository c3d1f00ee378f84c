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
#include <utility>
#include <vector>

#include "tdoped/ortho.hpp"
#include "tdoped/rng.hpp"
#include "tdoped/state_source.hpp"
#include "tdoped/statevector.hpp"

namespace tdoped {

enum class Scheme { exact, pauli_per_entry, grouped };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& name);

struct CorrelationEstimate {
  AntisymmetricMatrix C_hat;
  /// Shots behind each entry (0 for the exact scheme).
  std::uint64_t shots_per_entry = 0;
  Scheme scheme = Scheme::exact;
  /// Copies of the state consumed.
  std::uint64_t copies = 0;
};

/// C_jk = <psi| -i γ_j γ_k |psi> for j < k.
AntisymmetricMatrix correlation_exact(const StateVector& psi);

/// 2n-1 perfect matchings of {1..2n} (round-robin schedule); each pair is
/// (a, b) with a < b.
std::vector<std::vector<std::pair<int, int>>> commuting_groups(int n);

/// pauli_per_entry: each upper entry is the mean of `shots` ±1 draws.
/// grouped: every group rotates the state by a Majorana permutation and
/// samples `shots` joint bitstrings, so all n entries of a group share shots.
CorrelationEstimate correlation_sampled(StateSource& source, std::uint64_t shots, Scheme scheme, Rng& rng);
CorrelationEstimate correlation_sampled(const StateVector& psi, std::uint64_t shots, Scheme scheme, Rng& rng);

/// Number of normal eigenvalues >= 1 - tol.
int gaussian_dimension(const AntisymmetricMatrix& c, double tol = 1e-6);
int gaussian_dimension(const std::vector<double>& lambdas, double tol = 1e-6);

struct DistanceBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> lambdas;
  int t = 0;
};

/// lower = (1 - λ_{t+1})/2, upper = sqrt(Σ_{k>t} (1 - λ_k)/2); 0 <= t < n.
DistanceBounds distance_bounds(const std::vector<double>& lambdas, int t);

struct NearestCompressible {
  StateVector state;
  double distance = 0.0;
  /// Probability of the |0^{n-t}> projection.
  double projection_probability = 0.0;
};

/// Throws PostselectionError when the projection annihilates the state.
NearestCompressible nearest_compressible(const StateVector& psi, int t);

struct TesterConfig {
  int t = 0;
  double eps_a = 0.0;
  double eps_b = 0.4;
  double delta = 0.1;
  Scheme scheme = Scheme::grouped;
  /// Replaces the total sample count N.
  std::optional<std::uint64_t> shot_override;
};

struct TesterResult {
  bool close = false;
  double lambda_hat = 0.0;
  double eps_corr = 0.0;
  double eps_test = 0.0;
  std::uint64_t total_shots = 0;
  std::uint64_t shots_per_group = 0;
  std::vector<double> lambdas;
};

/// N = ceil(16 n^3 / eps_corr^2 * log(4 n^2 / delta)).
std::uint64_t tester_sample_count(int n, double eps_corr, double delta);

inline bool decide(double lambda_hat, double eps_test) { return lambda_hat >= 1.0 - eps_test; }

TesterResult test_gaussian_dimension(StateSource& source, const TesterConfig& config, Rng& rng);

}  // namespace tdoped
