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

#include "tdoped/metrology.hpp"

#include <algorithm>
#include <cmath>

#include "tdoped/errors.hpp"
#include "tdoped/gaussian.hpp"
#include "tdoped/pauli.hpp"

namespace tdoped {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::exact:
      return "exact";
    case Scheme::pauli_per_entry:
      return "pauli_per_entry";
    case Scheme::grouped:
      return "grouped";
  }
  return "exact";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "exact") return Scheme::exact;
  if (name == "pauli_per_entry") return Scheme::pauli_per_entry;
  if (name == "grouped") return Scheme::grouped;
  throw PreconditionError("unknown measurement scheme '" + name + "'");
}

AntisymmetricMatrix correlation_exact(const StateVector& psi) {
  const int n = psi.num_qubits();
  Matrix c = Matrix::Zero(2 * n, 2 * n);
  for (int j = 1; j <= 2 * n; ++j) {
    for (int k = j + 1; k <= 2 * n; ++k) {
      const double v = expectation(psi, majorana_pair(j, k, n));
      c(j - 1, k - 1) = v;
      c(k - 1, j - 1) = -v;
    }
  }
  return AntisymmetricMatrix(c);
}

std::vector<std::vector<std::pair<int, int>>> commuting_groups(int n) {
  if (n < 1) throw PreconditionError("commuting_groups: n must be at least 1");
  const int m = 2 * n - 1;
  std::vector<std::vector<std::pair<int, int>>> groups;
  for (int r = 0; r < m; ++r) {
    std::vector<std::pair<int, int>> g;
    g.emplace_back(r + 1, m + 1);
    for (int k = 1; k < n; ++k) {
      int a = (r + k) % m, b = (r - k + m) % m;
      if (a > b) std::swap(a, b);
      g.emplace_back(a + 1, b + 1);
    }
    std::sort(g.begin(), g.end());
    groups.push_back(std::move(g));
  }
  return groups;
}

CorrelationEstimate correlation_sampled(StateSource& source, std::uint64_t shots, Scheme scheme, Rng& rng) {
  const int n = source.num_qubits();
  const int d = 2 * n;
  CorrelationEstimate est;
  est.scheme = scheme;
  if (scheme == Scheme::exact) {
    est.C_hat = correlation_exact(source.copy());
    est.copies = 1;
    return est;
  }
  if (shots < 1) throw PreconditionError("correlation_sampled: shots must be at least 1");
  est.shots_per_entry = shots;
  Matrix c = Matrix::Zero(d, d);
  const auto inv = 1.0 / static_cast<double>(shots);
  if (scheme == Scheme::pauli_per_entry) {
    const std::uint64_t entries = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(d - 1);
    const StateVector psi = source.copies(entries * shots);
    est.copies = entries * shots;
    for (int j = 1; j <= d; ++j) {
      for (int k = j + 1; k <= d; ++k) {
        const double e = expectation(psi, majorana_pair(j, k, n));
        const std::uint64_t plus = rng.binomial(shots, std::clamp((1.0 + e) / 2.0, 0.0, 1.0));
        const double v = (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) * inv;
        c(j - 1, k - 1) = v;
        c(k - 1, j - 1) = -v;
      }
    }
  } else {
    const auto groups = commuting_groups(n);
    for (const auto& group : groups) {
      Matrix perm = Matrix::Zero(d, d);
      for (int k = 0; k < n; ++k) {
        perm(2 * k, group[static_cast<std::size_t>(k)].first - 1) = 1.0;
        perm(2 * k + 1, group[static_cast<std::size_t>(k)].second - 1) = 1.0;
      }
      const StateVector rotated = GaussianUnitary(OrthogonalMatrix(perm)).apply(source.copies(shots));
      est.copies += shots;
      std::vector<double> probs(rotated.dim());
      for (std::size_t b = 0; b < probs.size(); ++b) probs[b] = std::norm(rotated[b]);
      const auto counts = multinomial_counts(probs, shots, rng);
      for (int k = 0; k < n; ++k) {
        double signed_sum = 0.0;
        for (std::size_t b = 0; b < counts.size(); ++b) {
          if (counts[b] == 0) continue;
          const bool one = (b >> (n - 1 - k)) & 1;
          signed_sum += one ? -static_cast<double>(counts[b]) : static_cast<double>(counts[b]);
        }
        const auto [a, bb] = group[static_cast<std::size_t>(k)];
        c(a - 1, bb - 1) = signed_sum * inv;
        c(bb - 1, a - 1) = -signed_sum * inv;
      }
    }
  }
  est.C_hat = AntisymmetricMatrix(c);
  return est;
}

CorrelationEstimate correlation_sampled(const StateVector& psi, std::uint64_t shots, Scheme scheme, Rng& rng) {
  StateSource source(psi);
  return correlation_sampled(source, shots, scheme, rng);
}

int gaussian_dimension(const std::vector<double>& lambdas, double tol) {
  int count = 0;
  for (double l : lambdas) count += l >= 1.0 - tol ? 1 : 0;
  return count;
}

int gaussian_dimension(const AntisymmetricMatrix& c, double tol) {
  return gaussian_dimension(normal_form(c).lambdas, tol);
}

DistanceBounds distance_bounds(const std::vector<double>& lambdas, int t) {
  const int n = static_cast<int>(lambdas.size());
  if (t < 0 || t >= n) throw PreconditionError("distance_bounds: t must satisfy 0 <= t < n");
  DistanceBounds b;
  b.lambdas = lambdas;
  b.t = t;
  b.lower = (1.0 - lambdas[static_cast<std::size_t>(t)]) / 2.0;
  double sum = 0.0;
  for (int k = t; k < n; ++k) sum += (1.0 - lambdas[static_cast<std::size_t>(k)]) / 2.0;
  b.upper = std::sqrt(std::max(0.0, sum));
  return b;
}

NearestCompressible nearest_compressible(const StateVector& psi, int t) {
  const int n = psi.num_qubits();
  if (t < 0 || t > n) throw PreconditionError("nearest_compressible: t must satisfy 0 <= t <= n");
  NearestCompressible out;
  if (t == n) {
    out.state = psi;
    out.projection_probability = 1.0;
    return out;
  }
  const NormalForm nf = normal_form(correlation_exact(psi));
  const GaussianUnitary g(nf.O);
  const StateVector rotated = g.apply_adjoint(psi);
  std::vector<int> tail, zeros(static_cast<std::size_t>(n - t), 0);
  for (int q = t + 1; q <= n; ++q) tail.push_back(q);
  out.projection_probability = outcome_probability(rotated, tail, zeros);
  out.state = g.apply(postselect(rotated, tail, zeros));
  out.distance = trace_distance(out.state, psi);
  return out;
}

std::uint64_t tester_sample_count(int n, double eps_corr, double delta) {
  const double nn = n;
  return static_cast<std::uint64_t>(std::ceil(16.0 * nn * nn * nn / (eps_corr * eps_corr) * std::log(4.0 * nn * nn / delta)));
}

TesterResult test_gaussian_dimension(StateSource& source, const TesterConfig& config, Rng& rng) {
  const int n = source.num_qubits();
  const int t = config.t;
  if (t < 0 || t >= n) throw PreconditionError("tester: t must satisfy 0 <= t < n");
  if (!(config.delta > 0.0 && config.delta <= 1.0)) throw PreconditionError("tester: delta must lie in (0, 1]");
  if (config.eps_a < 0.0) throw PreconditionError("tester: eps_A must be nonnegative");
  if (!(config.eps_b > std::sqrt((n - t) * config.eps_a))) {
    throw PreconditionError("tester: requires eps_B > sqrt((n - t) eps_A)");
  }
  TesterResult r;
  r.eps_corr = config.eps_b * config.eps_b / (n - t) - config.eps_a;
  r.eps_test = config.eps_b * config.eps_b / (n - t) + config.eps_a;
  if (config.shot_override && *config.shot_override < 1) throw PreconditionError("tester: shot override must be positive");
  CorrelationEstimate est;
  if (config.scheme == Scheme::exact) {
    est = correlation_sampled(source, 0, Scheme::exact, rng);
  } else {
    r.total_shots = config.shot_override ? *config.shot_override : tester_sample_count(n, r.eps_corr, config.delta);
    const std::uint64_t parts = config.scheme == Scheme::grouped
                                    ? static_cast<std::uint64_t>(2 * n - 1)
                                    : static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(2 * n - 1);
    r.shots_per_group = (r.total_shots + parts - 1) / parts;
    est = correlation_sampled(source, r.shots_per_group, config.scheme, rng);
  }
  r.lambdas = normal_form(est.C_hat).lambdas;
  r.lambda_hat = r.lambdas[static_cast<std::size_t>(t)];
  r.close = decide(r.lambda_hat, r.eps_test);
  return r;
}

}  // namespace tdoped
