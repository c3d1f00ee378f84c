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

#include "tdoped/learner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "json_io.hpp"
#include "tdoped/errors.hpp"
#include "tdoped/pauli.hpp"

namespace tdoped {

namespace {

std::uint64_t ceil_u64(double x) { return static_cast<std::uint64_t>(std::ceil(x)); }

std::vector<int> tail_qubits(int n, int t) {
  std::vector<int> q;
  for (int k = t + 1; k <= n; ++k) q.push_back(k);
  return q;
}

}  // namespace

std::uint64_t LearnBudget::shots_per_group() const {
  if (corr_shots_per_group) return *corr_shots_per_group;
  const auto groups = static_cast<std::uint64_t>(std::max(1, 2 * n - 1));
  return (N_corr + groups - 1) / groups;
}

LearnBudget plan_budget(int n, int t, double eps, double delta, double c_tom) {
  if (n < 1) throw PreconditionError("plan_budget: n must be at least 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw PreconditionError("plan_budget: eps must lie in (0, 1]");
  if (!(delta > 0.0 && delta <= 1.0)) throw PreconditionError("plan_budget: delta must lie in (0, 1]");
  if (t < 0 || t > n) throw PreconditionError("plan_budget: t must satisfy 0 <= t <= n");
  if (!(c_tom > 0.0)) throw PreconditionError("plan_budget: c_tom must be positive");
  LearnBudget b;
  b.n = n;
  b.t = t;
  b.eps = eps;
  b.delta = delta;
  b.c_tom = c_tom;
  const double nn = n;
  b.N_corr = ceil_u64(256.0 * std::pow(nn, 5) / std::pow(eps, 4) * std::log(12.0 * nn * nn / delta));
  b.N_tom = ceil_u64(c_tom * std::ldexp(1.0, t) * std::max(t, 1) * std::log(3.0 / delta) * std::pow(eps / 2.0, -4));
  b.N_loop = ceil_u64(2.0 * static_cast<double>(b.N_tom) + 24.0 * std::log(3.0 / delta));
  b.pure_tomography = t == n;
  b.eps_c = b.pure_tomography ? 0.0 : eps * eps / (4.0 * (n - t));
  return b;
}

std::uint64_t hoeffding_group_shots(int n, double eps_c, double delta) {
  if (n < 1 || !(eps_c > 0.0) || !(delta > 0.0 && delta <= 1.0)) {
    throw PreconditionError("hoeffding_group_shots: invalid arguments");
  }
  const double nn = n;
  const double m = nn * (2.0 * nn - 1.0);
  return ceil_u64(8.0 * nn * nn / (eps_c * eps_c) * std::log(2.0 * m / delta));
}

std::string to_string(LearnMode m) { return m == LearnMode::exact ? "exact" : "sampled"; }

LearnMode parse_learn_mode(const std::string& name) {
  if (name == "exact") return LearnMode::exact;
  if (name == "sampled") return LearnMode::sampled;
  throw PreconditionError("unknown mode '" + name + "'");
}

StateVector LearnedState::reassemble() const {
  return GaussianUnitary(O_hat).apply(phi_hat.tensor(StateVector(n - t)));
}

StateVector tomography_t_qubits(const StateVector& core, LearnMode mode, std::uint64_t shots_per_pauli, Rng& rng) {
  const int t = core.num_qubits();
  if (mode == LearnMode::exact || t == 0) return core;
  if (t > kTomographyLimit) throw EngineLimitError("tomography: t exceeds the tomography limit");
  if (shots_per_pauli < 1) throw PreconditionError("tomography: shots per Pauli must be positive");
  const std::uint64_t dim = std::uint64_t{1} << t;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const double inv = 1.0 / static_cast<double>(shots_per_pauli);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      if (x == 0 && z == 0) continue;
      const PauliString p(t, x, z, std::popcount(x & z) & 3);
      const double e = expectation(core, p);
      const std::uint64_t plus = rng.binomial(shots_per_pauli, std::clamp((1.0 + e) / 2.0, 0.0, 1.0));
      const double est = (2.0 * static_cast<double>(plus) - static_cast<double>(shots_per_pauli)) * inv;
      for (std::uint64_t b = 0; b < dim; ++b) {
        rho(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) += est * p.basis_phase(b);
      }
    }
  }
  rho /= static_cast<double>(dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
  const Eigen::VectorXcd top = eig.eigenvectors().col(static_cast<Eigen::Index>(dim) - 1);
  return StateVector::from_amplitudes(t, std::vector<cplx>(top.data(), top.data() + top.size()), true);
}

LearnResult learn(StateSource& source, int t, const LearnBudget& budget, LearnMode mode, Rng& rng) {
  const int n = source.num_qubits();
  if (t < 0 || t > n) throw PreconditionError("learn: t must satisfy 0 <= t <= n");
  if (budget.n != n || budget.t != t) throw PreconditionError("learn: budget was planned for another (n, t)");
  LearnResult out;
  auto& diag = out.diagnostics;
  const std::uint64_t used_before = source.copies_used();
  out.state.n = n;
  out.state.t = t;
  const auto tail = tail_qubits(n, t);
  const std::vector<int> zeros(tail.size(), 0);

  if (mode == LearnMode::exact) {
    const StateVector psi = source.copy();
    const AntisymmetricMatrix c = correlation_exact(psi);
    const NormalForm nf = normal_form(c);
    diag.C_hat = c.matrix();
    diag.lambdas = nf.lambdas;
    diag.correlation_copies = 1;
    out.state.O_hat = nf.O;
    const StateVector rotated = GaussianUnitary(nf.O).apply_adjoint(psi);
    diag.postselect_probability = 1.0 - tail_weight(rotated, t);
    if (!(diag.postselect_probability > 0.0)) throw PostselectionError("learn: post-selection probability is zero");
    out.state.phi_hat = leading_core(rotated, t);
    diag.copies = source.copies_used() - used_before;
    return out;
  }

  if (budget.pure_tomography) {
    if (t > kTomographyLimit) throw EngineLimitError("learn: pure tomography beyond the tomography limit");
    diag.pure_tomography = true;
    out.state.O_hat = OrthogonalMatrix::identity(2 * n);
    const std::uint64_t copies = budget.tomography_copies();
    const std::uint64_t paulis = (std::uint64_t{1} << (2 * t)) - 1;
    diag.shots_per_pauli = std::max<std::uint64_t>(1, copies / paulis);
    diag.postselect_probability = 1.0;
    out.state.phi_hat = tomography_t_qubits(source.copies(copies), mode, diag.shots_per_pauli, rng);
    diag.copies = source.copies_used() - used_before;
    return out;
  }

  const CorrelationEstimate est = correlation_sampled(source, budget.shots_per_group(), Scheme::grouped, rng);
  diag.correlation_copies = est.copies;
  diag.C_hat = est.C_hat.matrix();
  const NormalForm nf = normal_form(est.C_hat);
  diag.lambdas = nf.lambdas;
  out.state.O_hat = nf.O;

  const std::uint64_t loops = budget.loop_copies();
  const std::uint64_t needed = budget.tomography_copies();
  const StateVector rotated = GaussianUnitary(nf.O).apply_adjoint(source.copies(loops));
  diag.loop_copies = loops;
  diag.postselect_probability = tail.empty() ? 1.0 : outcome_probability(rotated, tail, zeros);
  diag.kept = rng.binomial(loops, diag.postselect_probability);
  if (diag.kept < needed) {
    throw BoostingFailure("learn: " + std::to_string(diag.kept) + " successful post-selections, " +
                          std::to_string(needed) + " needed");
  }
  const StateVector core = leading_core(rotated, t);
  if (t > 0) {
    if (t > kTomographyLimit) throw EngineLimitError("learn: t exceeds the tomography limit");
    const std::uint64_t paulis = (std::uint64_t{1} << (2 * t)) - 1;
    diag.shots_per_pauli = std::max<std::uint64_t>(1, needed / paulis);
  }
  out.state.phi_hat = tomography_t_qubits(core, mode, diag.shots_per_pauli, rng);
  diag.copies = source.copies_used() - used_before;
  return out;
}

VerifyReport verify(const LearnedState& learned, const StateVector& psi_true) {
  if (psi_true.num_qubits() != learned.n) throw PreconditionError("verify: qubit count mismatch");
  VerifyReport r;
  const StateVector psi_hat = learned.reassemble();
  r.fidelity = fidelity(psi_hat, psi_true);
  r.trace_distance = trace_distance(psi_hat, psi_true);
  const StateVector rotated = GaussianUnitary(learned.O_hat).apply_adjoint(psi_true);
  r.postselect_rate = 1.0 - tail_weight(rotated, learned.t);
  if (r.postselect_rate <= 0.0) {
    r.postselect_rate = 0.0;
    r.tomography_term = 1.0;
    r.compression_term = 1.0;
    return r;
  }
  const StateVector phi = leading_core(rotated, learned.t);
  r.tomography_term = trace_distance(learned.phi_hat, phi);
  r.compression_term = trace_distance(phi.tensor(StateVector(learned.n - learned.t)), rotated);
  return r;
}

std::string serialize_learned(const LearnedState& s) {
  nlohmann::json doc;
  doc["format"] = "tdoped.learned";
  doc["n"] = s.n;
  doc["t"] = s.t;
  doc["O_hat"] = detail::matrix_to_json(s.O_hat.matrix());
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& a : s.phi_hat.amplitudes()) amps.push_back({a.real(), a.imag()});
  doc["phi_hat"] = amps;
  return doc.dump(2) + "\n";
}

LearnedState parse_learned(std::string_view text) {
  return detail::parse_guard([&] {
    const auto doc = nlohmann::json::parse(text);
    if (doc.value("format", std::string()) != "tdoped.learned") {
      throw PreconditionError("parse_learned: not a learned-state document");
    }
    LearnedState s;
    s.n = doc.at("n").get<int>();
    s.t = doc.at("t").get<int>();
    if (s.n < 1 || s.t < 0 || s.t > s.n) throw PreconditionError("parse_learned: invalid n or t");
    s.O_hat = OrthogonalMatrix(detail::matrix_from_json(doc.at("O_hat")));
    if (s.O_hat.dim() != 2 * s.n) throw PreconditionError("parse_learned: O_hat has the wrong size");
    std::vector<cplx> amps;
    for (const auto& a : doc.at("phi_hat")) amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    s.phi_hat = StateVector::from_amplitudes(s.t, std::move(amps));
    return s;
  });
}

}  // namespace tdoped
