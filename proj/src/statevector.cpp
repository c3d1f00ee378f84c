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

#include "tdoped/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "tdoped/errors.hpp"

namespace tdoped {

namespace {

constexpr double kNormTol = 1e-10;

void check_qubit_count(int n) {
  if (n < 0) throw PreconditionError("StateVector: negative qubit count");
  if (n > kMaxStateQubits) {
    throw EngineLimitError("StateVector: " + std::to_string(n) + " qubits exceeds engine limit of " +
                           std::to_string(kMaxStateQubits));
  }
}

std::uint64_t bit_of(int n, int qubit) { return std::uint64_t{1} << (n - qubit); }

void check_qubit_list(int n, std::span<const int> qubits) {
  std::uint64_t seen = 0;
  for (int q : qubits) {
    if (q < 1 || q > n) throw PreconditionError("qubit index " + std::to_string(q) + " out of range");
    if (seen & bit_of(n, q)) throw PreconditionError("duplicate qubit index " + std::to_string(q));
    seen |= bit_of(n, q);
  }
}

std::uint64_t outcome_index(std::uint64_t basis, int n, std::span<const int> qubits) {
  std::uint64_t out = 0;
  for (int q : qubits) out = (out << 1) | ((basis >> (n - q)) & 1);
  return out;
}

}  // namespace

StateVector::StateVector(int n) : n_(n) {
  check_qubit_count(n);
  amps_.assign(std::size_t{1} << n, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  StateVector out(n);
  if (index >= out.dim()) throw PreconditionError("StateVector::basis: index out of range");
  out.amps_[0] = 0.0;
  out.amps_[index] = 1.0;
  return out;
}

StateVector StateVector::from_amplitudes(int n, std::vector<cplx> amps, bool normalize) {
  check_qubit_count(n);
  if (amps.size() != (std::size_t{1} << n)) {
    throw PreconditionError("StateVector: amplitude count does not match 2^n");
  }
  double sq = 0.0;
  for (const auto& a : amps) sq += std::norm(a);
  const double nrm = std::sqrt(sq);
  if (normalize) {
    if (nrm == 0.0) throw PreconditionError("StateVector: cannot normalize the zero vector");
    for (auto& a : amps) a /= nrm;
  } else if (std::abs(nrm - 1.0) > kNormTol) {
    throw PreconditionError("StateVector: amplitudes are not unit norm");
  }
  return StateVector(n, std::move(amps));
}

StateVector StateVector::random(int n, Rng& rng) {
  check_qubit_count(n);
  std::vector<cplx> amps(std::size_t{1} << n);
  for (auto& a : amps) a = cplx(rng.normal(), rng.normal());
  return from_amplitudes(n, std::move(amps), true);
}

double StateVector::norm() const {
  double sq = 0.0;
  for (const auto& a : amps_) sq += std::norm(a);
  return std::sqrt(sq);
}

void StateVector::apply_pauli_rotation(const PauliString& p, double theta) {
  if (p.num_qubits() != n_) throw PreconditionError("apply_pauli_rotation: qubit count mismatch");
  if (!p.is_hermitian()) throw PreconditionError("apply_pauli_rotation: generator is not Hermitian");
  const double c = std::cos(theta);
  const cplx is(0.0, std::sin(theta));
  const std::uint64_t x = p.x_mask();
  if (x == 0) {
    for (std::uint64_t b = 0; b < amps_.size(); ++b) amps_[b] *= c + is * p.basis_phase(b);
    return;
  }
  // Pairs (b, b^x) mix among themselves; visit each pair once.
  const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(x));
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    if (b & pivot) continue;
    const std::uint64_t b2 = b ^ x;
    const cplx a1 = amps_[b], a2 = amps_[b2];
    // (P psi)[b2] = phase(b) psi[b],  (P psi)[b] = phase(b2) psi[b2].
    amps_[b2] = c * a2 + is * p.basis_phase(b) * a1;
    amps_[b] = c * a1 + is * p.basis_phase(b2) * a2;
  }
}

void StateVector::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) throw PreconditionError("apply_pauli: qubit count mismatch");
  std::vector<cplx> out(amps_.size());
  for (std::uint64_t b = 0; b < amps_.size(); ++b) out[b ^ p.x_mask()] = p.basis_phase(b) * amps_[b];
  amps_ = std::move(out);
}

void StateVector::apply_dense_unitary(std::span<const int> qubits, const Eigen::MatrixXcd& u) {
  check_qubit_list(n_, qubits);
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index d = Eigen::Index{1} << k;
  if (u.rows() != d || u.cols() != d) {
    throw PreconditionError("apply_dense_unitary: matrix size does not match 2^k");
  }
  const Eigen::MatrixXcd gram = u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d);
  if (gram.cwiseAbs().maxCoeff() > kNormTol) {
    throw PreconditionError("apply_dense_unitary: matrix is not unitary");
  }
  if (k == 0) {
    for (auto& a : amps_) a *= u(0, 0);
    return;
  }
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(d));
  std::uint64_t target_mask = 0;
  for (Eigen::Index j = 0; j < d; ++j) {
    std::uint64_t off = 0;
    for (int i = 0; i < k; ++i) {
      if ((j >> (k - 1 - i)) & 1) off |= bit_of(n_, qubits[i]);
    }
    offsets[static_cast<std::size_t>(j)] = off;
  }
  for (int q : qubits) target_mask |= bit_of(n_, q);
  Eigen::VectorXcd local(d);
  for (std::uint64_t base = 0; base < amps_.size(); ++base) {
    if (base & target_mask) continue;
    for (Eigen::Index j = 0; j < d; ++j) local[j] = amps_[base | offsets[static_cast<std::size_t>(j)]];
    const Eigen::VectorXcd out = u * local;
    for (Eigen::Index j = 0; j < d; ++j) amps_[base | offsets[static_cast<std::size_t>(j)]] = out[j];
  }
}

StateVector StateVector::tensor(const StateVector& tail) const {
  const int n = n_ + tail.n_;
  check_qubit_count(n);
  std::vector<cplx> amps(std::size_t{1} << n);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    for (std::size_t j = 0; j < tail.amps_.size(); ++j) {
      amps[(i << tail.n_) | j] = amps_[i] * tail.amps_[j];
    }
  }
  return StateVector(n, std::move(amps));
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw PreconditionError("inner_product: qubit count mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::min(1.0, std::norm(inner_product(a, b)));
}

double trace_distance(const StateVector& a, const StateVector& b) {
  const cplx overlap = inner_product(a, b);
  const auto& va = a.amplitudes();
  const auto& vb = b.amplitudes();
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    na += std::norm(va[i]);
    nb += std::norm(vb[i]);
  }
  // Norm of the part of b orthogonal to a; stays accurate when b ~ a.
  const cplx c = overlap / na;
  double perp = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) perp += std::norm(vb[i] - c * va[i]);
  return std::min(1.0, std::sqrt(perp / nb));
}

double expectation(const StateVector& psi, const PauliString& p) {
  if (p.num_qubits() != psi.num_qubits()) throw PreconditionError("expectation: qubit count mismatch");
  if (!p.is_hermitian()) throw PreconditionError("expectation: observable is not Hermitian");
  const auto& a = psi.amplitudes();
  cplx s = 0.0;
  for (std::uint64_t b = 0; b < a.size(); ++b) s += std::conj(a[b ^ p.x_mask()]) * p.basis_phase(b) * a[b];
  return s.real();
}

std::vector<double> marginal_probabilities(const StateVector& psi, std::span<const int> qubits) {
  check_qubit_list(psi.num_qubits(), qubits);
  std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
  const auto& a = psi.amplitudes();
  for (std::uint64_t b = 0; b < a.size(); ++b) {
    probs[outcome_index(b, psi.num_qubits(), qubits)] += std::norm(a[b]);
  }
  return probs;
}

double outcome_probability(const StateVector& psi, std::span<const int> qubits,
                           std::span<const int> outcomes) {
  if (outcomes.size() != qubits.size()) throw PreconditionError("outcome_probability: size mismatch");
  check_qubit_list(psi.num_qubits(), qubits);
  double p = 0.0;
  const auto& a = psi.amplitudes();
  for (std::uint64_t b = 0; b < a.size(); ++b) {
    bool match = true;
    for (std::size_t i = 0; i < qubits.size() && match; ++i) {
      match = static_cast<int>((b >> (psi.num_qubits() - qubits[i])) & 1) == outcomes[i];
    }
    if (match) p += std::norm(a[b]);
  }
  return p;
}

StateVector postselect(const StateVector& psi, std::span<const int> qubits,
                       std::span<const int> outcomes) {
  if (outcomes.size() != qubits.size()) throw PreconditionError("postselect: size mismatch");
  check_qubit_list(psi.num_qubits(), qubits);
  const int n = psi.num_qubits();
  std::uint64_t mask = 0, want = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    mask |= bit_of(n, qubits[i]);
    if (outcomes[i]) want |= bit_of(n, qubits[i]);
  }
  std::vector<cplx> amps(psi.dim(), cplx{0.0, 0.0});
  double sq = 0.0;
  for (std::uint64_t b = 0; b < psi.dim(); ++b) {
    if ((b & mask) == want) {
      amps[b] = psi[b];
      sq += std::norm(psi[b]);
    }
  }
  if (sq <= 0.0) throw PostselectionError("postselect: outcome has zero probability");
  return StateVector::from_amplitudes(n, std::move(amps), true);
}

std::pair<MeasurementRecord, StateVector> measure_computational(const StateVector& psi,
                                                                std::span<const int> qubits,
                                                                Rng& rng) {
  if (qubits.empty()) throw PreconditionError("measure_computational: empty qubit list");
  const auto probs = marginal_probabilities(psi, qubits);
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t pick = probs.size() - 1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) {
      pick = i;
      break;
    }
  }
  // Guard against landing on a zero-probability tail through rounding.
  while (probs[pick] == 0.0 && pick > 0) --pick;
  MeasurementRecord rec;
  rec.qubits.assign(qubits.begin(), qubits.end());
  const int k = static_cast<int>(qubits.size());
  for (int i = 0; i < k; ++i) rec.outcomes.push_back(static_cast<int>((pick >> (k - 1 - i)) & 1));
  rec.probability = probs[pick];
  StateVector post = postselect(psi, qubits, rec.outcomes);
  return {std::move(rec), std::move(post)};
}

double tail_weight(const StateVector& psi, int m) {
  const int n = psi.num_qubits();
  if (m < 0 || m > n) throw PreconditionError("tail_weight: core size out of range");
  const std::uint64_t tail_mask = (std::uint64_t{1} << (n - m)) - 1;
  double w = 0.0;
  for (std::uint64_t b = 0; b < psi.dim(); ++b) {
    if (b & tail_mask) w += std::norm(psi[b]);
  }
  return w;
}

StateVector leading_core(const StateVector& psi, int m) {
  const int n = psi.num_qubits();
  if (m < 0 || m > n) throw PreconditionError("leading_core: core size out of range");
  std::vector<cplx> amps(std::size_t{1} << m);
  double sq = 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    amps[i] = psi[i << (n - m)];
    sq += std::norm(amps[i]);
  }
  if (sq <= 0.0) throw PostselectionError("leading_core: projection onto |0> tail is empty");
  return StateVector::from_amplitudes(m, std::move(amps), true);
}

Eigen::MatrixXcd to_dense(const PauliString& p) {
  const Eigen::Index d = Eigen::Index{1} << p.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(d); ++b) {
    m(static_cast<Eigen::Index>(b ^ p.x_mask()), static_cast<Eigen::Index>(b)) = p.basis_phase(b);
  }
  return m;
}

std::vector<std::uint64_t> multinomial_counts(std::span<const double> probs, std::uint64_t shots,
                                              Rng& rng) {
  std::vector<std::uint64_t> counts(probs.size(), 0);
  double mass = 0.0;
  for (double p : probs) mass += std::max(0.0, p);
  std::uint64_t left = shots;
  for (std::size_t i = 0; i < probs.size() && left > 0; ++i) {
    const double p = std::max(0.0, probs[i]);
    if (i + 1 == probs.size() || mass <= p) {
      counts[i] = left;
      left = 0;
      break;
    }
    const std::uint64_t c = rng.binomial(left, p / mass);
    counts[i] = c;
    left -= c;
    mass -= p;
  }
  return counts;
}

}  // namespace tdoped
