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

#include "tdoped/doped.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "json_io.hpp"
#include "tdoped/errors.hpp"

namespace tdoped {

namespace {

constexpr double kCompressionTol = 1e-8;

// Õ_k = O(G_k) ... O(G_0) for k = 0..t.
std::vector<Matrix> accumulated(const DopedCircuit& c) {
  std::vector<Matrix> acc;
  Matrix m = Matrix::Identity(2 * c.n, 2 * c.n);
  for (const auto& g : c.gaussians) {
    m = g.orthogonal().matrix() * m;
    acc.push_back(m);
  }
  return acc;
}

// Rows of Õ_{k-1} indexed by the support of W_k, for every gate.
std::vector<Vector> support_vectors(const DopedCircuit& c, const std::vector<Matrix>& acc) {
  std::vector<Vector> vs;
  for (int k = 0; k < c.t(); ++k) {
    for (int mu : c.gates[static_cast<std::size_t>(k)].support()) {
      vs.push_back(acc[static_cast<std::size_t>(k)].row(mu - 1).transpose());
    }
  }
  return vs;
}

OrthogonalMatrix orthogonal_from(const Matrix& m) {
  // Products of validated matrices drift slightly; re-project.
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return OrthogonalMatrix(svd.matrixU() * svd.matrixV().transpose());
}

}  // namespace

std::vector<int> NonGaussianGate::support() const {
  std::vector<int> s;
  for (const auto& term : terms_) s.insert(s.end(), term.indices.begin(), term.indices.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void NonGaussianGate::apply_in_place(StateVector& psi) const {
  for (const auto& term : terms_) {
    const PauliString p = majorana_monomial(term.indices, psi.num_qubits()).hermitian_form();
    psi.apply_pauli_rotation(p, term.theta);
  }
}

void DopedCircuit::validate() const {
  if (n < 1) throw PreconditionError("DopedCircuit: n must be at least 1");
  if (kappa < 0 || kappa > 2 * n) throw PreconditionError("DopedCircuit: kappa must lie in [0, 2n]");
  if (gaussians.size() != gates.size() + 1) {
    throw PreconditionError("DopedCircuit: expected one more Gaussian layer than non-Gaussian gates");
  }
  for (const auto& g : gaussians) {
    if (g.num_qubits() != n) throw PreconditionError("DopedCircuit: Gaussian layer has wrong size");
  }
  for (const auto& w : gates) {
    for (const auto& term : w.terms()) {
      for (std::size_t i = 0; i < term.indices.size(); ++i) {
        const int mu = term.indices[i];
        if (mu < 1 || mu > 2 * n) throw PreconditionError("DopedCircuit: Majorana index out of range");
        if (i > 0 && term.indices[i - 1] >= mu) {
          throw PreconditionError("DopedCircuit: term indices must be strictly increasing");
        }
      }
    }
    if (static_cast<int>(w.support().size()) > kappa) {
      throw PreconditionError("DopedCircuit: gate support exceeds kappa");
    }
  }
}

StateVector apply_circuit(const DopedCircuit& circuit, const StateVector& psi) {
  circuit.validate();
  StateVector out = psi;
  circuit.gaussians[0].apply_in_place(out);
  for (int k = 0; k < circuit.t(); ++k) {
    circuit.gates[static_cast<std::size_t>(k)].apply_in_place(out);
    circuit.gaussians[static_cast<std::size_t>(k + 1)].apply_in_place(out);
  }
  return out;
}

StateVector prepare(const DopedCircuit& circuit) {
  if (circuit.n > kMaxStateQubits) throw EngineLimitError("prepare: n exceeds the statevector limit");
  return apply_circuit(circuit, StateVector(circuit.n));
}

StateVector CompressedForm::reassemble() const {
  return G.apply(phi.tensor(StateVector(G.num_qubits() - core_qubits)));
}

CompressedForm compress_state(const DopedCircuit& circuit) {
  circuit.validate();
  const int n = circuit.n;
  const int m = circuit.kappa * circuit.t();
  if (m > n) throw PreconditionError("compress_state: requires kappa * t <= n");
  const auto acc = accumulated(circuit);
  const auto vs = support_vectors(circuit, acc);
  Matrix g_matrix = acc.back();
  if (!vs.empty()) {
    const OrthogonalMatrix aux = compression_rotation(vs, true);
    g_matrix = acc.back() * aux.matrix().transpose();
  }
  CompressedForm out;
  out.G = GaussianUnitary(orthogonal_from(g_matrix));
  out.core_qubits = m;
  const StateVector rotated = out.G.apply_adjoint(prepare(circuit));
  out.residual = tail_weight(rotated, m);
  if (out.residual > kCompressionTol) {
    throw ConventionError("compress_state: trailing qubits not in |0>, residual " + std::to_string(out.residual));
  }
  out.phi = leading_core(rotated, m);
  return out;
}

StateVector UnitaryCompression::apply(const StateVector& psi) const {
  StateVector out = G_B.apply(psi);
  if (core_qubits > 0) {
    std::vector<int> qubits(static_cast<std::size_t>(core_qubits));
    for (int q = 0; q < core_qubits; ++q) qubits[static_cast<std::size_t>(q)] = q + 1;
    out.apply_dense_unitary(qubits, u_core);
  }
  G_A.apply_in_place(out);
  return out;
}

UnitaryCompression compress_unitary(const DopedCircuit& circuit) {
  circuit.validate();
  const int n = circuit.n;
  const int kt = circuit.kappa * circuit.t();
  if (kt > 2 * n) throw PreconditionError("compress_unitary: requires kappa * t <= 2n");
  const int q = (kt + 1) / 2;
  if (q > kMaxStateQubits || n > kMaxStateQubits) throw EngineLimitError("compress_unitary: too many qubits");
  const auto acc = accumulated(circuit);
  const auto vs = support_vectors(circuit, acc);
  Matrix o_aux = Matrix::Identity(2 * n, 2 * n);
  if (!vs.empty()) o_aux = compression_rotation(vs, false).matrix();

  UnitaryCompression out;
  out.core_qubits = q;
  out.G_A = GaussianUnitary(orthogonal_from(acc.back() * o_aux.transpose()));
  out.G_B = GaussianUnitary(orthogonal_from(o_aux));

  // Conjugating frames G_{Õ_{k-1} O_aux^T} for each gate.
  std::vector<GaussianUnitary> frames;
  for (int k = 0; k < circuit.t(); ++k) {
    frames.emplace_back(orthogonal_from(acc[static_cast<std::size_t>(k)] * o_aux.transpose()));
  }
  const std::uint64_t core_dim = std::uint64_t{1} << q;
  out.u_core = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(core_dim), static_cast<Eigen::Index>(core_dim));
  for (std::uint64_t b = 0; b < core_dim; ++b) {
    StateVector s = StateVector::basis(n, b << (n - q));
    for (int k = 0; k < circuit.t(); ++k) {
      const auto& frame = frames[static_cast<std::size_t>(k)];
      frame.apply_in_place(s);
      circuit.gates[static_cast<std::size_t>(k)].apply_in_place(s);
      frame.apply_adjoint_in_place(s);
    }
    const double leak = tail_weight(s, q);
    if (leak > kCompressionTol) {
      throw ConventionError("compress_unitary: core unitary leaks into the tail, weight " + std::to_string(leak));
    }
    for (std::uint64_t a = 0; a < core_dim; ++a) {
      out.u_core(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s[a << (n - q)];
    }
  }
  // Remove the leaked rounding so the core passes the strict unitarity check.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.u_core, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.u_core = svd.matrixU() * svd.matrixV().adjoint();
  return out;
}

DopedCircuit random_doped_circuit(int n, int t, int kappa, Rng& rng, bool haar_gaussians) {
  if (n < 1) throw PreconditionError("random_doped_circuit: n must be at least 1");
  if (t < 0) throw PreconditionError("random_doped_circuit: t must be nonnegative");
  if (kappa < 0 || kappa > 2 * n) throw PreconditionError("random_doped_circuit: kappa must lie in [0, 2n]");
  DopedCircuit c;
  c.n = n;
  c.kappa = kappa;
  c.gaussians.emplace_back(random_orthogonal(2 * n, rng, haar_gaussians));
  for (int k = 0; k < t; ++k) {
    std::vector<int> pool(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    for (int i = 0; i < kappa; ++i) {
      const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(2 * n - i));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + kappa);
    std::sort(subset.begin(), subset.end());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    c.gates.emplace_back(std::vector<MonomialTerm>{{std::move(subset), theta}});
    c.gaussians.emplace_back(random_orthogonal(2 * n, rng, haar_gaussians));
  }
  return c;
}

GateCounts report_gate_counts(const DopedCircuit& circuit) {
  GateCounts counts;
  for (const auto& g : circuit.gaussians) {
    counts.rotations += g.rotation_count();
    if (g.program().reflect_first) ++counts.reflections;
  }
  for (const auto& w : circuit.gates) {
    ++counts.nongaussian_gates;
    counts.nongaussian_terms += w.terms().size();
    counts.max_support = std::max<std::uint64_t>(counts.max_support, w.support().size());
  }
  return counts;
}

std::string serialize_circuit(const DopedCircuit& circuit) {
  nlohmann::json doc;
  doc["format"] = "tdoped.circuit";
  doc["n"] = circuit.n;
  doc["kappa"] = circuit.kappa;
  doc["gaussians"] = nlohmann::json::array();
  for (const auto& g : circuit.gaussians) doc["gaussians"].push_back(detail::matrix_to_json(g.orthogonal().matrix()));
  doc["gates"] = nlohmann::json::array();
  for (const auto& w : circuit.gates) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : w.terms()) terms.push_back({{"indices", term.indices}, {"theta", term.theta}});
    doc["gates"].push_back({{"terms", terms}});
  }
  return doc.dump(2) + "\n";
}

DopedCircuit parse_circuit(std::string_view text) {
  return detail::parse_guard([&] {
    const auto doc = nlohmann::json::parse(text);
    if (doc.value("format", std::string()) != "tdoped.circuit") {
      throw PreconditionError("parse_circuit: not a circuit document");
    }
    DopedCircuit c;
    c.n = doc.at("n").get<int>();
    c.kappa = doc.at("kappa").get<int>();
    for (const auto& m : doc.at("gaussians")) c.gaussians.emplace_back(OrthogonalMatrix(detail::matrix_from_json(m)));
    for (const auto& w : doc.at("gates")) {
      std::vector<MonomialTerm> terms;
      for (const auto& term : w.at("terms")) {
        terms.push_back({term.at("indices").get<std::vector<int>>(), term.at("theta").get<double>()});
      }
      c.gates.emplace_back(std::move(terms));
    }
    c.validate();
    return c;
  });
}

}  // namespace tdoped
