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

#include "tdoped/gaussian.hpp"

#include <cmath>
#include <sstream>

#include "tdoped/errors.hpp"

namespace tdoped {

GaussianUnitary::GaussianUnitary(const OrthogonalMatrix& o) : o_(o) {
  if (o.dim() % 2 != 0) throw PreconditionError("GaussianUnitary: dimension must be even");
  const int n = o.dim() / 2;
  if (n > kMaxPauliQubits) throw EngineLimitError("GaussianUnitary: too many modes");
  program_ = givens_decompose(o);
  generators_.reserve(program_.rotations.size());
  for (const auto& r : program_.rotations) generators_.push_back(majorana_pair(r.mu, r.nu, n));
}

void GaussianUnitary::check(const StateVector& psi) const {
  if (psi.num_qubits() != num_qubits()) throw PreconditionError("GaussianUnitary: qubit count mismatch");
}

void GaussianUnitary::apply_in_place(StateVector& psi) const {
  check(psi);
  if (program_.reflect_first) psi.apply_pauli(majorana(1, num_qubits()));
  for (std::size_t k = generators_.size(); k-- > 0;) {
    psi.apply_pauli_rotation(generators_[k], 0.5 * program_.rotations[k].angle);
  }
}

void GaussianUnitary::apply_adjoint_in_place(StateVector& psi) const {
  check(psi);
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    psi.apply_pauli_rotation(generators_[k], -0.5 * program_.rotations[k].angle);
  }
  if (program_.reflect_first) psi.apply_pauli(majorana(1, num_qubits()));
}

StateVector GaussianUnitary::apply(const StateVector& psi) const {
  StateVector out = psi;
  apply_in_place(out);
  return out;
}

StateVector GaussianUnitary::apply_adjoint(const StateVector& psi) const {
  StateVector out = psi;
  apply_adjoint_in_place(out);
  return out;
}

std::string GaussianUnitary::dump() const {
  std::ostringstream os;
  os << "gaussian n=" << num_qubits() << " rotations=" << program_.rotations.size()
     << " reflect_first=" << (program_.reflect_first ? 1 : 0) << '\n';
  for (const auto& r : program_.rotations) os << r.mu << ' ' << r.nu << ' ' << format_double(r.angle) << '\n';
  return os.str();
}

bool preserves_vacuum(const GaussianUnitary& g) {
  const StateVector out = g.apply(StateVector(g.num_qubits()));
  return std::abs(std::abs(out[0]) - 1.0) <= 1e-9;
}

}  // namespace tdoped
