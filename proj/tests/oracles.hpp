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

// Dense reference implementations built directly from Kronecker products,
// independent of the bit-mask code under test.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tdoped/statevector.hpp"

namespace oracle {

using CMat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline CMat letter(char c) {
  CMat m(2, 2);
  const cplx i(0, 1);
  switch (c) {
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -i, i, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      m << 1, 0, 0, 1;
  }
  return m;
}

inline CMat letters(const std::string& s) {
  CMat m = CMat::Identity(1, 1);
  for (char c : s) m = kron(m, letter(c));
  return m;
}

/// Z^{k-1} ⊗ (X or Y) ⊗ I^{n-k} for mu = 2k-1 or 2k.
inline CMat majorana(int mu, int n) {
  const int k = (mu + 1) / 2;
  std::string s(static_cast<std::size_t>(n), 'I');
  for (int j = 0; j < k - 1; ++j) s[static_cast<std::size_t>(j)] = 'Z';
  s[static_cast<std::size_t>(k - 1)] = mu % 2 ? 'X' : 'Y';
  return letters(s);
}

inline Eigen::VectorXcd vec(const tdoped::StateVector& psi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
  for (std::size_t i = 0; i < psi.dim(); ++i) v[static_cast<Eigen::Index>(i)] = psi[i];
  return v;
}

/// C_jk = <psi| -i γ_j γ_k |psi> for j != k.
inline Eigen::MatrixXd correlation(const Eigen::VectorXcd& psi, int n) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  std::vector<CMat> g;
  for (int mu = 1; mu <= 2 * n; ++mu) g.push_back(majorana(mu, n));
  for (int j = 0; j < 2 * n; ++j) {
    for (int k = 0; k < 2 * n; ++k) {
      if (j == k) continue;
      c(j, k) = (psi.adjoint() * (cplx(0, -1) * g[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(k)]) * psi)(0, 0).real();
    }
  }
  return c;
}

/// ½ ||ρ - σ||_1 from the eigenvalues of the difference.
inline double trace_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const CMat d = a * a.adjoint() - b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> eig(d);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

/// Matrix of a linear map on n qubits from its action on basis states.
template <typename F>
CMat matrix_of(int n, F&& apply) {
  const Eigen::Index d = Eigen::Index{1} << n;
  CMat m(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    const tdoped::StateVector out = apply(tdoped::StateVector::basis(n, static_cast<std::uint64_t>(b)));
    m.col(b) = vec(out);
  }
  return m;
}

inline double phase_insensitive_distance(const CMat& a, const CMat& b) {
  // Aligns the global phase on the largest entry of a, then compares.
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  const cplx phase = b(r, c) / a(r, c);
  return (a * (phase / std::abs(phase)) - b).cwiseAbs().maxCoeff();
}

}  // namespace oracle
