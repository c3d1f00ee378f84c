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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace tdoped {

inline constexpr int kMaxPauliQubits = 32;

/// An n-qubit Pauli operator i^phase * prod_k X_k^{x_k} Z_k^{z_k}.
///
/// Each qubit contributes X first, then Z, so a Y letter is stored as
/// x = z = 1 with one extra factor of i. Qubit 1 is the most significant bit
/// of a basis index, and the masks use the same layout: qubit k lives at bit
/// (n - k). With that layout P|b> = i^phase (-1)^{popcount(z & b)} |b ^ x>.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on n qubits.
  explicit PauliString(int n);
  PauliString(int n, std::uint64_t x_mask, std::uint64_t z_mask, int phase_exp);

  /// Builds i^phase * (letter product), e.g. from_letters("XZY", 1) is i·XZY.
  static PauliString from_letters(std::string_view letters, int phase = 0);
  /// Parses the text produced by str(), e.g. "-i XIZ".
  static PauliString parse(std::string_view text);

  int num_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  int phase_exp() const { return phase_; }

  /// 'I', 'X', 'Y' or 'Z' for a 1-based qubit index.
  char letter(int qubit) const;
  /// Exponent e such that this operator equals i^e times its letter product.
  int letter_phase() const;

  bool is_hermitian() const;
  bool is_identity() const { return x_ == 0 && z_ == 0 && phase_ == 0; }
  bool commutes_with(const PauliString& other) const;

  /// The operator itself if Hermitian, otherwise -i times it.
  PauliString hermitian_form() const;
  PauliString times_phase(int exp) const;

  /// Phase picked up by basis state |b>; the state moves to |b ^ x_mask()>.
  std::complex<double> basis_phase(std::uint64_t basis) const;

  PauliString operator*(const PauliString& rhs) const;
  bool operator==(const PauliString&) const = default;

  /// "+i XZY" style: sign of the letter product, a space, one letter per qubit.
  std::string str() const;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

std::ostream& operator<<(std::ostream& os, const PauliString& p);

inline PauliString pauli_mul(const PauliString& a, const PauliString& b) { return a * b; }

/// Jordan-Wigner Majorana operator gamma_mu, 1 <= mu <= 2n:
/// gamma_{2k-1} = Z_1..Z_{k-1} X_k and gamma_{2k} = Z_1..Z_{k-1} Y_k.
PauliString majorana(int mu, int n);

/// Ordered product gamma_{s1} gamma_{s2} ... for strictly increasing indices.
/// The empty set gives the identity.
PauliString majorana_monomial(std::span<const int> indices, int n);

/// Hermitian generator -i gamma_mu gamma_nu for mu != nu.
PauliString majorana_pair(int mu, int nu, int n);

}  // namespace tdoped
