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

#include "tdoped/pauli.hpp"

#include <bit>
#include <ostream>
#include <sstream>

#include "tdoped/errors.hpp"

namespace tdoped {

namespace {

std::uint64_t full_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

std::uint64_t qubit_bit(int n, int qubit) { return std::uint64_t{1} << (n - qubit); }

void check_qubits(int n) {
  if (n < 0 || n > kMaxPauliQubits) {
    throw PreconditionError("PauliString: qubit count " + std::to_string(n) +
                            " outside [0, " + std::to_string(kMaxPauliQubits) + "]");
  }
}

}  // namespace

PauliString::PauliString(int n) : n_(n) { check_qubits(n); }

PauliString::PauliString(int n, std::uint64_t x_mask, std::uint64_t z_mask, int phase_exp)
    : n_(n), x_(x_mask), z_(z_mask), phase_(((phase_exp % 4) + 4) % 4) {
  check_qubits(n);
  if ((x_ | z_) & ~full_mask(n)) {
    throw PreconditionError("PauliString: mask has bits beyond qubit count");
  }
}

PauliString PauliString::from_letters(std::string_view letters, int phase) {
  const int n = static_cast<int>(letters.size());
  check_qubits(n);
  std::uint64_t x = 0, z = 0;
  int ys = 0;
  for (int q = 1; q <= n; ++q) {
    const std::uint64_t bit = qubit_bit(n, q);
    switch (letters[q - 1]) {
      case 'I': case '_': break;
      case 'X': x |= bit; break;
      case 'Z': z |= bit; break;
      case 'Y': x |= bit; z |= bit; ++ys; break;
      default:
        throw PreconditionError(std::string("PauliString: bad letter '") + letters[q - 1] + "'");
    }
  }
  // Y = i X Z, so each Y adds one power of i relative to the X-then-Z form.
  return PauliString(n, x, z, phase + ys);
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
    if (pos < text.size() && text[pos] == 'i') {
      phase += 1;
      ++pos;
    }
  }
  while (pos < text.size() && text[pos] == ' ') ++pos;
  return from_letters(text.substr(pos), phase);
}

char PauliString::letter(int qubit) const {
  if (qubit < 1 || qubit > n_) throw PreconditionError("PauliString::letter: qubit out of range");
  const std::uint64_t bit = qubit_bit(n_, qubit);
  const bool x = x_ & bit, z = z_ & bit;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

int PauliString::letter_phase() const {
  const int ys = std::popcount(x_ & z_);
  return (((phase_ - ys) % 4) + 4) % 4;
}

bool PauliString::is_hermitian() const { return (phase_ - std::popcount(x_ & z_)) % 2 == 0; }

bool PauliString::commutes_with(const PauliString& other) const {
  return (std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_)) % 2 == 0;
}

PauliString PauliString::hermitian_form() const {
  return is_hermitian() ? *this : times_phase(3);
}

PauliString PauliString::times_phase(int exp) const { return PauliString(n_, x_, z_, phase_ + exp); }

std::complex<double> PauliString::basis_phase(std::uint64_t basis) const {
  int e = phase_ + 2 * (std::popcount(z_ & basis) & 1);
  switch (e % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (n_ != rhs.n_) throw PreconditionError("PauliString product: qubit counts differ");
  // Moving rhs's X past lhs's Z costs a sign per shared qubit.
  const int phase = phase_ + rhs.phase_ + 2 * std::popcount(z_ & rhs.x_);
  return PauliString(n_, x_ ^ rhs.x_, z_ ^ rhs.z_, phase);
}

std::string PauliString::str() const {
  static constexpr const char* kSigns[4] = {"+", "+i", "-", "-i"};
  std::string out = kSigns[letter_phase()];
  out += ' ';
  for (int q = 1; q <= n_; ++q) out += letter(q);
  return out;
}

std::ostream& operator<<(std::ostream& os, const PauliString& p) { return os << p.str(); }

PauliString majorana(int mu, int n) {
  check_qubits(n);
  if (mu < 1 || mu > 2 * n) {
    throw PreconditionError("majorana: index " + std::to_string(mu) + " outside [1, " +
                            std::to_string(2 * n) + "]");
  }
  const int k = (mu + 1) / 2;
  std::uint64_t z = 0;
  for (int j = 1; j < k; ++j) z |= qubit_bit(n, j);
  const std::uint64_t x = qubit_bit(n, k);
  if (mu % 2 == 1) return PauliString(n, x, z, 0);
  return PauliString(n, x, z | x, 1);
}

PauliString majorana_monomial(std::span<const int> indices, int n) {
  PauliString out(n);
  int prev = 0;
  for (int mu : indices) {
    if (mu <= prev) {
      throw PreconditionError("majorana_monomial: indices must be strictly increasing");
    }
    out = out * majorana(mu, n);
    prev = mu;
  }
  return out;
}

PauliString majorana_pair(int mu, int nu, int n) {
  if (mu == nu) throw PreconditionError("majorana_pair: indices must differ");
  return (majorana(mu, n) * majorana(nu, n)).times_phase(3);
}

}  // namespace tdoped
