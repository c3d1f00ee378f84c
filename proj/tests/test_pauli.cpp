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

#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "tdoped/errors.hpp"
#include "tdoped/pauli.hpp"
#include "tdoped/rng.hpp"
#include "tdoped/statevector.hpp"

using namespace tdoped;

namespace {

PauliString random_pauli(int n, Rng& rng) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return PauliString(n, rng.next() & mask, rng.next() & mask, static_cast<int>(rng.below(4)));
}

oracle::CMat dense_via_letters(const PauliString& p) {
  std::string s;
  for (int q = 1; q <= p.num_qubits(); ++q) s += p.letter(q);
  const std::complex<double> phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return phases[p.letter_phase()] * oracle::letters(s);
}

}  // namespace

TEST(Majorana, FirstIsXOnLeadingQubit) {
  EXPECT_EQ(majorana(1, 2), PauliString::from_letters("XI"));
  EXPECT_EQ(majorana(1, 2).str(), "+ XI");
}

TEST(Majorana, FourthIsZY) {
  EXPECT_EQ(majorana(4, 2), PauliString::from_letters("ZY"));
  EXPECT_EQ(majorana(4, 2).str(), "+ ZY");
}

TEST(Majorana, SquaresToIdentity) {
  for (int mu = 1; mu <= 6; ++mu) {
    const PauliString g = majorana(mu, 3);
    EXPECT_TRUE(g.is_hermitian());
    EXPECT_TRUE((g * g).is_identity()) << mu;
  }
}

TEST(Majorana, IndexOutOfRangeThrows) {
  EXPECT_THROW(majorana(0, 2), PreconditionError);
  EXPECT_THROW(majorana(5, 2), PreconditionError);
}

TEST(Majorana, MatchesKroneckerConstruction) {
  for (int n = 1; n <= 4; ++n) {
    for (int mu = 1; mu <= 2 * n; ++mu) {
      EXPECT_LT((to_dense(majorana(mu, n)) - oracle::majorana(mu, n)).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(PauliProduct, FirstMajoranaPairGivesIZ) {
  const PauliString prod = pauli_mul(majorana(1, 1), majorana(2, 1));
  EXPECT_EQ(prod, PauliString::from_letters("Z", 1));
  EXPECT_EQ(majorana_pair(1, 2, 1), PauliString::from_letters("Z"));
}

TEST(PauliProduct, HermitianSquareHasZeroPhase) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const PauliString p = random_pauli(5, rng).hermitian_form();
    const PauliString sq = p * p;
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(sq.phase_exp(), 0);
  }
}

TEST(PauliProduct, DistinctMajoranasAnticommute) {
  const PauliString ab = majorana(2, 3) * majorana(5, 3);
  const PauliString ba = majorana(5, 3) * majorana(2, 3);
  EXPECT_EQ(ab.x_mask(), ba.x_mask());
  EXPECT_EQ(ab.z_mask(), ba.z_mask());
  EXPECT_EQ((ab.phase_exp() - ba.phase_exp() + 4) % 4, 2);
  for (int mu = 1; mu <= 6; ++mu) {
    for (int nu = 1; nu <= 6; ++nu) {
      if (mu == nu) continue;
      EXPECT_EQ(majorana(mu, 3) * majorana(nu, 3), (majorana(nu, 3) * majorana(mu, 3)).times_phase(2));
    }
  }
}

TEST(PauliProduct, MismatchedSizesThrow) {
  EXPECT_THROW(PauliString(2) * PauliString(3), PreconditionError);
}

TEST(PauliProduct, MatchesDenseAndIsAssociative) {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const PauliString a = random_pauli(n, rng), b = random_pauli(n, rng), c = random_pauli(n, rng);
    EXPECT_LT((to_dense(a * b) - dense_via_letters(a) * dense_via_letters(b)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(PauliString, DenseMatchesKroneckerFromLetters) {
  Rng rng(3);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < 20; ++k) {
      const PauliString p = random_pauli(n, rng);
      EXPECT_LT((to_dense(p) - dense_via_letters(p)).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(PauliString, HermiticityMatchesDense) {
  Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    const PauliString p = random_pauli(1 + static_cast<int>(rng.below(5)), rng);
    const oracle::CMat d = dense_via_letters(p);
    const bool dense_hermitian = (d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-12;
    EXPECT_EQ(p.is_hermitian(), dense_hermitian) << p;
    EXPECT_TRUE(p.hermitian_form().is_hermitian());
  }
}

TEST(PauliString, CommutationMatchesDense) {
  Rng rng(21);
  for (int k = 0; k < 100; ++k) {
    const PauliString a = random_pauli(3, rng), b = random_pauli(3, rng);
    const oracle::CMat da = to_dense(a), db = to_dense(b);
    EXPECT_EQ(a.commutes_with(b), (da * db - db * da).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST(PauliString, TextRoundTrip) {
  const PauliString p = PauliString::parse("-i XIZ");
  EXPECT_EQ(p.str(), "-i XIZ");
  EXPECT_EQ(PauliString::parse("+i XZY").str(), "+i XZY");
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const PauliString q = random_pauli(4, rng);
    EXPECT_EQ(PauliString::parse(q.str()), q);
  }
  EXPECT_THROW(PauliString::parse("+ XQ"), PreconditionError);
}

TEST(PauliString, RejectsOversizedMasks) {
  EXPECT_THROW(PauliString(2, 4, 0, 0), PreconditionError);
  EXPECT_THROW(PauliString(33), PreconditionError);
}

TEST(Monomial, EmptyIsIdentity) {
  EXPECT_TRUE(majorana_monomial(std::vector<int>{}, 3).is_identity());
}

TEST(Monomial, FirstPairIsIZ) {
  EXPECT_EQ(majorana_monomial(std::vector<int>{1, 2}, 1), PauliString::from_letters("Z", 1));
}

TEST(Monomial, FourIndicesMatchDenseProduct) {
  const PauliString m = majorana_monomial(std::vector<int>{1, 2, 3, 4}, 2);
  const oracle::CMat dense =
      oracle::majorana(1, 2) * oracle::majorana(2, 2) * oracle::majorana(3, 2) * oracle::majorana(4, 2);
  EXPECT_LT((to_dense(m) - dense).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Monomial, RejectsUnsortedOrDuplicateIndices) {
  EXPECT_THROW(majorana_monomial(std::vector<int>{2, 1}, 2), PreconditionError);
  EXPECT_THROW(majorana_monomial(std::vector<int>{1, 1}, 2), PreconditionError);
  EXPECT_THROW(majorana_monomial(std::vector<int>{1, 5}, 2), PreconditionError);
}

TEST(Monomial, HilbertSchmidtOrthogonal) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<oracle::CMat> mats;
    for (int s = 0; s < (1 << (2 * n)); ++s) {
      std::vector<int> idx;
      for (int mu = 1; mu <= 2 * n; ++mu) {
        if (s & (1 << (mu - 1))) idx.push_back(mu);
      }
      mats.push_back(to_dense(majorana_monomial(idx, n)));
    }
    const double dim = static_cast<double>(1 << n);
    for (std::size_t a = 0; a < mats.size(); ++a) {
      for (std::size_t b = 0; b < mats.size(); ++b) {
        const std::complex<double> ip = (mats[a].adjoint() * mats[b]).trace();
        EXPECT_NEAR(std::abs(ip), a == b ? dim : 0.0, 1e-12);
      }
    }
  }
}
