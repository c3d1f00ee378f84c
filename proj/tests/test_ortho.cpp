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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "tdoped/errors.hpp"
#include "tdoped/ortho.hpp"
#include "tdoped/statevector.hpp"

using namespace tdoped;

namespace {

Matrix random_antisymmetric(int dim, Rng& rng, double scale = 1.0) {
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = scale * rng.normal();
  }
  return a - a.transpose();
}

// Singular values of an antisymmetric matrix come in equal pairs; one from
// each pair, ascending.
std::vector<double> svd_lambdas(const Matrix& c) {
  Eigen::JacobiSVD<Matrix> svd(c);
  Vector s = svd.singularValues();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < s.size(); i += 2) out.push_back(s[i]);
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXcd random_unitary(int dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ();
}

Vector random_unit(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.normal();
  return v.normalized();
}

double orthogonality_residual(const Matrix& o) {
  return max_abs(o.transpose() * o - Matrix::Identity(o.rows(), o.cols()));
}

}  // namespace

TEST(NormalForm, OmegaIsAlreadyNormal) {
  const NormalForm nf = normal_form(AntisymmetricMatrix(omega(2)));
  ASSERT_EQ(nf.lambdas.size(), 2u);
  EXPECT_NEAR(nf.lambdas[0], 1.0, 1e-12);
  EXPECT_NEAR(nf.lambdas[1], 1.0, 1e-12);
  EXPECT_LE(max_abs(nf.reconstruct() - omega(2)), 1e-12);
}

TEST(NormalForm, ZeroMatrix) {
  const NormalForm nf = normal_form(AntisymmetricMatrix::zero(4));
  EXPECT_EQ(nf.lambdas, (std::vector<double>{0.0, 0.0}));
  EXPECT_LE(orthogonality_residual(nf.O.matrix()), 1e-12);
}

TEST(NormalForm, TPlusHasZeroLambda) {
  const StateVector tplus =
      StateVector::from_amplitudes(1, {1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), std::numbers::pi / 4)});
  EXPECT_NEAR(expectation(tplus, PauliString::from_letters("Z")), 0.0, 1e-15);
  Matrix c = Matrix::Zero(2, 2);
  c(0, 1) = expectation(tplus, majorana_pair(1, 2, 1));
  c(1, 0) = -c(0, 1);
  const NormalForm nf = normal_form(AntisymmetricMatrix(c));
  EXPECT_NEAR(nf.lambdas[0], 0.0, 1e-12);
}

TEST(NormalForm, RejectsNonAntisymmetric) {
  Matrix a = omega(2);
  a(0, 0) = 0.1;
  EXPECT_THROW(AntisymmetricMatrix{a}, PreconditionError);
  EXPECT_THROW(AntisymmetricMatrix{Matrix::Zero(3, 3)}, PreconditionError);
}

TEST(NormalForm, RandomMatricesAgainstSvdOracle) {
  Rng rng(42);
  for (int k = 0; k < 100; ++k) {
    const int dim = 2 * (1 + static_cast<int>(rng.below(8)));
    const Matrix c = random_antisymmetric(dim, rng, 0.3);
    const NormalForm nf = normal_form(AntisymmetricMatrix(c));
    EXPECT_LE(max_abs(nf.reconstruct() - c), 1e-9);
    EXPECT_LE(orthogonality_residual(nf.O.matrix()), 1e-10);
    EXPECT_TRUE(std::is_sorted(nf.lambdas.begin(), nf.lambdas.end()));
    const auto ref = svd_lambdas(c);
    for (std::size_t j = 0; j < ref.size(); ++j) EXPECT_NEAR(nf.lambdas[j], ref[j], 1e-9);
  }
}

TEST(NormalForm, DegenerateAndZeroLambdas) {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const std::vector<double> lambdas{0.0, 0.0, 0.5, 0.5, 1.0, 1.0};
    const Matrix o = random_orthogonal(12, rng).matrix();
    const Matrix c = o * lambda_blocks(lambdas) * o.transpose();
    const NormalForm nf = normal_form(AntisymmetricMatrix(c));
    EXPECT_LE(max_abs(nf.reconstruct() - c), 1e-9);
    EXPECT_LE(orthogonality_residual(nf.O.matrix()), 1e-10);
    for (std::size_t j = 0; j < lambdas.size(); ++j) EXPECT_NEAR(nf.lambdas[j], lambdas[j], 1e-9);
  }
}

TEST(NormalForm, LambdasIdempotentUnderReconstruction) {
  Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    const NormalForm nf = normal_form(AntisymmetricMatrix(random_antisymmetric(8, rng)));
    const NormalForm again = normal_form(AntisymmetricMatrix(nf.reconstruct()));
    for (std::size_t j = 0; j < nf.lambdas.size(); ++j) EXPECT_NEAR(again.lambdas[j], nf.lambdas[j], 1e-9);
  }
}

TEST(NormalForm, WeylPerturbationBound) {
  Rng rng(99);
  for (int k = 0; k < 100; ++k) {
    const int dim = 2 * (1 + static_cast<int>(rng.below(8)));
    const Matrix a = random_antisymmetric(dim, rng, 0.3);
    const Matrix e = random_antisymmetric(dim, rng, std::pow(10.0, -1.0 - 3.0 * rng.uniform()));
    const auto la = normal_form(AntisymmetricMatrix(a)).lambdas;
    const auto lb = normal_form(AntisymmetricMatrix(a + e)).lambdas;
    const double bound = operator_norm(e);
    for (std::size_t j = 0; j < la.size(); ++j) EXPECT_LE(std::abs(lb[j] - la[j]), bound + 1e-12);
  }
}

TEST(Symplectic, Predicate) {
  EXPECT_TRUE(is_symplectic(OrthogonalMatrix::identity(4)));
  EXPECT_FALSE(is_symplectic(OrthogonalMatrix(reflection_matrix(4))));
  Rng rng(3);
  EXPECT_TRUE(is_symplectic(symplectic_from_unitary(random_unitary(3, rng))));
}

TEST(Symplectic, FromUnitaryExamples) {
  EXPECT_LE(max_abs(symplectic_from_unitary(Eigen::MatrixXcd::Identity(3, 3)).matrix() - Matrix::Identity(6, 6)), 0.0);
  Eigen::MatrixXcd u(1, 1);
  u(0, 0) = std::complex<double>(0, 1);
  Matrix expect(2, 2);
  expect << 0, 1, -1, 0;
  EXPECT_LE(max_abs(symplectic_from_unitary(u).matrix() - expect), 0.0);
}

TEST(Symplectic, RoundTrip) {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const Eigen::MatrixXcd u = random_unitary(4, rng);
    const OrthogonalMatrix o = symplectic_from_unitary(u);
    EXPECT_TRUE(is_symplectic(o));
    EXPECT_LE((unitary_from_symplectic(o) - u).cwiseAbs().maxCoeff(), 1e-10);
  }
  Eigen::MatrixXcd u(1, 1);
  u(0, 0) = std::complex<double>(0, 1);
  Matrix o(2, 2);
  o << 0, 1, -1, 0;
  EXPECT_LE(std::abs(unitary_from_symplectic(OrthogonalMatrix(o))(0, 0) - u(0, 0)), 0.0);
  EXPECT_LE((unitary_from_symplectic(OrthogonalMatrix::identity(6)) - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff(),
            0.0);
}

TEST(Symplectic, RejectsBadInput) {
  EXPECT_THROW(symplectic_from_unitary(2.0 * Eigen::MatrixXcd::Identity(2, 2)), PreconditionError);
  EXPECT_THROW(unitary_from_symplectic(OrthogonalMatrix(reflection_matrix(4))), PreconditionError);
}

TEST(CompressionRotation, FrontVectorsStayInFront) {
  std::vector<Vector> vs{Vector::Unit(8, 0), Vector::Unit(8, 1)};
  const OrthogonalMatrix o = compression_rotation(vs, true);
  EXPECT_TRUE(is_symplectic(o));
  for (const auto& v : vs) EXPECT_LE((o.matrix() * v).tail(4).norm(), 1e-12);
}

TEST(CompressionRotation, TailPlaneMovesToFront) {
  const Vector v = (Vector::Unit(8, 6) + Vector::Unit(8, 7)) / std::sqrt(2.0);
  const OrthogonalMatrix o = compression_rotation({v}, true);
  EXPECT_LE((o.matrix() * v).tail(6).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_TRUE(is_symplectic(o));
}

TEST(CompressionRotation, RandomVectorsSymplectic) {
  Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    const std::vector<Vector> vs{random_unit(8, rng), random_unit(8, rng)};
    const OrthogonalMatrix o = compression_rotation(vs, true);
    EXPECT_LE(orthogonality_residual(o.matrix()), 1e-10);
    EXPECT_TRUE(is_symplectic(o));
    for (const auto& v : vs) EXPECT_LE((o.matrix() * v).tail(4).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(CompressionRotation, RandomVectorsPlain) {
  Rng rng(13);
  for (int m = 1; m <= 8; ++m) {
    std::vector<Vector> vs;
    for (int j = 0; j < m; ++j) vs.push_back(random_unit(8, rng));
    const OrthogonalMatrix o = compression_rotation(vs, false);
    for (const auto& v : vs) {
      if (m < 8) EXPECT_LE((o.matrix() * v).tail(8 - m).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(CompressionRotation, DependentVectorsAllowed) {
  Rng rng(14);
  const Vector v = random_unit(6, rng);
  const OrthogonalMatrix o = compression_rotation({v, -v}, true);
  EXPECT_LE((o.matrix() * v).tail(4).norm(), 1e-9);
}

TEST(CompressionRotation, RejectsBadInput) {
  Rng rng(15);
  EXPECT_THROW(compression_rotation({random_unit(4, rng), random_unit(4, rng), random_unit(4, rng)}, true),
               PreconditionError);
  EXPECT_THROW(compression_rotation({2.0 * random_unit(4, rng)}, false), PreconditionError);
  EXPECT_THROW(compression_rotation({Vector::Zero(4)}, false), PreconditionError);
}

TEST(Givens, IdentityHasEmptyProgram) {
  const GivensProgram p = givens_decompose(OrthogonalMatrix::identity(6));
  EXPECT_TRUE(p.rotations.empty());
  EXPECT_FALSE(p.reflect_first);
}

TEST(Givens, LeadingBlockRotation) {
  Matrix o = Matrix::Identity(6, 6);
  o(0, 1) = 1;
  o(1, 0) = -1;
  o(0, 0) = o(1, 1) = 0;
  const GivensProgram p = givens_decompose(OrthogonalMatrix(o));
  EXPECT_LE(max_abs(p.reconstruct() - o), 1e-12);
}

TEST(Givens, ReflectedFixture) {
  Rng rng(2);
  Matrix fixture = random_orthogonal(6, rng).matrix();
  if (fixture.determinant() > 0) fixture = fixture * reflection_matrix(6);
  ASSERT_LT(fixture.determinant(), 0);
  const GivensProgram p = givens_decompose(OrthogonalMatrix(fixture));
  EXPECT_TRUE(p.reflect_first);
  EXPECT_LE(max_abs(p.reconstruct() - fixture), 1e-10);
}

TEST(Givens, RandomReconstructionAndCount) {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const OrthogonalMatrix o = random_orthogonal(2 * n, rng, k % 2 == 0);
    const GivensProgram p = givens_decompose(o);
    EXPECT_LE(max_abs(p.reconstruct() - o.matrix()), 1e-10);
    EXPECT_LE(p.rotations.size(), static_cast<std::size_t>(n * (2 * n - 1)));
  }
}

TEST(Givens, RejectsNonOrthogonal) {
  EXPECT_THROW(OrthogonalMatrix(2.0 * Matrix::Identity(4, 4)), PreconditionError);
}

TEST(RandomOrthogonal, SmallestDimension) {
  Rng rng(1);
  const OrthogonalMatrix o = random_orthogonal(2, rng);
  EXPECT_NEAR(std::abs(o.determinant()), 1.0, 1e-12);
  EXPECT_LE(orthogonality_residual(o.matrix()), 1e-12);
}

TEST(RandomOrthogonal, ResidualAndEntryScale) {
  Rng rng(17);
  for (bool haar : {true, false}) {
    double mean_abs = 0.0;
    const int dim = 8, draws = 100;
    for (int k = 0; k < draws; ++k) {
      const OrthogonalMatrix o = random_orthogonal(dim, rng, haar);
      EXPECT_LE(orthogonality_residual(o.matrix()), 1e-12);
      mean_abs += o.matrix().cwiseAbs().mean();
    }
    mean_abs /= draws;
    EXPECT_GT(mean_abs, 0.5 / std::sqrt(dim));
    EXPECT_LT(mean_abs, 1.5 / std::sqrt(dim));
  }
}

TEST(RandomOrthogonal, RejectsOddDimension) {
  Rng rng(1);
  EXPECT_THROW(random_orthogonal(3, rng), PreconditionError);
}

TEST(MatrixText, RoundTripIsExact) {
  Rng rng(23);
  const Matrix m = random_orthogonal(6, rng).matrix();
  std::stringstream ss;
  write_matrix(ss, m);
  const Matrix back = read_matrix(ss);
  EXPECT_EQ(back, m);
  std::stringstream bad("2 2\n1 2\n3 x\n");
  EXPECT_THROW(read_matrix(bad), PreconditionError);
}
