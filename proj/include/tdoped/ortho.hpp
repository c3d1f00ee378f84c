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

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tdoped/rng.hpp"

namespace tdoped {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest absolute entry.
double max_abs(const Matrix& m);
/// Largest singular value.
double operator_norm(const Matrix& m);

/// Real antisymmetric matrix of even dimension. The stored entries are
/// exactly antisymmetric: the input is replaced by (A - A^T)/2 after the
/// tolerance check.
class AntisymmetricMatrix {
 public:
  AntisymmetricMatrix() = default;
  explicit AntisymmetricMatrix(const Matrix& a);

  static AntisymmetricMatrix zero(int dim);

  int dim() const { return static_cast<int>(a_.rows()); }
  int num_modes() const { return dim() / 2; }
  const Matrix& matrix() const { return a_; }
  double operator()(int i, int j) const { return a_(i, j); }

 private:
  Matrix a_;
};

class OrthogonalMatrix {
 public:
  OrthogonalMatrix() = default;
  /// Rejects inputs with max |O^T O - I| above 1e-10.
  explicit OrthogonalMatrix(const Matrix& o);

  static OrthogonalMatrix identity(int dim);

  int dim() const { return static_cast<int>(o_.rows()); }
  const Matrix& matrix() const { return o_; }
  double operator()(int i, int j) const { return o_(i, j); }
  OrthogonalMatrix transpose() const;
  double determinant() const;

  OrthogonalMatrix operator*(const OrthogonalMatrix& rhs) const;

 private:
  struct Unchecked {};
  OrthogonalMatrix(Matrix o, Unchecked) : o_(std::move(o)) {}

  Matrix o_;
};

/// C = O * blocks(lambdas) * O^T with lambdas ascending and nonnegative.
struct NormalForm {
  OrthogonalMatrix O;
  std::vector<double> lambdas;

  Matrix reconstruct() const;
};

/// Direct sum of [[0, l], [-l, 0]] blocks.
Matrix lambda_blocks(const std::vector<double>& lambdas);
Matrix omega(int n);

NormalForm normal_form(const AntisymmetricMatrix& c);

bool is_symplectic(const OrthogonalMatrix& o, double tol = 1e-9);
OrthogonalMatrix symplectic_from_unitary(const Eigen::MatrixXcd& u);
Eigen::MatrixXcd unitary_from_symplectic(const OrthogonalMatrix& o);

/// Orthogonal O moving every vector of `vs` into the span of the leading
/// canonical basis vectors: the first 2M when `symplectic` (and O is then
/// symplectic), the first M otherwise.
OrthogonalMatrix compression_rotation(const std::vector<Vector>& vs, bool symplectic);

/// Plane rotation on 1-based indices mu < nu:
/// [mu,mu] = [nu,nu] = cos, [mu,nu] = sin, [nu,mu] = -sin.
struct GivensRotation {
  int mu = 1;
  int nu = 2;
  double angle = 0.0;
};

/// O = R_1 R_2 ... R_k * D when reflect_first, with D = diag(1, -1, ..., -1).
struct GivensProgram {
  int dim = 0;
  std::vector<GivensRotation> rotations;
  bool reflect_first = false;

  Matrix reconstruct() const;
};

Matrix rotation_matrix(int dim, const GivensRotation& r);
Matrix reflection_matrix(int dim);

GivensProgram givens_decompose(const OrthogonalMatrix& o);

/// Haar draws use QR of a Gaussian matrix with the sign fix; otherwise a
/// product of random plane rotations, reflected with probability 1/2.
OrthogonalMatrix random_orthogonal(int dim, Rng& rng, bool haar = true);

/// "rows cols" header, then one row per line with %.17g entries.
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);
std::string format_double(double x);

}  // namespace tdoped
