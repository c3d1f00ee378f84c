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

#include "tdoped/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "tdoped/errors.hpp"

namespace tdoped {

namespace {

constexpr double kOrthoTol = 1e-10;
constexpr double kUnitNormTol = 1e-9;
constexpr double kDependentTol = 1e-12;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

void require_even(int dim, const char* what) {
  if (dim < 0 || dim % 2 != 0) throw PreconditionError(std::string(what) + ": dimension must be even");
}

// Orthonormalizes `basis` columns in place order; returns false when the
// candidate is numerically inside the current span.
template <typename Vec>
bool absorb(std::vector<Vec>& basis, Vec v, double drop_tol) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) v -= q * q.dot(v);
  }
  const double r = v.norm();
  if (r < drop_tol) return false;
  basis.push_back(v / r);
  return true;
}

// Extends an orthonormal set to a full basis, each time picking the
// canonical vector with the largest residual.
template <typename Vec>
void complete_basis(std::vector<Vec>& basis, Eigen::Index dim) {
  while (static_cast<Eigen::Index>(basis.size()) < dim) {
    Eigen::Index best = 0;
    double best_r = -1.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      Vec e = Vec::Zero(dim);
      e[i] = 1.0;
      for (const auto& q : basis) e -= q * q.dot(e);
      if (e.norm() > best_r) {
        best_r = e.norm();
        best = i;
      }
    }
    Vec e = Vec::Zero(dim);
    e[best] = 1.0;
    absorb(basis, e, 0.0);
  }
}

CVector to_complex(const Vector& w) {
  const Eigen::Index n = w.size() / 2;
  CVector f(n);
  for (Eigen::Index k = 0; k < n; ++k) f[k] = std::complex<double>(w[2 * k], -w[2 * k + 1]);
  return f;
}

}  // namespace

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()[0];
}

AntisymmetricMatrix::AntisymmetricMatrix(const Matrix& a) {
  if (a.rows() != a.cols()) throw PreconditionError("AntisymmetricMatrix: matrix is not square");
  require_even(static_cast<int>(a.rows()), "AntisymmetricMatrix");
  const double scale = std::max(1.0, max_abs(a));
  if (max_abs(a + a.transpose()) > 1e-12 * scale) {
    throw PreconditionError("AntisymmetricMatrix: input is not antisymmetric");
  }
  a_ = 0.5 * (a - a.transpose());
}

AntisymmetricMatrix AntisymmetricMatrix::zero(int dim) { return AntisymmetricMatrix(Matrix::Zero(dim, dim)); }

OrthogonalMatrix::OrthogonalMatrix(const Matrix& o) : o_(o) {
  if (o.rows() != o.cols()) throw PreconditionError("OrthogonalMatrix: matrix is not square");
  const Matrix gram = o.transpose() * o - Matrix::Identity(o.rows(), o.cols());
  if (max_abs(gram) > kOrthoTol) throw PreconditionError("OrthogonalMatrix: input is not orthogonal");
}

OrthogonalMatrix OrthogonalMatrix::identity(int dim) {
  return OrthogonalMatrix(Matrix::Identity(dim, dim), Unchecked{});
}

OrthogonalMatrix OrthogonalMatrix::transpose() const { return OrthogonalMatrix(o_.transpose(), Unchecked{}); }

double OrthogonalMatrix::determinant() const { return o_.rows() == 0 ? 1.0 : o_.determinant(); }

OrthogonalMatrix OrthogonalMatrix::operator*(const OrthogonalMatrix& rhs) const {
  if (dim() != rhs.dim()) throw PreconditionError("OrthogonalMatrix: dimension mismatch");
  return OrthogonalMatrix(o_ * rhs.o_, Unchecked{});
}

Matrix lambda_blocks(const std::vector<double>& lambdas) {
  const Eigen::Index d = 2 * static_cast<Eigen::Index>(lambdas.size());
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    m(2 * j, 2 * j + 1) = lambdas[j];
    m(2 * j + 1, 2 * j) = -lambdas[j];
  }
  return m;
}

Matrix omega(int n) { return lambda_blocks(std::vector<double>(static_cast<std::size_t>(n), 1.0)); }

Matrix NormalForm::reconstruct() const { return O.matrix() * lambda_blocks(lambdas) * O.matrix().transpose(); }

NormalForm normal_form(const AntisymmetricMatrix& c) {
  const int d = c.dim();
  const int n = d / 2;
  NormalForm out;
  if (d == 0) {
    out.O = OrthogonalMatrix::identity(0);
    return out;
  }
  const CMatrix h = std::complex<double>(0.0, 1.0) * c.matrix().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  const Vector evals = eig.eigenvalues();
  const CMatrix& evecs = eig.eigenvectors();
  const double tau = 1e-12 * std::max(1.0, max_abs(c.matrix()));

  out.lambdas.resize(static_cast<std::size_t>(n));
  std::vector<bool> resolved(static_cast<std::size_t>(n), false);
  Matrix o = Matrix::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    const double lam = evals[n + j];
    out.lambdas[static_cast<std::size_t>(j)] = std::max(0.0, lam);
    if (lam > tau) {
      const CVector w = evecs.col(n + j);
      o.col(2 * j) = std::sqrt(2.0) * w.imag();
      o.col(2 * j + 1) = std::sqrt(2.0) * w.real();
      resolved[static_cast<std::size_t>(j)] = true;
    }
  }

  // Re-orthonormalize from the largest lambda down so that small-lambda
  // planes absorb the rounding error.
  std::vector<Vector> basis;
  for (int j = n - 1; j >= 0; --j) {
    if (!resolved[static_cast<std::size_t>(j)]) continue;
    for (int k = 0; k < 2; ++k) {
      Vector v = o.col(2 * j + k);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) v -= q * q.dot(v);
      }
      v.normalize();
      o.col(2 * j + k) = v;
      basis.push_back(v);
    }
  }
  // Planes with (numerically) zero lambda: any orthonormal completion.
  std::vector<Vector> rest = basis;
  complete_basis(rest, d);
  std::size_t next = basis.size();
  for (int j = 0; j < n; ++j) {
    if (resolved[static_cast<std::size_t>(j)]) continue;
    o.col(2 * j) = rest[next++];
    o.col(2 * j + 1) = rest[next++];
  }
  out.O = OrthogonalMatrix(o);
  return out;
}

bool is_symplectic(const OrthogonalMatrix& o, double tol) {
  if (o.dim() % 2 != 0) return false;
  const Matrix w = omega(o.dim() / 2);
  return max_abs(o.matrix() * w * o.matrix().transpose() - w) <= tol;
}

OrthogonalMatrix symplectic_from_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw PreconditionError("symplectic_from_unitary: matrix is not square");
  const Eigen::Index n = u.rows();
  if ((u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > kOrthoTol) {
    throw PreconditionError("symplectic_from_unitary: matrix is not unitary");
  }
  Matrix o(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double a = u(j, k).real(), b = u(j, k).imag();
      o(2 * j, 2 * k) = a;
      o(2 * j, 2 * k + 1) = b;
      o(2 * j + 1, 2 * k) = -b;
      o(2 * j + 1, 2 * k + 1) = a;
    }
  }
  return OrthogonalMatrix(o);
}

Eigen::MatrixXcd unitary_from_symplectic(const OrthogonalMatrix& o) {
  if (!is_symplectic(o)) throw PreconditionError("unitary_from_symplectic: matrix is not symplectic");
  const Eigen::Index n = o.dim() / 2;
  CMatrix u(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) u(j, k) = std::complex<double>(o(2 * j, 2 * k), o(2 * j, 2 * k + 1));
  }
  return u;
}

OrthogonalMatrix compression_rotation(const std::vector<Vector>& vs, bool symplectic) {
  if (vs.empty()) throw PreconditionError("compression_rotation: no vectors given");
  const Eigen::Index d = vs.front().size();
  require_even(static_cast<int>(d), "compression_rotation");
  const Eigen::Index n = d / 2;
  const Eigen::Index m = static_cast<Eigen::Index>(vs.size());
  if (m > (symplectic ? n : d)) throw PreconditionError("compression_rotation: too many vectors");
  for (const auto& v : vs) {
    if (v.size() != d) throw PreconditionError("compression_rotation: vector dimension mismatch");
    if (std::abs(v.norm() - 1.0) > kUnitNormTol) {
      throw PreconditionError("compression_rotation: vector is not unit norm");
    }
  }
  if (!symplectic) {
    std::vector<Vector> basis;
    for (const auto& v : vs) absorb(basis, v, kDependentTol);
    complete_basis(basis, d);
    Matrix q(d, d);
    for (Eigen::Index i = 0; i < d; ++i) q.col(i) = basis[static_cast<std::size_t>(i)];
    return OrthogonalMatrix(q.transpose());
  }
  std::vector<CVector> basis;
  for (const auto& v : vs) absorb(basis, to_complex(v), kDependentTol);
  complete_basis(basis, n);
  CMatrix q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) q.col(i) = basis[static_cast<std::size_t>(i)];
  return symplectic_from_unitary(q.adjoint());
}

Matrix rotation_matrix(int dim, const GivensRotation& r) {
  if (r.mu < 1 || r.nu > dim || r.mu >= r.nu) throw PreconditionError("rotation_matrix: invalid plane");
  Matrix m = Matrix::Identity(dim, dim);
  const double c = std::cos(r.angle), s = std::sin(r.angle);
  const int a = r.mu - 1, b = r.nu - 1;
  m(a, a) = c;
  m(a, b) = s;
  m(b, a) = -s;
  m(b, b) = c;
  return m;
}

Matrix reflection_matrix(int dim) {
  Matrix m = -Matrix::Identity(dim, dim);
  if (dim > 0) m(0, 0) = 1.0;
  return m;
}

Matrix GivensProgram::reconstruct() const {
  Matrix m = Matrix::Identity(dim, dim);
  for (const auto& r : rotations) m = m * rotation_matrix(dim, r);
  if (reflect_first) m = m * reflection_matrix(dim);
  return m;
}

GivensProgram givens_decompose(const OrthogonalMatrix& o) {
  GivensProgram prog;
  prog.dim = o.dim();
  const int d = o.dim();
  Matrix q = o.matrix();
  if (d > 0 && o.determinant() < 0) {
    prog.reflect_first = true;
    q = q * reflection_matrix(d);
  }
  for (int j = 0; j + 1 < d; ++j) {
    for (int i = d - 1; i > j; --i) {
      const double a = q(i - 1, j), b = q(i, j);
      if (b == 0.0 && a >= 0.0) continue;
      const double theta = std::atan2(b, a);
      const double c = std::cos(theta), s = std::sin(theta);
      const Vector top = q.row(i - 1), bottom = q.row(i);
      q.row(i - 1) = c * top + s * bottom;
      q.row(i) = -s * top + c * bottom;
      q(i, j) = 0.0;
      prog.rotations.push_back({i, i + 1, -theta});
    }
  }
  return prog;
}

OrthogonalMatrix random_orthogonal(int dim, Rng& rng, bool haar) {
  require_even(dim, "random_orthogonal");
  if (dim == 0) return OrthogonalMatrix::identity(0);
  if (haar) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) g(i, j) = rng.normal();
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    }
    return OrthogonalMatrix(q);
  }
  Matrix m = Matrix::Identity(dim, dim);
  const int count = dim * (dim - 1) / 2;
  for (int k = 0; k < count; ++k) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim - 1)));
    if (b >= a) ++b;
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    m = rotation_matrix(dim, {std::min(a, b) + 1, std::max(a, b) + 1, theta}) * m;
  }
  if (rng.uniform() < 0.5) m = m * reflection_matrix(dim);
  return OrthogonalMatrix(m);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_matrix(std::ostream& os, const Matrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is) {
  Eigen::Index rows = -1, cols = -1;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw PreconditionError("read_matrix: bad header");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::string tok;
      if (!(is >> tok)) throw PreconditionError("read_matrix: truncated matrix");
      try {
        std::size_t used = 0;
        m(i, j) = std::stod(tok, &used);
        if (used != tok.size()) throw PreconditionError("read_matrix: bad entry '" + tok + "'");
      } catch (const std::logic_error&) {
        throw PreconditionError("read_matrix: bad entry '" + tok + "'");
      }
    }
  }
  return m;
}

}  // namespace tdoped
