// Copyright 2026 The Symplectica Authors
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

#include "symplectica/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

namespace symplectica {

std::string_view ordering_name(ModeOrdering ordering) {
  return ordering == ModeOrdering::Interleaved ? "interleaved" : "blocked";
}

ModeOrdering parse_ordering(std::string_view name) {
  if (name == "interleaved") return ModeOrdering::Interleaved;
  if (name == "blocked") return ModeOrdering::Blocked;
  throw Error(ErrorCode::BadFormat,
              "unknown ordering '" + std::string(name) + "'");
}

Matrix ordering_permutation(int n) {
  Matrix p = Matrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    p(j, 2 * j) = 1.0;
    p(n + j, 2 * j + 1) = 1.0;
  }
  return p;
}

Matrix to_blocked(const Matrix &interleaved) {
  require_square(interleaved, "matrix");
  const Eigen::Index dim = interleaved.rows();
  const Eigen::Index n = dim / 2;
  Matrix out(dim, dim);
  auto index = [n](Eigen::Index i) { return (i % 2) * n + i / 2; };
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      out(index(i), index(j)) = interleaved(i, j);
    }
  }
  return out;
}

Matrix to_interleaved(const Matrix &blocked) {
  require_square(blocked, "matrix");
  const Eigen::Index dim = blocked.rows();
  const Eigen::Index n = dim / 2;
  Matrix out(dim, dim);
  auto index = [n](Eigen::Index i) { return (i % 2) * n + i / 2; };
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      out(i, j) = blocked(index(i), index(j));
    }
  }
  return out;
}

Matrix symplectic_form(int n) {
  if (n < 1) {
    throw Error(ErrorCode::DimensionMismatch, "mode count must be >= 1");
  }
  Matrix omega = Matrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

double scaled_symplectic_tol(const Matrix &s, double base) {
  const double norm = norm_inf(s);
  return base * std::max(1.0, norm * norm);
}

bool is_symplectic(const Matrix &s, double tol) {
  require_square(s, "symplectic candidate");
  if (s.rows() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "symplectic candidate must have even dimension");
  }
  if (!s.allFinite()) return false;
  const Matrix omega = symplectic_form(static_cast<int>(s.rows() / 2));
  return norm_inf(s * omega * s.transpose() - omega) <= tol;
}

SymplecticMatrix::SymplecticMatrix(Matrix m, double tol) : m_(std::move(m)) {
  require_finite(m_, "symplectic matrix");
  if (!is_symplectic(m_, tol)) {
    const Matrix omega = symplectic_form(modes());
    std::ostringstream os;
    os << "||S Omega S^T - Omega|| = "
       << norm_inf(m_ * omega * m_.transpose() - omega) << " exceeds " << tol;
    throw Error(ErrorCode::NotSymplectic, os.str());
  }
  const double norm = norm_inf(m_);
  const double d = det(m_);
  if (std::abs(d - 1.0) > 1e-8 * std::max(1.0, norm * norm)) {
    std::ostringstream os;
    os << "determinant " << d << " is not +1";
    throw Error(ErrorCode::NotSymplectic, os.str());
  }
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
  return SymplecticMatrix(Matrix::Identity(2 * n, 2 * n), Trusted{});
}

SymplecticMatrix SymplecticMatrix::operator*(
    const SymplecticMatrix &rhs) const {
  if (rhs.m_.rows() != m_.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "symplectic product of different mode counts");
  }
  return SymplecticMatrix(m_ * rhs.m_, Trusted{});
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  // S^-1 = -Omega S^T Omega.
  const Matrix omega = symplectic_form(modes());
  return SymplecticMatrix(-omega * m_.transpose() * omega, Trusted{});
}

SymplecticMatrix SymplecticMatrix::transpose() const {
  return SymplecticMatrix(m_.transpose(), Trusted{});
}

Matrix rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix r(2, 2);
  r << c, s, -s, c;
  return r;
}

Matrix squeezer(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::NonPositiveSqueeze,
                "squeezing factor must be positive and finite");
  }
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = z;
  s(1, 1) = 1.0 / z;
  return s;
}

Matrix phase_shifter() {
  Matrix p(2, 2);
  p << 0.0, 1.0, -1.0, 0.0;
  return p;
}

SymplecticMatrix beam_splitter(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix b = Matrix::Zero(4, 4);
  b.block(0, 0, 2, 2) = c * Matrix::Identity(2, 2);
  b.block(0, 2, 2, 2) = s * Matrix::Identity(2, 2);
  b.block(2, 0, 2, 2) = -s * Matrix::Identity(2, 2);
  b.block(2, 2, 2, 2) = c * Matrix::Identity(2, 2);
  return SymplecticMatrix(std::move(b));
}

SymplecticMatrix seraphique(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix m(4, 4);
  // clang-format off
  m <<  c, 0.0, 0.0,   s,
      0.0,   c,  -s, 0.0,
      0.0,   s,   c, 0.0,
       -s, 0.0, 0.0,   c;
  // clang-format on
  return SymplecticMatrix(std::move(m));
}

namespace {

void check_modes(const ModeList &modes, int n) {
  std::set<int> seen;
  for (int m : modes) {
    if (m < 1 || m > n || !seen.insert(m).second) {
      std::ostringstream os;
      os << "mode index " << m << " invalid or repeated for " << n
         << " modes";
      throw Error(ErrorCode::BadModeIndex, os.str());
    }
  }
}

}  // namespace

SymplecticMatrix embed(const Matrix &op, const ModeList &modes, int n) {
  require_square(op, "embedded operation");
  check_modes(modes, n);
  if (op.rows() != 2 * static_cast<Eigen::Index>(modes.size())) {
    throw Error(ErrorCode::BadModeIndex,
                "operation size does not match the number of modes");
  }
  Matrix out = Matrix::Identity(2 * n, 2 * n);
  const auto k = static_cast<Eigen::Index>(modes.size());
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      const Eigen::Index ra = 2 * (modes[static_cast<size_t>(a)] - 1);
      const Eigen::Index rb = 2 * (modes[static_cast<size_t>(b)] - 1);
      out.block(ra, rb, 2, 2) = op.block(2 * a, 2 * b, 2, 2);
    }
  }
  return SymplecticMatrix(std::move(out), scaled_symplectic_tol(op, 1e-10));
}

SymplecticMatrix embed(const SymplecticMatrix &op, const ModeList &modes,
                       int n) {
  return embed(op.matrix(), modes, n);
}

Matrix direct_sum(const std::vector<Matrix> &parts) {
  Eigen::Index rows = 0, cols = 0;
  for (const Matrix &p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const Matrix &p : parts) {
    out.block(r, c, p.rows(), p.cols()) = p;
    r += p.rows();
    c += p.cols();
  }
  return out;
}

SymplecticMatrix local_symplectic(const std::vector<Matrix> &single_mode) {
  for (const Matrix &m : single_mode) {
    if (m.rows() != 2 || m.cols() != 2) {
      throw Error(ErrorCode::DimensionMismatch,
                  "local operations must be 2x2");
    }
  }
  Matrix sum = direct_sum(single_mode);
  const double tol = scaled_symplectic_tol(sum, 1e-10);
  return SymplecticMatrix(std::move(sum), tol);
}

EulerFactors euler_decompose(const SymplecticMatrix &s,
                             const Tolerances &tol) {
  const int n = s.modes();
  const Matrix &m = s.matrix();
  const Matrix omega = symplectic_form(n);

  // S S^T = M Z^2 M^T with M orthogonal symplectic. Eigenvectors for z^2 pair
  // with Omega^T e, the eigenvector for 1/z^2.
  const Matrix gram = m * m.transpose();
  const SymEigResult eig = sym_eig(0.5 * (gram + gram.transpose()), tol);
  const Matrix basis = detail::pair_basis(
      eig,
      [&](const Vector &e) -> Vector { return -omega * e; }, n);

  std::vector<double> z(static_cast<size_t>(n));
  Matrix squeeze = Matrix::Zero(2 * n, 2 * n);
  Matrix squeeze_inv = Matrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const Vector e = basis.col(2 * j);
    double zj = std::sqrt(std::max(e.dot(gram * e), 0.0));
    if (zj < 1.0 && zj > 1.0 - 1e-10) zj = 1.0;
    z[static_cast<size_t>(j)] = zj;
    squeeze(2 * j, 2 * j) = zj;
    squeeze(2 * j + 1, 2 * j + 1) = 1.0 / zj;
    squeeze_inv(2 * j, 2 * j) = 1.0 / zj;
    squeeze_inv(2 * j + 1, 2 * j + 1) = zj;
  }
  Matrix right = squeeze_inv * basis.transpose() * m;

  const double right_tol = scaled_symplectic_tol(right, tol.symp);
  return EulerFactors{SymplecticMatrix(basis, tol.symp),
                      SymplecticMatrix(std::move(squeeze), tol.symp),
                      SymplecticMatrix(std::move(right), right_tol),
                      std::move(z)};
}

Matrix conjugate_cm(const Matrix &sigma, const SymplecticMatrix &s) {
  if (sigma.rows() != s.matrix().rows() || sigma.cols() != sigma.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "covariance matrix and symplectic dimensions differ");
  }
  const Matrix out = s.matrix().transpose() * sigma * s.matrix();
  return 0.5 * (out + out.transpose());
}

}  // namespace symplectica
