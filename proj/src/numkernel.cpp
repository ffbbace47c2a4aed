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

#include "symplectica/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace symplectica {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiStop = 1e-14;

double off_diagonal_norm(const Matrix &a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

// Applies the rotation annihilating a(p, q) to both `a` and the accumulated
// eigenvector matrix `v`.
void jacobi_rotate(Matrix &a, Matrix &v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double g = a(r, p);
    const double h = a(r, q);
    a(r, p) = g - s * (h + g * tau);
    a(p, r) = a(r, p);
    a(r, q) = h + s * (g - h * tau);
    a(q, r) = a(r, q);
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    const double g = v(r, p);
    const double h = v(r, q);
    v(r, p) = g - s * (h + g * tau);
    v(r, q) = h + s * (g - h * tau);
  }
}

void require_even_square(const Matrix &a, const char *what) {
  require_square(a, what);
  if (a.rows() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must have even dimension");
  }
}

}  // namespace

Tolerances Tolerances::scaled(double factor) const {
  Tolerances t = *this;
  t.sym *= factor;
  t.orth *= factor;
  t.rec *= factor;
  t.symp *= factor;
  t.phys *= factor;
  t.pure *= factor;
  return t;
}

double norm_inf(const Matrix &a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

void require_finite(const Matrix &a, const char *what) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::NonFinite,
                std::string(what) + " contains non-finite entries");
  }
}

void require_square(const Matrix &a, const char *what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    std::ostringstream os;
    os << what << " must be square and nonempty, got " << a.rows() << "x"
       << a.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

bool is_symmetric(const Matrix &a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return norm_inf(a - a.transpose()) <= rel_tol * norm_inf(a);
}

bool is_antisymmetric(const Matrix &a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return norm_inf(a + a.transpose()) <= rel_tol * norm_inf(a);
}

bool is_orthogonal(const Matrix &q, double tol) {
  if (q.rows() != q.cols()) return false;
  return norm_inf(q.transpose() * q -
                  Matrix::Identity(q.rows(), q.cols())) <= tol;
}

SymEigResult sym_eig(const Matrix &input, const Tolerances &tol) {
  require_square(input, "sym_eig input");
  require_finite(input, "sym_eig input");
  if (!is_symmetric(input, tol.sym)) {
    throw Error(ErrorCode::NonSymmetric, "sym_eig input is not symmetric");
  }
  const Eigen::Index n = input.rows();
  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double stop = kJacobiStop * norm_inf(input);

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi iteration exceeded 100 sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     return a(i, i) < a(j, j);
                   });
  SymEigResult result{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    result.eigenvalues(k) = a(order[k], order[k]);
    result.eigenvectors.col(k) = v.col(order[k]);
  }
  return result;
}

namespace detail {

Matrix pair_basis(const SymEigResult &eig,
                  const std::function<Vector(const Vector &)> &partner,
                  int pairs) {
  const Eigen::Index dim = eig.eigenvectors.rows();
  const Eigen::Index count = eig.eigenvalues.size();
  const double scale =
      std::max(eig.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
  const double cluster_tol = 1e-9 * scale;
  Matrix basis(dim, 2 * pairs);
  int found = 0;

  auto project_out = [&](Vector w, int columns) {
    // Two Gram-Schmidt passes keep the basis orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (int c = 0; c < columns; ++c) {
        w -= basis.col(c).dot(w) * basis.col(c);
      }
    }
    return w;
  };

  Eigen::Index hi = count;
  while (hi > 0 && found < pairs) {
    Eigen::Index lo = hi - 1;
    while (lo > 0 &&
           eig.eigenvalues(hi - 1) - eig.eigenvalues(lo - 1) <= cluster_tol) {
      --lo;
    }
    const Matrix v = eig.eigenvectors.middleCols(lo, hi - lo);
    const Matrix projector = v * v.transpose();
    hi = lo;

    while (found < pairs) {
      Vector best;
      double best_norm = 0.0;
      for (Eigen::Index i = 0; i < dim; ++i) {
        Vector w = project_out(projector.col(i), 2 * found);
        const double norm = w.norm();
        if (norm > best_norm * (1.0 + 1e-12)) {
          best_norm = norm;
          best = std::move(w);
        }
      }
      if (best_norm < 1e-6) break;
      Vector e = best / best_norm;
      Eigen::Index big = 0;
      e.cwiseAbs().maxCoeff(&big);
      if (e(big) < 0.0) e = -e;
      basis.col(2 * found) = e;

      Vector f = project_out(partner(e), 2 * found + 1);
      const double fnorm = f.norm();
      if (fnorm < 0.5) {
        throw Error(ErrorCode::NoConvergence,
                    "pair partner collapsed onto existing basis");
      }
      basis.col(2 * found + 1) = f / fnorm;
      ++found;
    }
  }
  if (found < pairs) {
    throw Error(ErrorCode::NoConvergence,
                "could not complete a paired orthonormal basis");
  }
  return basis;
}

}  // namespace detail

Matrix skew_block(const std::vector<double> &betas) {
  const auto n = static_cast<Eigen::Index>(betas.size());
  Matrix b = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    b(2 * j, 2 * j + 1) = betas[static_cast<size_t>(j)];
    b(2 * j + 1, 2 * j) = -betas[static_cast<size_t>(j)];
  }
  return b;
}

SkewCanonResult skew_canonical(const Matrix &a, const Tolerances &tol) {
  require_even_square(a, "skew_canonical input");
  require_finite(a, "skew_canonical input");
  if (!is_antisymmetric(a, tol.sym)) {
    throw Error(ErrorCode::NonSymmetric,
                "skew_canonical input is not antisymmetric");
  }
  const Matrix skew = 0.5 * (a - a.transpose());
  const int n = static_cast<int>(skew.rows() / 2);

  // -A^2 is symmetric positive semidefinite with eigenvalues beta_j^2, each
  // doubly degenerate; an eigenvector e pairs with f = -A e / beta.
  const Matrix square = -skew * skew;
  const SymEigResult eig = sym_eig(0.5 * (square + square.transpose()), tol);
  const double determinant = eig.eigenvalues.prod();
  if (!(std::abs(determinant) > 1e-12) || eig.eigenvalues(0) <= 0.0) {
    throw Error(ErrorCode::Singular, "antisymmetric matrix is singular");
  }
  const Matrix basis = detail::pair_basis(
      eig,
      [&](const Vector &e) -> Vector {
        const Vector ae = skew * e;
        return -ae / ae.norm();
      },
      n);

  SkewCanonResult result{basis, {}};
  result.betas.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    result.betas.push_back(
        basis.col(2 * j).dot(skew * basis.col(2 * j + 1)));
  }
  return result;
}

Matrix inverse(const Matrix &a) {
  require_square(a, "inverse input");
  require_finite(a, "inverse input");
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::Singular, "matrix is not invertible");
  }
  return lu.inverse();
}

Vector solve(const Matrix &a, const Vector &b) {
  require_square(a, "solve matrix");
  if (b.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve right-hand side size");
  }
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::Singular, "matrix is not invertible");
  }
  return lu.solve(b);
}

double det(const Matrix &a) {
  require_square(a, "det input");
  return Eigen::PartialPivLU<Matrix>(a).determinant();
}

namespace {

Matrix spd_power(const Matrix &a, const Tolerances &tol, double power) {
  const SymEigResult eig = sym_eig(a, tol);
  if (!(eig.eigenvalues(0) > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "matrix is not positive definite");
  }
  const Vector scaled = eig.eigenvalues.array().pow(power).matrix();
  const Matrix r =
      eig.eigenvectors * scaled.asDiagonal() * eig.eigenvectors.transpose();
  return 0.5 * (r + r.transpose());
}

}  // namespace

Matrix sqrt_spd(const Matrix &a, const Tolerances &tol) {
  return spd_power(a, tol, 0.5);
}

Matrix inv_sqrt_spd(const Matrix &a, const Tolerances &tol) {
  return spd_power(a, tol, -0.5);
}

}  // namespace symplectica
