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

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "symplectica/error.hpp"

namespace symplectica {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Numerical tolerances shared by all modules. Values marked relative are
/// scaled by the max-abs norm of the input.
struct Tolerances {
  double sym = 1e-12;   // relative: symmetry / antisymmetry checks
  double orth = 1e-10;  // absolute: ||Q^T Q - I||
  double rec = 1e-9;    // relative: reconstruction residuals
  double symp = 1e-10;  // absolute: ||S Omega S^T - Omega||
  double phys = 1e-9;   // absolute: nu_j >= 1 - phys
  double pure = 1e-9;   // absolute: ||-sigma Omega sigma Omega - I||

  /// Scales every field by `factor`, used by the CLI's global --tol.
  Tolerances scaled(double factor) const;
};

/// Largest absolute entry.
double norm_inf(const Matrix &a);

void require_finite(const Matrix &a, const char *what);
void require_square(const Matrix &a, const char *what);
bool is_symmetric(const Matrix &a, double rel_tol);
bool is_antisymmetric(const Matrix &a, double rel_tol);
bool is_orthogonal(const Matrix &q, double tol);

struct SymEigResult {
  Vector eigenvalues;  // ascending
  Matrix eigenvectors;  // orthonormal columns
};

/// Cyclic Jacobi diagonalisation of a symmetric matrix. Converges when the
/// off-diagonal Frobenius norm drops below 1e-14 * ||A||; gives up after
/// 100 sweeps.
SymEigResult sym_eig(const Matrix &a, const Tolerances &tol = {});

struct SkewCanonResult {
  Matrix rotation;             // O with O^T A O = (+)_j beta_j omega
  std::vector<double> betas;   // descending, positive
};

/// Real canonical form of a nonsingular antisymmetric matrix under
/// orthogonal congruence.
SkewCanonResult skew_canonical(const Matrix &a, const Tolerances &tol = {});

/// Block-diagonal (+)_j beta_j omega.
Matrix skew_block(const std::vector<double> &betas);

Matrix inverse(const Matrix &a);
Vector solve(const Matrix &a, const Vector &b);
double det(const Matrix &a);
Matrix sqrt_spd(const Matrix &a, const Tolerances &tol = {});
Matrix inv_sqrt_spd(const Matrix &a, const Tolerances &tol = {});

namespace detail {

/// Builds an orthonormal basis (e_1, f_1, ..., e_k, f_k) from the
/// eigenvectors of `eig`, visiting eigenvalues in descending order. Within a
/// cluster of (near) equal eigenvalues the candidates are the projections of
/// the coordinate axes, taken largest residual first, so degenerate spectra
/// give a reproducible basis. `partner(e_j)` gives f_j. The span of accepted
/// pairs must be invariant under `partner` for the result to be orthogonal.
/// The largest-magnitude component of each e_j is made positive.
Matrix pair_basis(const SymEigResult &eig,
                  const std::function<Vector(const Vector &)> &partner,
                  int pairs);

}  // namespace detail

}  // namespace symplectica
