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

#include "symplectica/gstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace symplectica {

namespace {

// Williamson data of a positive definite matrix: with K = sigma^(1/2) and
// O^T (K Omega K) O = (+) nu_j omega, sigma = S^T diag(nu) S for
// S = diag(nu)^(-1/2) O^T K.
struct WilliamsonParts {
  Matrix root;
  Matrix rotation;
  std::vector<double> nu;
};

WilliamsonParts williamson_parts(const Matrix &sigma, const Tolerances &tol) {
  const SymEigResult eig = sym_eig(sigma, tol);
  if (!(eig.eigenvalues(0) > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "covariance matrix is not positive definite");
  }
  const Vector sqrt_values = eig.eigenvalues.cwiseSqrt();
  Matrix root =
      eig.eigenvectors * sqrt_values.asDiagonal() * eig.eigenvectors.transpose();
  root = 0.5 * (root + root.transpose());
  const int n = static_cast<int>(sigma.rows() / 2);
  const Matrix a = root * symplectic_form(n) * root;
  SkewCanonResult canon = skew_canonical(0.5 * (a - a.transpose()), tol);
  return WilliamsonParts{std::move(root), std::move(canon.rotation),
                         std::move(canon.betas)};
}

void check_cm_shape(const Matrix &m) {
  require_square(m, "covariance matrix");
  if (m.rows() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "covariance matrix must have even dimension");
  }
  require_finite(m, "covariance matrix");
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Matrix &m, const Tolerances &tol) {
  check_cm_shape(m);
  if (!is_symmetric(m, tol.sym)) {
    throw Error(ErrorCode::NonSymmetric, "covariance matrix is not symmetric");
  }
  m_ = 0.5 * (m + m.transpose());
  WilliamsonParts parts = williamson_parts(m_, tol);
  if (parts.nu.back() < 1.0 - tol.phys) {
    std::ostringstream os;
    os << "symplectic eigenvalue " << parts.nu.back()
       << " violates the uncertainty principle";
    throw Error(ErrorCode::Unphysical, os.str());
  }
  spectrum_.values = std::move(parts.nu);
}

CovarianceMatrix vacuum(int n) {
  if (n < 1) {
    throw Error(ErrorCode::DimensionMismatch, "mode count must be >= 1");
  }
  return CovarianceMatrix(Matrix::Identity(2 * n, 2 * n));
}

CovarianceMatrix thermal(const std::vector<double> &nu) {
  if (nu.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "thermal state needs >= 1 mode");
  }
  const auto n = static_cast<Eigen::Index>(nu.size());
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double v = nu[static_cast<size_t>(j)];
    if (!(v >= 1.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "symplectic eigenvalue " << v << " below 1";
      throw Error(ErrorCode::UnphysicalTemperature, os.str());
    }
    m(2 * j, 2 * j) = v;
    m(2 * j + 1, 2 * j + 1) = v;
  }
  return CovarianceMatrix(m);
}

CovarianceMatrix two_mode_squeezed(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::Unphysical, "squeezing r must be finite and >= 0");
  }
  const double c = std::cosh(r);
  const double s = std::sinh(r);
  Matrix m(4, 4);
  // clang-format off
  m <<   c, 0.0,   s, 0.0,
       0.0,   c, 0.0,  -s,
         s, 0.0,   c, 0.0,
       0.0,  -s, 0.0,   c;
  // clang-format on
  return CovarianceMatrix(m);
}

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix &sigma) {
  return sigma.spectrum();
}

WilliamsonResult williamson(const CovarianceMatrix &sigma,
                            const Tolerances &tol) {
  WilliamsonParts parts = williamson_parts(sigma.matrix(), tol);
  const int n = sigma.modes();
  Vector scale(2 * n);
  for (int j = 0; j < n; ++j) {
    const double inv = 1.0 / std::sqrt(parts.nu[static_cast<size_t>(j)]);
    scale(2 * j) = inv;
    scale(2 * j + 1) = inv;
  }
  Matrix s = scale.asDiagonal() * parts.rotation.transpose() * parts.root;
  const double stol = scaled_symplectic_tol(s, tol.symp);
  return WilliamsonResult{SymplecticMatrix(std::move(s), stol),
                          SymplecticSpectrum{std::move(parts.nu)}};
}

double purity(const CovarianceMatrix &sigma) {
  // det sigma is the product of the (positive) eigenvalues.
  const SymEigResult eig = sym_eig(sigma.matrix());
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    log_det += std::log(eig.eigenvalues(i));
  }
  return std::exp(-0.5 * log_det);
}

double purity_residual(const CovarianceMatrix &sigma) {
  const Matrix &m = sigma.matrix();
  const Matrix omega = symplectic_form(sigma.modes());
  const Matrix r = -m * omega * m * omega;
  return norm_inf(r - Matrix::Identity(m.rows(), m.cols()));
}

bool is_pure(const CovarianceMatrix &sigma, double tol) {
  return purity_residual(sigma) <= tol;
}

CmBlocks blocks(const CovarianceMatrix &sigma) {
  const Matrix b = to_blocked(sigma.matrix());
  const int n = sigma.modes();
  return CmBlocks{b.block(0, 0, n, n), b.block(n, n, n, n),
                  b.block(0, n, n, n)};
}

Matrix assemble_blocks(const CmBlocks &b) {
  const Eigen::Index n = b.sigma_x.rows();
  if (n == 0 || b.sigma_x.cols() != n || b.sigma_p.rows() != n ||
      b.sigma_p.cols() != n || b.sigma_xp.rows() != n ||
      b.sigma_xp.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "sigma_x, sigma_p and sigma_xp must be n x n");
  }
  Matrix full(2 * n, 2 * n);
  full.block(0, 0, n, n) = b.sigma_x;
  full.block(n, n, n, n) = b.sigma_p;
  full.block(0, n, n, n) = b.sigma_xp;
  full.block(n, 0, n, n) = b.sigma_xp.transpose();
  return to_interleaved(full);
}

CovarianceMatrix from_blocks(const CmBlocks &b, const Tolerances &tol) {
  return CovarianceMatrix(assemble_blocks(b), tol);
}

CovarianceMatrix complete_pure(const Matrix &sigma_x, const Matrix &sigma_xp,
                               double condition_tol, const Tolerances &tol) {
  require_square(sigma_x, "sigma_x");
  if (sigma_xp.rows() != sigma_x.rows() || sigma_xp.cols() != sigma_x.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "sigma_x and sigma_xp dimensions differ");
  }
  require_finite(sigma_x, "sigma_x");
  require_finite(sigma_xp, "sigma_xp");
  if (!is_symmetric(sigma_x, tol.sym)) {
    throw Error(ErrorCode::NonSymmetric, "sigma_x is not symmetric");
  }
  const Matrix x = 0.5 * (sigma_x + sigma_x.transpose());
  if (!(sym_eig(x, tol).eigenvalues(0) > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "sigma_x is not positive definite");
  }
  const double scale = std::max(1.0, norm_inf(x) * norm_inf(sigma_xp));
  const double residual =
      norm_inf(sigma_xp * x - x * sigma_xp.transpose());
  if (residual > condition_tol * scale) {
    std::ostringstream os;
    os << "sigma_xp sigma_x - sigma_x sigma_xp^T has norm " << residual;
    throw Error(ErrorCode::ConditionViolated, os.str());
  }
  const Eigen::Index n = x.rows();
  Matrix p = inverse(x) *
             (Matrix::Identity(n, n) + sigma_xp * sigma_xp);
  p = 0.5 * (p + p.transpose());
  return from_blocks(CmBlocks{x, p, sigma_xp}, tol);
}

CovarianceMatrix reduced(const CovarianceMatrix &sigma,
                         const ModeList &modes) {
  const int n = sigma.modes();
  if (modes.empty()) {
    throw Error(ErrorCode::BadModeIndex, "mode subset is empty");
  }
  std::set<int> seen;
  for (int m : modes) {
    if (m < 1 || m > n || !seen.insert(m).second) {
      std::ostringstream os;
      os << "mode index " << m << " invalid or repeated for " << n
         << " modes";
      throw Error(ErrorCode::BadModeIndex, os.str());
    }
  }
  const auto k = static_cast<Eigen::Index>(modes.size());
  Matrix out(2 * k, 2 * k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      out.block(2 * a, 2 * b, 2, 2) = sigma.matrix().block(
          2 * (modes[static_cast<size_t>(a)] - 1),
          2 * (modes[static_cast<size_t>(b)] - 1), 2, 2);
    }
  }
  return CovarianceMatrix(out);
}

double entropy_function(double nu) {
  if (nu <= 1.0) return 0.0;
  const double plus = 0.5 * (nu + 1.0);
  const double minus = 0.5 * (nu - 1.0);
  return plus * std::log(plus) - minus * std::log(minus);
}

double von_neumann_entropy(const CovarianceMatrix &sigma) {
  double s = 0.0;
  for (double nu : sigma.spectrum().values) s += entropy_function(nu);
  return s;
}

void require_pure(const CovarianceMatrix &sigma, double tol,
                  const char *context) {
  const double norm = norm_inf(sigma.matrix());
  const double residual = purity_residual(sigma);
  if (residual > tol * std::max(1.0, norm * norm)) {
    std::ostringstream os;
    os << context << " needs a pure state; purity residual " << residual;
    throw Error(ErrorCode::NotPure, os.str());
  }
}

double entanglement_entropy(const CovarianceMatrix &sigma,
                            const ModeList &modes, double tol) {
  require_pure(sigma, tol, "entanglement entropy");
  return von_neumann_entropy(reduced(sigma, modes));
}

double mean_energy(const CovarianceMatrix &sigma) {
  return sigma.matrix().trace() / 4.0;
}

}  // namespace symplectica
