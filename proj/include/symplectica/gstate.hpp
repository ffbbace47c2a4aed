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

#include <vector>

#include "symplectica/numkernel.hpp"
#include "symplectica/symplectic.hpp"

namespace symplectica {

/// Symplectic eigenvalues, descending, one per mode.
struct SymplecticSpectrum {
  std::vector<double> values;
};

/// Covariance matrix of a zero-mean Gaussian state in interleaved ordering,
/// normalised so that the vacuum is the identity. Construction checks
/// symmetry, positive definiteness and the uncertainty principle
/// (every symplectic eigenvalue >= 1 - tol.phys).
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const Matrix &m, const Tolerances &tol = {});

  int modes() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix &matrix() const { return m_; }
  const SymplecticSpectrum &spectrum() const { return spectrum_; }

 private:
  Matrix m_;
  SymplecticSpectrum spectrum_;
};

CovarianceMatrix vacuum(int n);
/// diag(nu1, nu1, ..., nun, nun); UnphysicalTemperature if any nu < 1.
CovarianceMatrix thermal(const std::vector<double> &nu);
CovarianceMatrix two_mode_squeezed(double r);

SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix &sigma);

struct WilliamsonResult {
  SymplecticMatrix s;  // sigma = S^T diag(nu1, nu1, ...) S
  SymplecticSpectrum nu;
};

WilliamsonResult williamson(const CovarianceMatrix &sigma,
                            const Tolerances &tol = {});

/// Tr rho^2 = (det sigma)^(-1/2).
double purity(const CovarianceMatrix &sigma);
/// ||-sigma Omega sigma Omega - I||.
double purity_residual(const CovarianceMatrix &sigma);
bool is_pure(const CovarianceMatrix &sigma, double tol = Tolerances{}.pure);

/// Throws NotPure when the purity residual exceeds tol * max(1, ||sigma||^2).
/// The scaling absorbs rounding in -sigma Omega sigma Omega for large squeezing.
void require_pure(const CovarianceMatrix &sigma, double tol,
                  const char *context);

/// sigma = [[sigma_x, sigma_xp], [sigma_xp^T, sigma_p]] in blocked ordering.
struct CmBlocks {
  Matrix sigma_x;
  Matrix sigma_p;
  Matrix sigma_xp;
};

CmBlocks blocks(const CovarianceMatrix &sigma);
CovarianceMatrix from_blocks(const CmBlocks &b, const Tolerances &tol = {});
/// Assembles blocks without physicality checks.
Matrix assemble_blocks(const CmBlocks &b);

/// Pure state from sigma_x and sigma_xp, with
/// sigma_p = sigma_x^-1 (I + sigma_xp^2). Requires
/// sigma_xp sigma_x - sigma_x sigma_xp^T = 0 within `condition_tol`.
CovarianceMatrix complete_pure(const Matrix &sigma_x, const Matrix &sigma_xp,
                               double condition_tol = 1e-9,
                               const Tolerances &tol = {});

/// Reduced state of the listed 1-based modes, in the listed order.
CovarianceMatrix reduced(const CovarianceMatrix &sigma, const ModeList &modes);

/// Entropy of one mode with symplectic eigenvalue nu, in nats.
double entropy_function(double nu);
double von_neumann_entropy(const CovarianceMatrix &sigma);
/// Entropy of the reduction to `modes`; NotPure for mixed input. The purity
/// check uses `tol` scaled by max(1, ||sigma||^2).
double entanglement_entropy(const CovarianceMatrix &sigma,
                            const ModeList &modes,
                            double tol = Tolerances{}.pure);

/// Tr(sigma) / 4, in units of hbar * omega.
double mean_energy(const CovarianceMatrix &sigma);

}  // namespace symplectica
