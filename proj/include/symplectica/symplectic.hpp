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

#include <string_view>
#include <vector>

#include "symplectica/numkernel.hpp"

namespace symplectica {

/// Phase-space ordering. Interleaved is (x1, p1, ..., xn, pn) and is the only
/// ordering used internally; blocked (x1..xn, p1..pn) appears only when
/// reading files and when extracting x/p blocks.
enum class ModeOrdering { Interleaved, Blocked };

std::string_view ordering_name(ModeOrdering ordering);
ModeOrdering parse_ordering(std::string_view name);

/// Permutation P with v_blocked = P v_interleaved.
Matrix ordering_permutation(int n);
Matrix to_blocked(const Matrix &interleaved);
Matrix to_interleaved(const Matrix &blocked);

/// 1-based mode labels.
using ModeList = std::vector<int>;

/// Validated element of Sp(2n, R) in interleaved ordering.
class SymplecticMatrix {
 public:
  /// Throws NotSymplectic unless ||S Omega S^T - Omega|| <= tol and
  /// det S = 1 within 1e-8 (relative to ||S||^2n when that is larger).
  explicit SymplecticMatrix(Matrix m, double tol = Tolerances{}.symp);

  static SymplecticMatrix identity(int n);

  int modes() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix &matrix() const { return m_; }
  Matrix blocked() const { return to_blocked(m_); }

  SymplecticMatrix operator*(const SymplecticMatrix &rhs) const;
  SymplecticMatrix inverse() const;
  SymplecticMatrix transpose() const;

 private:
  struct Trusted {};
  SymplecticMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

Matrix symplectic_form(int n);

/// Tolerance accepted for a symplectic matrix computed from other data:
/// `base` scaled by max(1, ||S||^2).
double scaled_symplectic_tol(const Matrix &s, double base);

bool is_symplectic(const Matrix &s, double tol = Tolerances{}.symp);

/// [[cos t, sin t], [-sin t, cos t]].
Matrix rotation(double theta);
/// diag(z, 1/z); NonPositiveSqueeze for z <= 0.
Matrix squeezer(double z);
/// Quarter-turn rotation(pi/2) = omega. With this sign
/// embed(P, mode 2)^T * beam_splitter(t) * embed(P, mode 2) is exactly
/// seraphique(t).
Matrix phase_shifter();

/// Two-mode beam splitter [[cos t I, sin t I], [-sin t I, cos t I]].
SymplecticMatrix beam_splitter(double theta);
/// Two-mode "counter beam splitter" coupling x1 with p2 and p1 with x2.
SymplecticMatrix seraphique(double theta);

/// Places `op` on the listed modes of an n-mode system; identity elsewhere.
SymplecticMatrix embed(const Matrix &op, const ModeList &modes, int n);
SymplecticMatrix embed(const SymplecticMatrix &op, const ModeList &modes,
                       int n);

/// Block-diagonal direct sum.
Matrix direct_sum(const std::vector<Matrix> &parts);

/// Direct sum of single-mode operations, one per mode.
SymplecticMatrix local_symplectic(const std::vector<Matrix> &single_mode);

/// S = left * squeeze * right with both outer factors orthogonal symplectic
/// and squeeze = (+)_j diag(z_j, 1/z_j), z_j >= 1 descending.
struct EulerFactors {
  SymplecticMatrix left;
  SymplecticMatrix squeeze;
  SymplecticMatrix right;
  std::vector<double> z;
};

EulerFactors euler_decompose(const SymplecticMatrix &s,
                             const Tolerances &tol = {});

/// S^T sigma S, symmetrised.
Matrix conjugate_cm(const Matrix &sigma, const SymplecticMatrix &s);

}  // namespace symplectica
