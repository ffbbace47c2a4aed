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

#include "symplectica/gstate.hpp"

namespace symplectica {

struct StandardFormResult {
  CovarianceMatrix sigma_std;
  // conjugate_cm(input, direct sum of local_ops) == sigma_std
  std::vector<SymplecticMatrix> local_ops;
  std::vector<double> local_eigenvalues;
};

/// Local standard form: every diagonal block becomes a_j I, the blocks of
/// the disjoint pairs (1,2), (3,4), ... become diagonal with a nonnegative
/// leading entry, and for odd n the block sigma_1n is made lower triangular
/// by a rotation of mode n.
StandardFormResult reduce_mixed(const CovarianceMatrix &sigma,
                                const Tolerances &tol = {});

struct DofTable {
  int n;
  int mixed_total;
  int mixed_invariant;
  int pure_total;
  int pure_invariant;
  int blockdiag_invariant;
};

DofTable dof(int n);

/// Number of local invariants of a pure (m + n)-mode state split m | n.
int schmidt_dof_check(int m, int n);

struct TwoModeReduction {
  double r;
  std::vector<SymplecticMatrix> local_ops;
};

/// Brings a pure two-mode state to two_mode_squeezed(r) by local operations.
TwoModeReduction reduce_pure_two_mode(const CovarianceMatrix &sigma,
                                      const Tolerances &tol = {});

/// True when sigma has the block pattern of a two-mode squeezed state
/// rotated locally on both modes.
bool check_tms_rotation_orbit(const CovarianceMatrix &sigma,
                              double tol = 1e-10);

/// Local reduction of a pure three-mode state to sigma_xp = 0.
StandardFormResult annihilate_xp_three_mode(const CovarianceMatrix &sigma,
                                            const Tolerances &tol = {});

}  // namespace symplectica
