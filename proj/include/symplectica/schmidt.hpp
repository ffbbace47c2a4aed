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

/// Local reduction of a pure bipartite state to two-mode squeezed pairs and
/// vacua. Side A is the smaller side; `swapped` records that the caller's
/// subset was the larger one and the roles were exchanged.
struct SchmidtForm {
  int m = 0;
  int n = 0;
  ModeList side_a;  // original 1-based labels, length m
  ModeList side_b;  // original 1-based labels, length n
  bool swapped = false;
  SymplecticMatrix s_a = SymplecticMatrix::identity(1);
  SymplecticMatrix s_b = SymplecticMatrix::identity(1);
  std::vector<double> r;  // descending; A-mode i pairs with B-mode i
  bool degenerate = false;  // some cosh r_i coincide within 1e-8
};

SchmidtForm schmidt_decompose(const CovarianceMatrix &sigma,
                              const ModeList &side_a,
                              const Tolerances &tol = {});

/// Mode order a_1, b_1, ..., a_m, b_m, b_{m+1}, ..., b_n.
ModeList paired_layout(const SchmidtForm &form);

/// S_A (+) S_B acting on reduced(sigma, paired_layout(form)).
SymplecticMatrix schmidt_local_ops(const SchmidtForm &form);

/// (+)_i two_mode_squeezed(r_i) (+) vacuum(n - m) in the paired layout.
CovarianceMatrix schmidt_target(const SchmidtForm &form);

}  // namespace symplectica
