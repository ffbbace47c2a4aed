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

#include "symplectica/gstate.hpp"

namespace symplectica {

enum class ElementKind { Squeezer, BeamSplitter, Seraphique, PhaseShifter };

std::string_view element_kind_name(ElementKind kind);
ElementKind parse_element_kind(std::string_view name);

/// Squeezer uses (i, value = z); two-mode elements use (i, k, value = theta);
/// the phase shifter uses i only. Mode labels are 1-based.
struct CircuitElement {
  ElementKind kind;
  int i = 0;
  int k = 0;
  double value = 0.0;

  static CircuitElement squeezer(int mode, double z);
  static CircuitElement beam_splitter(int i, int k, double theta);
  static CircuitElement seraphique(int i, int k, double theta);
  static CircuitElement phase_shifter(int mode);

  bool operator==(const CircuitElement &) const = default;
};

struct Circuit {
  int n = 0;
  std::vector<CircuitElement> elements;

  bool operator==(const Circuit &) const = default;
};

/// Throws BadModeIndex or NonPositiveSqueeze on a malformed circuit.
void validate_circuit(const Circuit &c);

/// Product E_1 E_2 ... E_k of the embedded elements: E_1 acts first under
/// sigma -> S^T sigma S.
SymplecticMatrix circuit_to_symplectic(const Circuit &c);

/// Inverse elements in reverse order.
Circuit inverse_circuit(const Circuit &c);

/// Parameters of the minimal pure-state network. b lists the beam splitter
/// angles for pairs 2 <= i < k <= n ordered by k, then i; c lists the
/// seraphique angles in the same order without the pair (n-1, n). r holds
/// the multiplicative squeezings of modes 3..n.
struct SchemeParams {
  int n = 2;
  double s = 1.0;
  std::vector<double> r;
  std::vector<double> b;
  std::vector<double> c;
};

struct SchemeParamCount {
  int initial_squeezing;
  int individual_squeezings;
  int beam_splitters;
  int seraphiques;

  int total() const {
    return initial_squeezing + individual_squeezings + beam_splitters +
           seraphiques;
  }
};

SchemeParamCount scheme_param_count(int n);

/// Shape for any n >= 2; n = 2 carries only s.
SchemeParamCount scheme_shape(int n);

void validate_params(const SchemeParams &params);

/// Flat parameter vector (s, r..., b..., c...) and back.
std::vector<double> flatten_params(const SchemeParams &params);
SchemeParams unflatten_params(int n, const std::vector<double> &values);

Circuit build_scheme(const SchemeParams &params);
CovarianceMatrix apply_scheme(const SchemeParams &params);

}  // namespace symplectica
