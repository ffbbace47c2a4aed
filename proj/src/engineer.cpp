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

#include "symplectica/engineer.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace symplectica {

std::string_view element_kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::Squeezer:
      return "squeezer";
    case ElementKind::BeamSplitter:
      return "beam_splitter";
    case ElementKind::Seraphique:
      return "seraphique";
    case ElementKind::PhaseShifter:
      return "phase_shifter";
  }
  return "unknown";
}

ElementKind parse_element_kind(std::string_view name) {
  for (ElementKind k : {ElementKind::Squeezer, ElementKind::BeamSplitter,
                        ElementKind::Seraphique, ElementKind::PhaseShifter}) {
    if (element_kind_name(k) == name) return k;
  }
  throw Error(ErrorCode::BadFormat,
              "unknown circuit element kind '" + std::string(name) + "'");
}

CircuitElement CircuitElement::squeezer(int mode, double z) {
  return {ElementKind::Squeezer, mode, 0, z};
}

CircuitElement CircuitElement::beam_splitter(int i, int k, double theta) {
  return {ElementKind::BeamSplitter, i, k, theta};
}

CircuitElement CircuitElement::seraphique(int i, int k, double theta) {
  return {ElementKind::Seraphique, i, k, theta};
}

CircuitElement CircuitElement::phase_shifter(int mode) {
  return {ElementKind::PhaseShifter, mode, 0, 0.0};
}

namespace {

bool two_mode(ElementKind kind) {
  return kind == ElementKind::BeamSplitter || kind == ElementKind::Seraphique;
}

void check_mode(int mode, int n) {
  if (mode < 1 || mode > n) {
    std::ostringstream os;
    os << "circuit mode " << mode << " outside 1.." << n;
    throw Error(ErrorCode::BadModeIndex, os.str());
  }
}

Matrix element_matrix(const CircuitElement &e) {
  switch (e.kind) {
    case ElementKind::Squeezer:
      return squeezer(e.value);
    case ElementKind::BeamSplitter:
      return beam_splitter(e.value).matrix();
    case ElementKind::Seraphique:
      return seraphique(e.value).matrix();
    case ElementKind::PhaseShifter:
      return phase_shifter();
  }
  return Matrix();
}

}  // namespace

void validate_circuit(const Circuit &c) {
  if (c.n < 1) {
    throw Error(ErrorCode::BadModeIndex, "circuit needs at least one mode");
  }
  for (const CircuitElement &e : c.elements) {
    check_mode(e.i, c.n);
    if (two_mode(e.kind)) {
      check_mode(e.k, c.n);
      if (e.i == e.k) {
        throw Error(ErrorCode::BadModeIndex,
                    "two-mode element acts on a single mode");
      }
    }
    if (!std::isfinite(e.value)) {
      throw Error(ErrorCode::NonFinite, "circuit parameter is not finite");
    }
    if (e.kind == ElementKind::Squeezer && !(e.value > 0.0)) {
      throw Error(ErrorCode::NonPositiveSqueeze,
                  "squeezer parameter must be positive");
    }
  }
}

SymplecticMatrix circuit_to_symplectic(const Circuit &c) {
  validate_circuit(c);
  Matrix total = Matrix::Identity(2 * c.n, 2 * c.n);
  for (const CircuitElement &e : c.elements) {
    const Matrix op = element_matrix(e);
    if (two_mode(e.kind)) {
      // Only the two touched column pairs change.
      const int a = 2 * (e.i - 1);
      const int b = 2 * (e.k - 1);
      Matrix cols(2 * c.n, 4);
      cols << total.middleCols(a, 2), total.middleCols(b, 2);
      const Matrix mixed = cols * op;
      total.middleCols(a, 2) = mixed.leftCols(2);
      total.middleCols(b, 2) = mixed.rightCols(2);
    } else {
      const int a = 2 * (e.i - 1);
      total.middleCols(a, 2) = total.middleCols(a, 2) * op;
    }
  }
  const double tol = scaled_symplectic_tol(total, Tolerances{}.symp);
  return SymplecticMatrix(std::move(total), tol);
}

Circuit inverse_circuit(const Circuit &c) {
  validate_circuit(c);
  Circuit out{c.n, {}};
  for (auto it = c.elements.rbegin(); it != c.elements.rend(); ++it) {
    switch (it->kind) {
      case ElementKind::Squeezer:
        out.elements.push_back(CircuitElement::squeezer(it->i, 1.0 / it->value));
        break;
      case ElementKind::BeamSplitter:
      case ElementKind::Seraphique:
        out.elements.push_back({it->kind, it->i, it->k, -it->value});
        break;
      case ElementKind::PhaseShifter:
        // A quarter turn; three more undo it.
        for (int q = 0; q < 3; ++q) {
          out.elements.push_back(CircuitElement::phase_shifter(it->i));
        }
        break;
    }
  }
  return out;
}

SchemeParamCount scheme_param_count(int n) {
  if (n < 3) {
    throw Error(ErrorCode::TooFewModes,
                "the parameter breakdown needs n >= 3");
  }
  return scheme_shape(n);
}

SchemeParamCount scheme_shape(int n) {
  if (n < 2) {
    throw Error(ErrorCode::TooFewModes, "the scheme needs n >= 2");
  }
  return SchemeParamCount{1, n - 2, (n - 1) * (n - 2) / 2,
                          n >= 3 ? n * (n - 3) / 2 : 0};
}

void validate_params(const SchemeParams &p) {
  const SchemeParamCount shape = scheme_shape(p.n);
  if (static_cast<int>(p.r.size()) != shape.individual_squeezings ||
      static_cast<int>(p.b.size()) != shape.beam_splitters ||
      static_cast<int>(p.c.size()) != shape.seraphiques) {
    std::ostringstream os;
    os << "n=" << p.n << " needs " << shape.individual_squeezings
       << " squeezings, " << shape.beam_splitters << " beam splitter and "
       << shape.seraphiques << " seraphique angles; got " << p.r.size()
       << ", " << p.b.size() << ", " << p.c.size();
    throw Error(ErrorCode::BadParamShape, os.str());
  }
  auto finite = [](const std::vector<double> &v) {
    for (double x : v) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  };
  if (!std::isfinite(p.s) || !finite(p.r) || !finite(p.b) || !finite(p.c)) {
    throw Error(ErrorCode::NonFinite, "scheme parameter is not finite");
  }
  if (!(p.s > 0.0)) {
    throw Error(ErrorCode::NonPositiveSqueeze, "s must be positive");
  }
  for (double z : p.r) {
    if (!(z > 0.0)) {
      throw Error(ErrorCode::NonPositiveSqueeze, "squeezings must be positive");
    }
  }
}

std::vector<double> flatten_params(const SchemeParams &p) {
  std::vector<double> out{p.s};
  out.insert(out.end(), p.r.begin(), p.r.end());
  out.insert(out.end(), p.b.begin(), p.b.end());
  out.insert(out.end(), p.c.begin(), p.c.end());
  return out;
}

SchemeParams unflatten_params(int n, const std::vector<double> &values) {
  const SchemeParamCount shape = scheme_shape(n);
  if (static_cast<int>(values.size()) != shape.total()) {
    std::ostringstream os;
    os << "n=" << n << " needs " << shape.total() << " parameters, got "
       << values.size();
    throw Error(ErrorCode::BadParamShape, os.str());
  }
  SchemeParams p;
  p.n = n;
  p.s = values[0];
  auto it = values.begin() + 1;
  p.r.assign(it, it + shape.individual_squeezings);
  it += shape.individual_squeezings;
  p.b.assign(it, it + shape.beam_splitters);
  it += shape.beam_splitters;
  p.c.assign(it, it + shape.seraphiques);
  validate_params(p);
  return p;
}

Circuit build_scheme(const SchemeParams &p) {
  validate_params(p);
  const int n = p.n;
  Circuit c{n, {}};
  c.elements.push_back(CircuitElement::squeezer(1, p.s));
  c.elements.push_back(CircuitElement::squeezer(2, 1.0 / p.s));
  c.elements.push_back(
      CircuitElement::beam_splitter(1, 2, std::numbers::pi / 4.0));
  size_t bi = 0, ci = 0;
  for (int k = 3; k <= n; ++k) {
    c.elements.push_back(
        CircuitElement::squeezer(k, p.r[static_cast<size_t>(k - 3)]));
    for (int i = 2; i < k; ++i) {
      c.elements.push_back(CircuitElement::beam_splitter(i, k, p.b[bi++]));
      if (!(i == n - 1 && k == n)) {
        c.elements.push_back(CircuitElement::seraphique(i, k, p.c[ci++]));
      }
    }
  }
  return c;
}

CovarianceMatrix apply_scheme(const SchemeParams &p) {
  const SymplecticMatrix s = circuit_to_symplectic(build_scheme(p));
  return CovarianceMatrix(conjugate_cm(Matrix::Identity(2 * p.n, 2 * p.n), s));
}

}  // namespace symplectica
