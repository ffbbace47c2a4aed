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

#include "symplectica/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace symplectica {

namespace {

[[noreturn]] void bad(const std::string &msg) {
  throw Error(ErrorCode::BadFormat, msg);
}

const Json &field(const Json &j, const char *key, const char *what) {
  if (!j.is_object() || !j.contains(key)) {
    bad(std::string(what) + " is missing field '" + key + "'");
  }
  return j.at(key);
}

int int_field(const Json &j, const char *key, const char *what) {
  const Json &v = field(j, key, what);
  if (!v.is_number_integer()) {
    bad(std::string(what) + " field '" + key + "' must be an integer");
  }
  return v.get<int>();
}

double number(const Json &v, const std::string &what) {
  if (!v.is_number()) bad(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, what + " is not finite");
  return x;
}

std::vector<double> number_list(const Json &j, const char *key, const char *what) {
  const Json &v = field(j, key, what);
  if (!v.is_array()) bad(std::string(what) + " field '" + key + "' must be an array");
  std::vector<double> out;
  for (const Json &x : v) out.push_back(number(x, std::string(what) + " entry"));
  return out;
}

}  // namespace

Json matrix_to_json(const Matrix &m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json &j, const char *what) {
  if (!j.is_array() || j.empty()) bad(std::string(what) + " must be a non-empty array of rows");
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) bad(std::string(what) + " rows must be non-empty arrays");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      bad(std::string(what) + " is not rectangular");
    }
    for (size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          number(j[i][k], std::string(what) + " entry");
    }
  }
  return m;
}

Json cm_to_json(const Matrix &interleaved) {
  Json j;
  j["n"] = interleaved.rows() / 2;
  j["ordering"] = ordering_name(ModeOrdering::Interleaved);
  j["matrix"] = matrix_to_json(interleaved);
  return j;
}

Matrix read_matrix_document(const Json &j, std::optional<ModeOrdering> fallback) {
  const int n = int_field(j, "n", "matrix file");
  if (n < 1) bad("matrix file needs n >= 1");
  ModeOrdering ordering = fallback.value_or(ModeOrdering::Interleaved);
  if (j.contains("ordering")) {
    if (!j["ordering"].is_string()) bad("'ordering' must be a string");
    const ModeOrdering declared = parse_ordering(j["ordering"].get<std::string>());
    if (fallback && *fallback != declared) {
      bad("file declares " + std::string(ordering_name(declared)) +
          " ordering but " + std::string(ordering_name(*fallback)) +
          " was requested");
    }
    ordering = declared;
  }
  const Matrix m = matrix_from_json(field(j, "matrix", "matrix file"), "matrix");
  if (m.rows() != 2 * n || m.cols() != 2 * n) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols() << ", expected " << 2 * n
       << "x" << 2 * n;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return ordering == ModeOrdering::Blocked ? to_interleaved(m) : m;
}

Json circuit_to_json(const Circuit &c) {
  Json elements = Json::array();
  for (const CircuitElement &e : c.elements) {
    Json r;
    r["kind"] = element_kind_name(e.kind);
    r["i"] = e.i;
    switch (e.kind) {
      case ElementKind::Squeezer:
        r["z"] = e.value;
        break;
      case ElementKind::BeamSplitter:
      case ElementKind::Seraphique:
        r["k"] = e.k;
        r["theta"] = e.value;
        break;
      case ElementKind::PhaseShifter:
        break;
    }
    elements.push_back(std::move(r));
  }
  Json j;
  j["n"] = c.n;
  j["elements"] = std::move(elements);
  return j;
}

Circuit circuit_from_json(const Json &j) {
  Circuit c;
  c.n = int_field(j, "n", "circuit");
  const Json &list = field(j, "elements", "circuit");
  if (!list.is_array()) bad("circuit 'elements' must be an array");
  for (const Json &r : list) {
    const Json &kind = field(r, "kind", "circuit element");
    if (!kind.is_string()) bad("circuit element 'kind' must be a string");
    CircuitElement e{parse_element_kind(kind.get<std::string>())};
    e.i = int_field(r, "i", "circuit element");
    switch (e.kind) {
      case ElementKind::Squeezer:
        e.value = number(field(r, "z", "squeezer"), "squeezer z");
        break;
      case ElementKind::BeamSplitter:
      case ElementKind::Seraphique:
        e.k = int_field(r, "k", "two-mode element");
        e.value = number(field(r, "theta", "two-mode element"), "theta");
        break;
      case ElementKind::PhaseShifter:
        break;
    }
    c.elements.push_back(e);
  }
  validate_circuit(c);
  return c;
}

Json params_to_json(const SchemeParams &p) {
  Json j;
  j["n"] = p.n;
  j["s"] = p.s;
  j["r"] = p.r;
  j["b"] = p.b;
  j["c"] = p.c;
  return j;
}

SchemeParams params_from_json(const Json &j) {
  SchemeParams p;
  p.n = int_field(j, "n", "scheme parameters");
  p.s = number(field(j, "s", "scheme parameters"), "s");
  p.r = number_list(j, "r", "scheme parameters");
  p.b = number_list(j, "b", "scheme parameters");
  p.c = number_list(j, "c", "scheme parameters");
  validate_params(p);
  return p;
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json parse_json(const std::string &text, const std::string &source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    bad(source + ": " + e.what());
  }
}

void write_file_atomic(const std::string &path, const std::string &content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) bad("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      bad("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    bad("cannot rename onto '" + path + "': " + ec.message());
  }
}

}  // namespace symplectica
