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

#include <optional>
#include <string>

#include "json.hpp"
#include "symplectica/engineer.hpp"
#include "symplectica/gstate.hpp"

namespace symplectica {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const Json &j, const char *what);

/// {"n", "ordering", "matrix"}. Writers always emit interleaved.
Json cm_to_json(const Matrix &interleaved);

/// Reads a square 2n x 2n matrix file and returns it interleaved. A missing
/// "ordering" field falls back to `fallback`; a field that contradicts an
/// explicit `fallback` is rejected.
Matrix read_matrix_document(const Json &j,
                            std::optional<ModeOrdering> fallback = {});

Json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const Json &j);

Json params_to_json(const SchemeParams &p);
SchemeParams params_from_json(const Json &j);

/// Throws BadFormat on unreadable files or invalid JSON.
std::string read_text_file(const std::string &path);
Json parse_json(const std::string &text, const std::string &source);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::string &path, const std::string &content);

}  // namespace symplectica
