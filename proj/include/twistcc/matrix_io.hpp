// Copyright 2026 the twistcc authors
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

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "twistcc/int_matrix.hpp"
#include "twistcc/mod_matrix.hpp"

namespace twistcc {

// Matrix text accepted in two layouts:
//   JSON:  {"n": 2, "entries": [[1, 0], [2, 1]]}
//   plain: "2\n1 0\n2 1\n"
// Entries may exceed 64 bits; in JSON write those as decimal strings.
// Ragged rows, wrong row counts and trailing garbage are rejected with UsageError.
IntMatrix parse_matrix(std::string_view text);
IntMatrix load_matrix_file(const std::filesystem::path& path);

nlohmann::ordered_json matrix_to_json(const IntMatrix& a);
nlohmann::ordered_json matrix_to_json(const ModMatrix& a);
/// Rows only, without the "n" wrapper.
nlohmann::ordered_json rows_to_json(const ModMatrix& a);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace twistcc
