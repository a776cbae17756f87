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

#include "twistcc/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "twistcc/error.hpp"

namespace twistcc {

namespace {

Integer parse_integer(std::string_view token) {
  std::size_t pos = 0;
  if (!token.empty() && (token[0] == '-' || token[0] == '+')) pos = 1;
  if (pos == token.size()) throw UsageError("matrix: bad integer '" + std::string(token) + "'");
  for (std::size_t i = pos; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
      throw UsageError("matrix: bad integer '" + std::string(token) + "'");
    }
  }
  // cpp_int's string constructor rejects a leading '+'.
  if (token[0] == '+') token.remove_prefix(1);
  return Integer(std::string(token));
}

Integer json_integer(const nlohmann::json& v) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
    return Integer(v.get<std::int64_t>());
  }
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw UsageError("matrix: entries must be integers");
}

IntMatrix parse_json_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("matrix: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw UsageError("matrix: JSON must be an object with \"n\" and \"entries\"");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() < 1) {
    throw UsageError("matrix: \"n\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<std::int64_t>());
  const auto& rows = doc["entries"];
  if (!rows.is_array() || rows.size() != n) {
    throw UsageError("matrix: expected " + std::to_string(n) + " rows");
  }
  std::vector<Integer> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) {
      throw UsageError("matrix: ragged row (expected " + std::to_string(n) + " entries)");
    }
    for (const auto& v : row) entries.push_back(json_integer(v));
  }
  return IntMatrix(n, std::move(entries));
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

IntMatrix parse_plain_matrix(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<std::vector<std::string>> lines;
  for (std::string line; std::getline(is, line);) {
    auto toks = split_ws(line);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  if (lines.empty() || lines[0].size() != 1) {
    throw UsageError("matrix: first line must hold the dimension n");
  }
  const Integer n_big = parse_integer(lines[0][0]);
  if (n_big < 1 || n_big > 4096) throw UsageError("matrix: dimension out of range");
  const auto n = n_big.convert_to<std::size_t>();
  if (lines.size() != n + 1) {
    throw UsageError("matrix: expected " + std::to_string(n) + " rows, got " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<Integer> entries;
  entries.reserve(n * n);
  for (std::size_t i = 1; i <= n; ++i) {
    if (lines[i].size() != n) {
      throw UsageError("matrix: ragged row " + std::to_string(i) + " (expected " +
                       std::to_string(n) + " entries)");
    }
    for (const auto& tok : lines[i]) entries.push_back(parse_integer(tok));
  }
  return IntMatrix(n, std::move(entries));
}

}  // namespace

IntMatrix parse_matrix(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw UsageError("matrix: empty input");
  if (text[first] == '{') return parse_json_matrix(text);
  return parse_plain_matrix(text);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

IntMatrix load_matrix_file(const std::filesystem::path& path) {
  return parse_matrix(read_text_file(path));
}

nlohmann::ordered_json matrix_to_json(const IntMatrix& a) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Integer& v = a(i, j);
      if (v >= std::numeric_limits<std::int64_t>::min() &&
          v <= std::numeric_limits<std::int64_t>::max()) {
        row.push_back(v.convert_to<std::int64_t>());
      } else {
        row.push_back(v.str());
      }
    }
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json out;
  out["n"] = a.dim();
  out["entries"] = std::move(rows);
  return out;
}

nlohmann::ordered_json rows_to_json(const ModMatrix& a) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json matrix_to_json(const ModMatrix& a) {
  nlohmann::ordered_json out;
  out["n"] = a.dim();
  out["modulus"] = a.modulus();
  out["entries"] = rows_to_json(a);
  return out;
}

}  // namespace twistcc
