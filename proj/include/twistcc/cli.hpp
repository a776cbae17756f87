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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace twistcc::cli {

enum ExitCode : int {
  kOk = 0,
  kInconclusive = 1,
  kUsage = 2,
  kResourceLimit = 3,
  kInvalidAutomorphism = 4,
  kVerificationFailed = 5,
};

/// Environment variable consulted when --element-cap is absent.
inline constexpr const char* kElementCapEnv = "TWISTCC_ELEMENT_CAP";

struct RunConfig {
  std::string command;
  std::string group;
  std::string aut = "id";
  std::string family = "A";
  std::size_t n = 2;
  std::string k = "1";
  std::string l = "2";
  std::vector<std::uint64_t> moduli;
  std::string format = "json";
  std::size_t element_cap = 0;
  std::uint64_t seed = 0;
  std::string suite = "all";
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistcc::cli
