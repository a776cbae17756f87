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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace twistcc::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

using Checks = std::vector<Check>;

/// Witness identities, trace formulas and symplectic membership over Z.
Checks identity_checks(std::uint64_t seed);
/// Output contract of separating_family on random M in SL(3, Z).
Checks separating_family_checks(std::uint64_t seed);
/// Exhaustive no-solution search for A(k) ~tau A(l), n = 2, B = 6.
Checks no_solution_checks();
/// Union-find partitions against the brute-force double loop.
Checks oracle_equivalence_checks(std::uint64_t seed);
/// Twisted classes of x -> det(x) x on GL(2, Z/3) against conj(X) ∪ conj(-X).
Checks character_fusion_checks();
/// Scalar and AVX2 kernels produce identical planes.
Checks kernel_equivalence_checks(std::uint64_t seed);
/// Fiber bounds on the extension test matrix.
Checks fiber_bound_checks(std::uint64_t seed);
/// R(inner gamma) against the brute-force class count for random gamma.
Checks inner_conjugacy_checks(std::uint64_t seed);
Checks brauer_checks();

/// "identities", "lemmas", "brauer", "oracles" or "all"; UsageError otherwise.
Checks run_suite(std::string_view suite, std::uint64_t seed);

bool all_pass(const Checks& checks);
nlohmann::ordered_json to_json(std::string_view suite, std::uint64_t seed, const Checks& checks);

}  // namespace twistcc::verify
