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

// Brute-force reference computations. Nothing here touches the union-find
// engine, the entry-major kernels or the BFS group builder: groups are
// enumerated by scanning every matrix, orbits by the full double loop.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "twistcc/int_matrix.hpp"
#include "twistcc/mod_matrix.hpp"
#include "twistcc/orbits.hpp"

namespace twistcc::oracle {

using EntryKey = std::vector<Residue>;
using ClassMap = std::map<EntryKey, std::uint32_t>;
using MatrixFn = std::function<ModMatrix(const ModMatrix&)>;

EntryKey key(const ModMatrix& x);

/// Every n x n matrix over Z/m accepted by `member`, in lexicographic order.
/// Refuses search spaces above 2^24 matrices.
std::vector<ModMatrix> enumerate_members(std::size_t n, Modulus m,
                                         const std::function<bool(const ModMatrix&)>& member);

/// Twisted classes by the double loop over (x, g). Ids ascend with the
/// lexicographically smallest member. Throws std::logic_error if the orbits
/// overlap inconsistently or phi leaves the set.
ClassMap twisted_classes(const std::vector<ModMatrix>& elements, const MatrixFn& phi);

std::size_t class_count(const ClassMap& classes);

/// Elements whose class id differs between the engine and the oracle.
std::size_t mismatches(const TwistedPartition& engine, const ClassMap& oracle);

/// Product of `steps` elementary matrices I +- E_ij with random i != j.
IntMatrix random_sl(std::size_t n, std::size_t steps, std::mt19937_64& rng);

/// Random element of SL(n, Z) with every entry bounded by `bound` in
/// absolute value (rejection sampling over short elementary products).
IntMatrix random_bounded_sl(std::size_t n, std::int64_t bound, std::mt19937_64& rng);

}  // namespace twistcc::oracle
