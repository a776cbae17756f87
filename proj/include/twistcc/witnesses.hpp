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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistcc/automorphism.hpp"
#include "twistcc/groups.hpp"
#include "twistcc/int_matrix.hpp"
#include "twistcc/orbits.hpp"

namespace twistcc {

// Witness families. Indices are 0-based:
//   A(k)         = diag(B(k), I_{n-2}),  B(k) = [[1, 0], [k, 1]]
//   X(k)         = diag(C(k), I_{n-2}),  C(k) = [[k^2 + 1, k], [k, 1]]
//   A_at(i,j)(k) = I + k E_ji
//   X_at(i,j)(k) = I + k^2 E_ii + k E_ij + k E_ji
// so A = A_at(0,1) and X = X_at(0,1).
enum class WitnessKind { kA, kX, kAAt, kXAt };

std::string witness_kind_name(WitnessKind kind);
/// "A" or "X".
WitnessKind parse_witness_kind(std::string_view text);

IntMatrix make_witness(WitnessKind kind, std::size_t n, const Integer& k, std::size_t i = 0,
                       std::size_t j = 1);

/// X A(k) X^t == X X^t + k c_2 c_1^t, with c_i the columns of X.
bool tau_action_identity_check(const IntMatrix& x, const Integer& k);

struct SearchReport {
  std::uint64_t tuples_enumerated = 0;
  std::uint64_t candidates_tested = 0;  // tuples with det = 1
  std::uint64_t solutions = 0;
  std::optional<IntMatrix> first_solution;
  bool identity_found = false;
};

inline constexpr std::uint64_t kDefaultSearchCap = 20'000'000;

/// Exhaustive search for X with entries in [-bound, bound], det X = 1 and
/// X A(k) X^t = A(l). Throws ResourceLimit when (2 bound + 1)^(n^2) exceeds
/// `cap`, UsageError when k or l is not positive.
SearchReport tau_no_solution_oracle(std::int64_t k, std::int64_t l, std::size_t n,
                                    std::int64_t bound, std::uint64_t cap = kDefaultSearchCap);

/// Default bound per dimension: 6 for n = 2, 2 for n = 3.
std::int64_t default_search_bound(std::size_t n);

/// `count` matrices of the principal congruence subgroup of level m whose
/// products with M have pairwise distinct traces. Requires n >= 3 and
/// det M = 1.
std::vector<IntMatrix> separating_family(const IntMatrix& m_mat, Modulus level, std::size_t count);

struct CertifyRequest {
  WitnessKind family = WitnessKind::kA;
  Automorphism phi;
  std::size_t n = 2;
  Integer k = 1;
  Integer l = 2;
  std::vector<Modulus> moduli;
  /// Quotient family; defaults to Sp when phi involves theta, SL otherwise.
  std::optional<FamilyKind> group_kind;
  std::size_t element_cap = kDefaultElementCap;
  std::uint64_t seed = 0;
};

struct ModulusAttempt {
  Modulus modulus = 0;
  std::string outcome;  // "distinct", "same-class", "identical-residues", "invalid-automorphism", ...
  std::optional<std::pair<std::uint32_t, std::uint32_t>> class_ids;
  std::string detail;
};

struct DistinctnessCertificate {
  std::string family;
  std::string automorphism;
  std::size_t n = 0;
  Integer k;
  Integer l;
  std::optional<Modulus> modulus;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> class_ids;
  std::string verdict;  // "distinct" or "inconclusive"
  std::vector<ModulusAttempt> attempts;

  bool distinct() const noexcept { return verdict == "distinct"; }
  /// Stable field order: family, automorphism, n, k, l, modulus, class_ids,
  /// verdict, then attempts.
  nlohmann::ordered_json to_json() const;
};

/// Runs certificates, reusing quotient groups and partitions across calls.
class Certifier {
 public:
  /// Tries the moduli in order and stops at the first one where the reduced
  /// witnesses fall in different twisted classes. An inconclusive verdict
  /// never means the classes coincide over Z.
  DistinctnessCertificate certify(const CertifyRequest& request);

 private:
  struct Entry {
    std::shared_ptr<const FiniteMatrixGroup> group;
    std::unique_ptr<TwistedPartition> partition;
    std::optional<ValidationReport> rejected;
  };
  Entry& quotient(FamilyKind kind, std::size_t n, Modulus m, const Automorphism& phi,
                  std::size_t cap, std::uint64_t seed);

  std::map<std::tuple<int, std::size_t, Modulus, std::string>, Entry> cache_;
};

DistinctnessCertificate certify_distinct(const CertifyRequest& request);

}  // namespace twistcc
