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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twistcc/int_matrix.hpp"
#include "twistcc/mod_matrix.hpp"

namespace twistcc {

enum class FamilyKind { kSL, kGL, kSp };

/// SL(n), GL(n) or Sp(dim) with dim even. Sp is taken with respect to the
/// block form J0 = diag(j0, ..., j0), j0 = [[0, 1], [-1, 0]].
struct GroupFamily {
  FamilyKind kind;
  std::size_t dim;

  static GroupFamily sl(std::size_t n);
  static GroupFamily gl(std::size_t n);
  /// Throws UsageError for odd dimension.
  static GroupFamily sp(std::size_t dim);

  std::string_view name() const;
  bool operator==(const GroupFamily&) const = default;
};

/// J0 for an even dimension.
IntMatrix symplectic_form(std::size_t dim);

bool is_member_integral(const IntMatrix& x, const GroupFamily& family);
bool is_member_mod(const ModMatrix& x, const GroupFamily& family);

/// x lies in the principal congruence subgroup of level m.
bool in_congruence_subgroup(const IntMatrix& x, Modulus m);

/// "sl:n:m", "gl:n:m", "sp:2n:m".
struct GroupDescriptor {
  GroupFamily family;
  Modulus modulus;

  static GroupDescriptor parse(std::string_view text);
  std::string str() const;
};

bool is_prime(std::uint64_t v);

/// Classical order of the finite group for prime m, nullopt otherwise.
std::optional<Integer> classical_order(const GroupFamily& family, Modulus m);

/// Generators over Z: elementary transvections for SL, plus diag(-1, 1, ...)
/// for GL, symplectic transvections along e_i and e_i + e_j for Sp.
std::vector<IntMatrix> integral_generators(const GroupFamily& family);

inline constexpr std::size_t kDefaultElementCap = 200'000;

/// A fully enumerated finite group of matrices over Z/m.
///
/// Elements are indexed in increasing canonical order (row-major entries
/// compared lexicographically), so index order is canonical order and the
/// smallest index of any subset is its smallest canonical form. Element
/// storage is entry-major bytes (see kernels.hpp), which requires m <= 256
/// and n <= 16; lookup keys pack an element into 64 bits, which further
/// requires m^(n*n) < 2^64.
class FiniteMatrixGroup {
 public:
  using Index = std::uint32_t;
  using Key = std::uint64_t;
  static constexpr Index kNotFound = UINT32_MAX;

  /// BFS closure of `generators` (all n x n mod m). Throws ResourceLimit when
  /// more than `cap` elements are reached. Closure under products and
  /// inverses is verified before returning.
  static FiniteMatrixGroup generate(std::size_t n, Modulus m, std::span<const ModMatrix> generators,
                                    std::size_t cap, std::string label = {});

  std::size_t order() const noexcept { return keys_.size(); }
  std::size_t dim() const noexcept { return n_; }
  Modulus modulus() const noexcept { return m_; }
  const std::string& label() const noexcept { return label_; }
  const std::optional<GroupFamily>& family() const noexcept { return family_; }
  void set_family(const GroupFamily& family) { family_ = family; }

  ModMatrix element(Index i) const;
  Key key_of(const ModMatrix& x) const;
  std::optional<Index> find_key(Key key) const;
  std::optional<Index> find(const ModMatrix& x) const;
  /// Throws LookupError when x is not an element.
  Index index_of(const ModMatrix& x) const;

  std::span<const Index> generators() const noexcept { return generators_; }
  Index identity() const noexcept { return identity_; }

  std::span<const std::uint8_t> planes() const noexcept { return planes_; }
  std::span<const Key> keys() const noexcept { return keys_; }

  Index multiply(Index a, Index b) const;
  Index inverse_of(Index a) const;

  /// For every element x (in index order) the index of left * x * right, or
  /// kNotFound when the product leaves the group. Null means identity.
  std::vector<Index> sandwich_indices(const ModMatrix* left, const ModMatrix* right) const;

 private:
  FiniteMatrixGroup() = default;
  void verify_closure() const;
  void build_buckets();
  std::size_t bucket_of(Key key) const;

  std::size_t n_ = 0;
  Modulus m_ = 0;
  std::string label_;
  std::optional<GroupFamily> family_;
  std::vector<Key> keys_;
  // bucket_start_[b] is the first index whose key falls in bucket b.
  std::vector<Index> bucket_start_;
  std::vector<std::uint8_t> planes_;
  std::vector<Index> generators_;
  Index identity_ = 0;
};

/// Generators of the reduction of `family` mod m: transvections I + E_ij for
/// SL, plus diag(u, 1, ..., 1) for units u for GL, symplectic transvections
/// x -> x + b(x, v) v for v in {e_i} and {e_i + e_j} for Sp (or every nonzero
/// v when `all_vectors`).
std::vector<ModMatrix> quotient_generators(const GroupFamily& family, Modulus m,
                                           bool all_vectors = false);

FiniteMatrixGroup build_quotient(const GroupFamily& family, Modulus m,
                                 std::size_t element_cap = kDefaultElementCap);

/// Block-diagonal product. Equal moduli embed directly; coprime moduli are
/// embedded at m_g * m_h through the CRT idempotents. Other modulus pairs are
/// rejected with UsageError.
FiniteMatrixGroup direct_product(const FiniteMatrixGroup& g, const FiniteMatrixGroup& h,
                                 std::size_t element_cap = kDefaultElementCap);

}  // namespace twistcc
