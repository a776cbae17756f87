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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twistcc/int_matrix.hpp"

namespace twistcc {

using Modulus = std::uint64_t;
using Residue = std::uint64_t;

// Residue products must fit in 64 bits.
inline constexpr Modulus kMaxModulus = Modulus{1} << 31;

/// Least non-negative representative of v mod m.
Residue canonical_residue(std::int64_t v, Modulus m);
Residue canonical_residue(const Integer& v, Modulus m);

/// Inverse of a mod m, or nullopt when gcd(a, m) != 1.
std::optional<Residue> mod_inverse(Residue a, Modulus m);

/// Dense square matrix over Z/m with entries held in canonical form [0, m).
///
/// Canonical entries make equality of the entry arrays the equality test, and
/// the lexicographic order on them is the order used for class
/// representatives throughout the library.
class ModMatrix {
 public:
  ModMatrix(std::size_t n, Modulus m);
  /// Reduces arbitrary signed values into canonical residues.
  ModMatrix(std::size_t n, Modulus m, std::span<const std::int64_t> values);
  ModMatrix(Modulus m, std::initializer_list<std::initializer_list<long long>> rows);

  static ModMatrix identity(std::size_t n, Modulus m);
  /// Entries must already be canonical; throws UsageError otherwise.
  static ModMatrix from_canonical(std::size_t n, Modulus m, std::vector<Residue> entries);

  std::size_t dim() const noexcept { return n_; }
  Modulus modulus() const noexcept { return m_; }
  Residue operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t value) {
    entries_[i * n_ + j] = canonical_residue(value, m_);
  }
  std::span<const Residue> entries() const noexcept { return entries_; }

  bool operator==(const ModMatrix&) const = default;
  /// Lexicographic on (n, m, row-major entries).
  std::strong_ordering operator<=>(const ModMatrix& other) const;

  std::string to_string() const;

 private:
  std::size_t n_;
  Modulus m_;
  std::vector<Residue> entries_;
};

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
ModMatrix operator-(const ModMatrix& a);
ModMatrix scale(std::int64_t s, const ModMatrix& a);

ModMatrix transpose(const ModMatrix& a);
Residue det_mod(const ModMatrix& a);
/// Adjugate times the modular inverse of the determinant; throws NotInvertible
/// when the determinant is not a unit.
ModMatrix inverse(const ModMatrix& a);
Residue trace(const ModMatrix& a);

/// Entrywise reduction; a ring homomorphism Mat_n(Z) -> Mat_n(Z/m).
ModMatrix reduce_mod(const IntMatrix& a, Modulus m);
/// Canonical lift with entries in [0, m).
IntMatrix lift(const ModMatrix& a);

ModMatrix block_diag(const ModMatrix& a, const ModMatrix& b);

}  // namespace twistcc
