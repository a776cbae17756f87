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
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace twistcc {

using Integer = boost::multiprecision::cpp_int;

/// Dense square matrix over the integers with arbitrary-precision entries.
///
/// Entries are stored row-major. Every operation is exact; there is no
/// fixed-width path, so parameters such as witness indices may grow without
/// bound.
class IntMatrix {
 public:
  /// Zero matrix of dimension n (n >= 1).
  explicit IntMatrix(std::size_t n);
  /// Takes ownership of n*n row-major entries; throws UsageError on size mismatch.
  IntMatrix(std::size_t n, std::vector<Integer> entries);
  /// Literal rows, e.g. {{1, 0}, {2, 1}}. Rows must all have the same length as
  /// the row count.
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  std::span<const Integer> entries() const noexcept { return entries_; }

  bool operator==(const IntMatrix&) const = default;

  std::string to_string() const;

 private:
  std::size_t n_;
  std::vector<Integer> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);
IntMatrix operator*(const Integer& s, const IntMatrix& a);

IntMatrix transpose(const IntMatrix& a);

/// Fraction-free (Bareiss) elimination; exact for every dimension.
Integer det(const IntMatrix& a);

/// Requires det(a) = +-1; throws NotInvertible otherwise.
IntMatrix inverse(const IntMatrix& a);

/// Classical adjugate, so that a * adjugate(a) = det(a) * I.
IntMatrix adjugate(const IntMatrix& a);

Integer trace(const IntMatrix& a);

/// diag(a, b).
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

/// I + k * E_ij (0-based indices).
IntMatrix elementary(std::size_t n, std::size_t i, std::size_t j, const Integer& k);

/// diag(d_0, ..., d_{n-1}).
IntMatrix diagonal(std::span<const Integer> d);

std::vector<Integer> column(const IntMatrix& a, std::size_t j);

/// u * transpose(v) for column vectors u, v of equal length.
IntMatrix outer_product(std::span<const Integer> u, std::span<const Integer> v);

}  // namespace twistcc
