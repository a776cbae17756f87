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

// Batched arithmetic over many small matrices mod m.
//
// A batch of `count` n x n matrices is stored entry-major ("planes"): entry
// e = i*n + j of element b lives at data[e * count + b]. In that layout a
// matrix product against a fixed matrix is a short linear combination of
// whole planes, which is what the ISA-specific kernels implement.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace twistcc::kernels {

// Entries are stored as bytes; accumulators of n terms (m-1)^2 must stay
// exactly representable as float for the vector reduction.
inline constexpr std::size_t kMaxDim = 16;
inline constexpr std::uint32_t kMaxModulus = 256;

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// ISA used by the dispatching entry points. Defaults to the best available,
/// unless TWISTCC_SIMD=scalar is set in the environment.
Isa active_isa();
/// Overrides the dispatch choice; throws UsageError if `isa` is unavailable.
void set_active_isa(Isa isa);

/// out[b] = (sum_t coeffs[t] * planes[t][b]) mod m for b in [0, count).
/// Every coefficient and plane entry must be < m <= kMaxModulus, and
/// terms <= kMaxDim.
using CombineFn = void (*)(const std::uint8_t* const* planes, const std::uint32_t* coeffs,
                           std::size_t terms, std::size_t count, std::uint32_t modulus,
                           std::uint8_t* out);

namespace scalar {
void combine(const std::uint8_t* const* planes, const std::uint32_t* coeffs, std::size_t terms,
             std::size_t count, std::uint32_t modulus, std::uint8_t* out);
}  // namespace scalar

namespace avx2 {
void combine(const std::uint8_t* const* planes, const std::uint32_t* coeffs, std::size_t terms,
             std::size_t count, std::uint32_t modulus, std::uint8_t* out);
}  // namespace avx2

CombineFn combine_for(Isa isa);

/// out_b = left * in_b * right (mod m) for every element of the batch. An
/// empty `left` or `right` stands for the identity. `in` and `out` must not
/// alias.
void sandwich(std::span<const std::uint8_t> in, std::size_t count, std::size_t n,
              std::span<const std::uint32_t> left, std::span<const std::uint32_t> right,
              std::uint32_t modulus, std::span<std::uint8_t> out);

/// Same as sandwich() with an explicit ISA, for equivalence testing.
void sandwich_with(Isa isa, std::span<const std::uint8_t> in, std::size_t count, std::size_t n,
                   std::span<const std::uint32_t> left, std::span<const std::uint32_t> right,
                   std::uint32_t modulus, std::span<std::uint8_t> out);

/// Base-m big-endian packing of each element's row-major entries, so that the
/// numeric order of keys is the lexicographic order of entry arrays.
/// Caller guarantees m^(n*n) fits in 64 bits.
void encode_keys(std::span<const std::uint8_t> planes, std::size_t count, std::size_t n,
                 std::uint32_t modulus, std::span<std::uint64_t> keys);
void decode_keys(std::span<const std::uint64_t> keys, std::size_t n, std::uint32_t modulus,
                 std::span<std::uint8_t> planes);

}  // namespace twistcc::kernels
