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

#include "twistcc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif

#include <cstring>

namespace twistcc::kernels::avx2 {

#if defined(__AVX2__)

void combine(const std::uint8_t* const* planes, const std::uint32_t* coeffs, std::size_t terms,
             std::size_t count, std::uint32_t modulus, std::uint8_t* out) {
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(modulus));
  const __m256 inv = _mm256_set1_ps(1.0f / static_cast<float>(modulus));
  const __m256i zero = _mm256_setzero_si256();
  __m256i vc[kMaxDim];
  for (std::size_t t = 0; t < terms; ++t) vc[t] = _mm256_set1_epi32(static_cast<int>(coeffs[t]));

  std::size_t b = 0;
  for (; b + 8 <= count; b += 8) {
    __m256i acc = zero;
    for (std::size_t t = 0; t < terms; ++t) {
      const __m128i raw = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(planes[t] + b));
      acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(_mm256_cvtepu8_epi32(raw), vc[t]));
    }
    // acc < 2^24, so the float quotient is off by at most one; fix up below.
    const __m256 qf = _mm256_floor_ps(_mm256_mul_ps(_mm256_cvtepi32_ps(acc), inv));
    __m256i r = _mm256_sub_epi32(acc, _mm256_mullo_epi32(_mm256_cvttps_epi32(qf), vm));
    r = _mm256_add_epi32(r, _mm256_and_si256(_mm256_cmpgt_epi32(zero, r), vm));
    r = _mm256_sub_epi32(r, _mm256_andnot_si256(_mm256_cmpgt_epi32(vm, r), vm));
    // Narrow 8 x u32 -> 8 x u8: each 128-bit lane packs its four values into
    // its low dword.
    const __m256i p16 = _mm256_packus_epi32(r, r);
    const __m256i p8 = _mm256_packus_epi16(p16, p16);
    const auto lo = static_cast<std::uint32_t>(_mm256_extract_epi32(p8, 0));
    const auto hi = static_cast<std::uint32_t>(_mm256_extract_epi32(p8, 4));
    std::memcpy(out + b, &lo, 4);
    std::memcpy(out + b + 4, &hi, 4);
  }
  if (b < count) {
    const std::uint8_t* tail[kMaxDim];
    for (std::size_t t = 0; t < terms; ++t) tail[t] = planes[t] + b;
    scalar::combine(tail, coeffs, terms, count - b, modulus, out + b);
  }
}

#else

// Built without AVX2 support; dispatch never selects this path.
void combine(const std::uint8_t* const* planes, const std::uint32_t* coeffs, std::size_t terms,
             std::size_t count, std::uint32_t modulus, std::uint8_t* out) {
  scalar::combine(planes, coeffs, terms, count, modulus, out);
}

#endif

}  // namespace twistcc::kernels::avx2
