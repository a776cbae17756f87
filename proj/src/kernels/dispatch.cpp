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

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <vector>

#include "twistcc/error.hpp"
#include "twistcc/kernels.hpp"

namespace twistcc::kernels {

namespace {

constexpr std::size_t kChunk = 2048;

Isa detect_best() {
  const char* env = std::getenv("TWISTCC_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return Isa::kScalar;
  return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{detect_best()};
  return slot;
}

void check_args(std::size_t n, std::uint32_t modulus, std::span<const std::uint32_t> left,
                std::span<const std::uint32_t> right) {
  if (n == 0 || n > kMaxDim) throw UsageError("kernels: dimension out of range");
  if (modulus < 2 || modulus > kMaxModulus) throw UsageError("kernels: modulus out of range");
  if (!left.empty() && left.size() != n * n) throw UsageError("kernels: bad left operand");
  if (!right.empty() && right.size() != n * n) throw UsageError("kernels: bad right operand");
}

// One matrix product against a fixed operand over a chunk of `len` elements.
// `src(e)` / `dst(e)` give the plane base for entry e inside the chunk.
template <class Src, class Dst>
void multiply_chunk(CombineFn combine, std::size_t n, std::span<const std::uint32_t> fixed,
                    bool fixed_on_left, std::uint32_t modulus, std::size_t len, Src src, Dst dst) {
  const std::uint8_t* planes[kMaxDim];
  std::uint32_t coeffs[kMaxDim];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t terms = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const std::uint32_t c = fixed_on_left ? fixed[i * n + k] : fixed[k * n + j];
        if (c == 0) continue;
        planes[terms] = fixed_on_left ? src(k * n + j) : src(i * n + k);
        coeffs[terms] = c;
        ++terms;
      }
      std::uint8_t* out = dst(i * n + j);
      if (terms == 0) {
        std::fill(out, out + len, std::uint8_t{0});
      } else {
        combine(planes, coeffs, terms, len, modulus, out);
      }
    }
  }
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(TWISTCC_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw UsageError("kernels: ISA " + std::string(isa_name(isa)) + " not available");
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

CombineFn combine_for(Isa isa) { return isa == Isa::kAvx2 ? &avx2::combine : &scalar::combine; }

void sandwich_with(Isa isa, std::span<const std::uint8_t> in, std::size_t count, std::size_t n,
                   std::span<const std::uint32_t> left, std::span<const std::uint32_t> right,
                   std::uint32_t modulus, std::span<std::uint8_t> out) {
  check_args(n, modulus, left, right);
  const std::size_t entries = n * n;
  if (in.size() < entries * count || out.size() < entries * count) {
    throw UsageError("kernels: batch buffers too small");
  }
  const CombineFn combine = combine_for(isa);
  std::vector<std::uint8_t> tmp(entries * kChunk);

  for (std::size_t base = 0; base < count; base += kChunk) {
    const std::size_t len = std::min(kChunk, count - base);
    auto in_plane = [&](std::size_t e) { return in.data() + e * count + base; };
    auto out_plane = [&](std::size_t e) { return out.data() + e * count + base; };
    auto tmp_plane = [&](std::size_t e) { return tmp.data() + e * kChunk; };

    if (right.empty() && left.empty()) {
      for (std::size_t e = 0; e < entries; ++e) std::copy_n(in_plane(e), len, out_plane(e));
    } else if (left.empty()) {
      multiply_chunk(combine, n, right, false, modulus, len, in_plane, out_plane);
    } else if (right.empty()) {
      multiply_chunk(combine, n, left, true, modulus, len, in_plane, out_plane);
    } else {
      multiply_chunk(combine, n, right, false, modulus, len, in_plane, tmp_plane);
      auto tmp_const = [&](std::size_t e) -> const std::uint8_t* { return tmp_plane(e); };
      multiply_chunk(combine, n, left, true, modulus, len, tmp_const, out_plane);
    }
  }
}

void sandwich(std::span<const std::uint8_t> in, std::size_t count, std::size_t n,
              std::span<const std::uint32_t> left, std::span<const std::uint32_t> right,
              std::uint32_t modulus, std::span<std::uint8_t> out) {
  sandwich_with(active_isa(), in, count, n, left, right, modulus, out);
}

void encode_keys(std::span<const std::uint8_t> planes, std::size_t count, std::size_t n,
                 std::uint32_t modulus, std::span<std::uint64_t> keys) {
  std::fill(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(count), 0);
  for (std::size_t e = 0; e < n * n; ++e) {
    const std::uint8_t* p = planes.data() + e * count;
    for (std::size_t b = 0; b < count; ++b) keys[b] = keys[b] * modulus + p[b];
  }
}

void decode_keys(std::span<const std::uint64_t> keys, std::size_t n, std::uint32_t modulus,
                 std::span<std::uint8_t> planes) {
  const std::size_t count = keys.size();
  std::vector<std::uint64_t> rest(keys.begin(), keys.end());
  for (std::size_t e = n * n; e-- > 0;) {
    std::uint8_t* p = planes.data() + e * count;
    for (std::size_t b = 0; b < count; ++b) {
      p[b] = static_cast<std::uint8_t>(rest[b] % modulus);
      rest[b] /= modulus;
    }
  }
}

}  // namespace twistcc::kernels
