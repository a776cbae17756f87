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

namespace twistcc::kernels::scalar {

void combine(const std::uint8_t* const* planes, const std::uint32_t* coeffs, std::size_t terms,
             std::size_t count, std::uint32_t modulus, std::uint8_t* out) {
  for (std::size_t b = 0; b < count; ++b) {
    std::uint32_t acc = 0;
    for (std::size_t t = 0; t < terms; ++t) acc += coeffs[t] * planes[t][b];
    out[b] = static_cast<std::uint8_t>(acc % modulus);
  }
}

}  // namespace twistcc::kernels::scalar
