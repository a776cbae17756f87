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

#include "twistcc/mod_matrix.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <tuple>

#include "twistcc/error.hpp"

namespace twistcc {

namespace {

void require_modulus(Modulus m) {
  if (m < 2) throw UsageError("modulus must be >= 2, got " + std::to_string(m));
  if (m >= kMaxModulus) throw UsageError("modulus " + std::to_string(m) + " too large");
}

void require_compatible(const ModMatrix& a, const ModMatrix& b, const char* op) {
  if (a.dim() != b.dim()) throw UsageError(std::string(op) + ": dimension mismatch");
  if (a.modulus() != b.modulus()) throw UsageError(std::string(op) + ": modulus mismatch");
}

Residue mul_mod(Residue a, Residue b, Modulus m) { return (a * b) % m; }

// Determinant of the submatrix on the given rows/columns by subset DP over
// column masks. Division-free, so valid over Z/m for composite m.
Residue det_subset(const ModMatrix& a, std::span<const std::size_t> rows,
                   std::span<const std::size_t> cols) {
  const std::size_t k = rows.size();
  const Modulus m = a.modulus();
  if (k == 0) return 1 % m;
  std::vector<Residue> dp(std::size_t{1} << k, 0);
  dp[0] = 1 % m;
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    const std::size_t r = static_cast<std::size_t>(std::popcount(mask)) - 1;
    Residue acc = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      // Expansion along row r of the leading |mask| x |mask| block; sign from
      // the position of column j among the chosen columns.
      const std::size_t above = static_cast<std::size_t>(std::popcount(mask >> (j + 1)));
      const Residue term = mul_mod(a(rows[r], cols[j]), dp[mask ^ (std::size_t{1} << j)], m);
      acc = (above % 2 == 0) ? (acc + term) % m : (acc + m - term) % m;
    }
    dp[mask] = acc;
  }
  return dp.back();
}

constexpr std::size_t kSubsetDetMaxDim = 16;
constexpr std::size_t kLaplaceMaxDim = 4;

// Allocation-free Laplace expansion for tiny blocks along the first row.
Residue det_laplace(const ModMatrix& a, const std::size_t* rows, const std::size_t* cols,
                    std::size_t k) {
  const Modulus m = a.modulus();
  if (k == 1) return a(rows[0], cols[0]);
  if (k == 2) {
    const Residue p = mul_mod(a(rows[0], cols[0]), a(rows[1], cols[1]), m);
    const Residue q = mul_mod(a(rows[0], cols[1]), a(rows[1], cols[0]), m);
    return (p + m - q) % m;
  }
  Residue acc = 0;
  std::size_t sub[kLaplaceMaxDim];
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t s = 0, o = 0; s < k; ++s)
      if (s != t) sub[o++] = cols[s];
    const Residue term = mul_mod(a(rows[0], cols[t]), det_laplace(a, rows + 1, sub, k - 1), m);
    acc = (t % 2 == 0) ? (acc + term) % m : (acc + m - term) % m;
  }
  return acc;
}

Residue det_of_minor(const ModMatrix& a, std::size_t skip_row, std::size_t skip_col) {
  const std::size_t n = a.dim();
  if (n - 1 <= kLaplaceMaxDim) {
    std::size_t rows[kLaplaceMaxDim], cols[kLaplaceMaxDim];
    for (std::size_t i = 0, r = 0, c = 0; i < n; ++i) {
      if (i != skip_row) rows[r++] = i;
      if (i != skip_col) cols[c++] = i;
    }
    return det_laplace(a, rows, cols, n - 1);
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != skip_row) rows.push_back(i);
    if (i != skip_col) cols.push_back(i);
  }
  if (rows.size() <= kSubsetDetMaxDim) return det_subset(a, rows, cols);
  IntMatrix sub(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = a(rows[i], cols[j]);
  return canonical_residue(det(sub), a.modulus());
}

}  // namespace

Residue canonical_residue(std::int64_t v, Modulus m) {
  const auto sm = static_cast<std::int64_t>(m);
  std::int64_t r = v % sm;
  if (r < 0) r += sm;
  return static_cast<Residue>(r);
}

Residue canonical_residue(const Integer& v, Modulus m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r.convert_to<Residue>();
}

std::optional<Residue> mod_inverse(Residue a, Modulus m) {
  std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a % m);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) return std::nullopt;
  return canonical_residue(s0, m);
}

ModMatrix::ModMatrix(std::size_t n, Modulus m) : n_(n), m_(m), entries_(n * n, 0) {
  if (n == 0) throw UsageError("ModMatrix: dimension must be positive");
  require_modulus(m);
}

ModMatrix::ModMatrix(std::size_t n, Modulus m, std::span<const std::int64_t> values)
    : ModMatrix(n, m) {
  if (values.size() != n * n) throw UsageError("ModMatrix: wrong entry count");
  for (std::size_t i = 0; i < values.size(); ++i) entries_[i] = canonical_residue(values[i], m);
}

ModMatrix::ModMatrix(Modulus m, std::initializer_list<std::initializer_list<long long>> rows)
    : ModMatrix(rows.size(), m) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw UsageError("ModMatrix: ragged or non-square rows");
    std::size_t j = 0;
    for (long long v : row) set(i, j++, v);
    ++i;
  }
}

ModMatrix ModMatrix::identity(std::size_t n, Modulus m) {
  ModMatrix out(n, m);
  for (std::size_t i = 0; i < n; ++i) out.entries_[i * n + i] = 1 % m;
  return out;
}

ModMatrix ModMatrix::from_canonical(std::size_t n, Modulus m, std::vector<Residue> entries) {
  ModMatrix out(n, m);
  if (entries.size() != n * n) throw UsageError("ModMatrix: wrong entry count");
  if (std::any_of(entries.begin(), entries.end(), [m](Residue e) { return e >= m; })) {
    throw UsageError("ModMatrix: entry not a canonical residue");
  }
  out.entries_ = std::move(entries);
  return out;
}

std::strong_ordering ModMatrix::operator<=>(const ModMatrix& other) const {
  if (auto c = n_ <=> other.n_; c != 0) return c;
  if (auto c = m_ <=> other.m_; c != 0) return c;
  return std::lexicographical_compare_three_way(entries_.begin(), entries_.end(),
                                                other.entries_.begin(), other.entries_.end());
}

std::string ModMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << "] mod " << m_;
  return os.str();
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
  require_compatible(a, b, "mat_mul");
  const std::size_t n = a.dim();
  const Modulus m = a.modulus();
  std::vector<Residue> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Residue acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc = (acc + a(i, k) * b(k, j)) % m;
      out[i * n + j] = acc;
    }
  }
  return ModMatrix::from_canonical(n, m, std::move(out));
}

ModMatrix operator-(const ModMatrix& a) { return scale(-1, a); }

ModMatrix scale(std::int64_t s, const ModMatrix& a) {
  const Residue sr = canonical_residue(s, a.modulus());
  std::vector<Residue> out(a.entries().begin(), a.entries().end());
  for (auto& e : out) e = mul_mod(e, sr, a.modulus());
  return ModMatrix::from_canonical(a.dim(), a.modulus(), std::move(out));
}

ModMatrix transpose(const ModMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<Residue> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = a(i, j);
  return ModMatrix::from_canonical(n, a.modulus(), std::move(out));
}

Residue det_mod(const ModMatrix& a) {
  const std::size_t n = a.dim();
  if (n <= kLaplaceMaxDim) {
    constexpr std::size_t idx[kLaplaceMaxDim] = {0, 1, 2, 3};
    return det_laplace(a, idx, idx, n);
  }
  if (n <= kSubsetDetMaxDim) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return det_subset(a, idx, idx);
  }
  return canonical_residue(det(lift(a)), a.modulus());
}

ModMatrix inverse(const ModMatrix& a) {
  const Residue d = det_mod(a);
  const auto dinv = mod_inverse(d, a.modulus());
  if (!dinv) {
    throw NotInvertible(std::to_string(d), "inverse: determinant " + std::to_string(d) +
                                               " is not a unit mod " +
                                               std::to_string(a.modulus()));
  }
  const std::size_t n = a.dim();
  const Modulus m = a.modulus();
  std::vector<Residue> out(n * n);
  if (n == 1) {
    out[0] = *dinv;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Residue c = det_of_minor(a, i, j);
        if ((i + j) % 2 == 1) c = (m - c) % m;
        out[j * n + i] = mul_mod(c, *dinv, m);
      }
    }
  }
  return ModMatrix::from_canonical(n, m, std::move(out));
}

Residue trace(const ModMatrix& a) {
  Residue t = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) t = (t + a(i, i)) % a.modulus();
  return t;
}

ModMatrix reduce_mod(const IntMatrix& a, Modulus m) {
  require_modulus(m);
  std::vector<Residue> out;
  out.reserve(a.entries().size());
  for (const auto& e : a.entries()) out.push_back(canonical_residue(e, m));
  return ModMatrix::from_canonical(a.dim(), m, std::move(out));
}

IntMatrix lift(const ModMatrix& a) {
  std::vector<Integer> out;
  out.reserve(a.entries().size());
  for (Residue e : a.entries()) out.emplace_back(e);
  return IntMatrix(a.dim(), std::move(out));
}

ModMatrix block_diag(const ModMatrix& a, const ModMatrix& b) {
  if (a.modulus() != b.modulus()) throw UsageError("block_diag: modulus mismatch");
  const std::size_t p = a.dim(), q = b.dim();
  ModMatrix out(p + q, a.modulus());
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) out.set(i, j, static_cast<std::int64_t>(a(i, j)));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      out.set(p + i, p + j, static_cast<std::int64_t>(b(i, j)));
  return out;
}

}  // namespace twistcc
