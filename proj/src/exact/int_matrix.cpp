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

#include "twistcc/int_matrix.hpp"

#include <sstream>
#include <utility>

#include "twistcc/error.hpp"

namespace twistcc {

namespace {

void require_same_dim(const IntMatrix& a, const IntMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw UsageError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
  }
}

IntMatrix minor_matrix(const IntMatrix& a, std::size_t row, std::size_t col) {
  const std::size_t n = a.dim();
  IntMatrix out(n - 1);
  for (std::size_t i = 0, oi = 0; i < n; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, oj = 0; j < n; ++j) {
      if (j == col) continue;
      out(oi, oj) = a(i, j);
      ++oj;
    }
    ++oi;
  }
  return out;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t n) : n_(n), entries_(n * n) {
  if (n == 0) throw UsageError("IntMatrix: dimension must be positive");
}

IntMatrix::IntMatrix(std::size_t n, std::vector<Integer> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n == 0) throw UsageError("IntMatrix: dimension must be positive");
  if (entries_.size() != n * n) {
    throw UsageError("IntMatrix: expected " + std::to_string(n * n) + " entries, got " +
                     std::to_string(entries_.size()));
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : n_(rows.size()) {
  if (n_ == 0) throw UsageError("IntMatrix: dimension must be positive");
  entries_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw UsageError("IntMatrix: ragged or non-square rows");
    for (long long v : row) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require_same_dim(a, b, "mat_mul");
  const std::size_t n = a.dim();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Integer& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  require_same_dim(a, b, "add");
  std::vector<Integer> e(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
  return IntMatrix(a.dim(), std::move(e));
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  require_same_dim(a, b, "sub");
  std::vector<Integer> e(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
  return IntMatrix(a.dim(), std::move(e));
}

IntMatrix operator-(const IntMatrix& a) {
  std::vector<Integer> e(a.entries().begin(), a.entries().end());
  for (auto& v : e) v = -v;
  return IntMatrix(a.dim(), std::move(e));
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  std::vector<Integer> e(a.entries().begin(), a.entries().end());
  for (auto& v : e) v *= s;
  return IntMatrix(a.dim(), std::move(e));
}

IntMatrix transpose(const IntMatrix& a) {
  const std::size_t n = a.dim();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j, i) = a(i, j);
  return out;
}

Integer det(const IntMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<Integer> m(a.entries().begin(), a.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * n + j]; };
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && at(r, k).is_zero()) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact division: Sylvester's identity guarantees prev divides.
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

IntMatrix adjugate(const IntMatrix& a) {
  const std::size_t n = a.dim();
  if (n == 1) return IntMatrix::identity(1);
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Integer c = det(minor_matrix(a, i, j));
      out(j, i) = ((i + j) % 2 == 0) ? c : Integer(-c);
    }
  }
  return out;
}

IntMatrix inverse(const IntMatrix& a) {
  const Integer d = det(a);
  if (d != 1 && d != -1) {
    throw NotInvertible(d.str(), "inverse: determinant " + d.str() + " is not a unit in Z");
  }
  IntMatrix adj = adjugate(a);
  return d == 1 ? adj : -adj;
}

Integer trace(const IntMatrix& a) {
  Integer t = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t p = a.dim(), q = b.dim();
  IntMatrix out(p + q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) out(p + i, p + j) = b(i, j);
  return out;
}

IntMatrix elementary(std::size_t n, std::size_t i, std::size_t j, const Integer& k) {
  if (i >= n || j >= n) throw UsageError("elementary: index out of range");
  IntMatrix out = IntMatrix::identity(n);
  out(i, j) += k;
  return out;
}

IntMatrix diagonal(std::span<const Integer> d) {
  IntMatrix out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
  return out;
}

std::vector<Integer> column(const IntMatrix& a, std::size_t j) {
  std::vector<Integer> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a(i, j);
  return c;
}

IntMatrix outer_product(std::span<const Integer> u, std::span<const Integer> v) {
  if (u.size() != v.size() || u.empty()) throw UsageError("outer_product: length mismatch");
  IntMatrix out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * v[j];
  return out;
}

}  // namespace twistcc
