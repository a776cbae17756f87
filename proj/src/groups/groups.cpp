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

#include "twistcc/groups.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <random>
#include <unordered_set>

#include "twistcc/error.hpp"
#include "twistcc/kernels.hpp"

namespace twistcc {

namespace {

constexpr std::size_t kExhaustiveClosureLimit = 2000;
constexpr std::size_t kSampledClosurePairs = 100'000;
constexpr unsigned __int128 kDenseVisitedLimit = std::uint64_t{1} << 30;

std::vector<std::uint32_t> as_u32(const ModMatrix& a) {
  return {a.entries().begin(), a.entries().end()};
}

void check_storable(std::size_t n, Modulus m) {
  if (n == 0 || n > kernels::kMaxDim) {
    throw UsageError("group: dimension " + std::to_string(n) + " outside 1.." +
                     std::to_string(kernels::kMaxDim));
  }
  if (m < 2 || m > kernels::kMaxModulus) {
    throw UsageError("group: modulus " + std::to_string(m) + " outside 2.." +
                     std::to_string(kernels::kMaxModulus));
  }
  unsigned __int128 p = 1;
  for (std::size_t e = 0; e < n * n; ++e) {
    p *= m;
    if (p > (static_cast<unsigned __int128>(1) << 64)) {
      throw UsageError("group: elements of dimension " + std::to_string(n) + " mod " +
                       std::to_string(m) + " do not pack into 64-bit keys");
    }
  }
}

// T_v = I - v v^t J0, i.e. x -> x + (x^t J0 v) v.
IntMatrix symplectic_transvection(const std::vector<Integer>& v, const IntMatrix& form) {
  return IntMatrix::identity(v.size()) - outer_product(v, v) * form;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw UsageError("group descriptor: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

GroupFamily GroupFamily::sl(std::size_t n) {
  if (n == 0) throw UsageError("SL: dimension must be positive");
  return {FamilyKind::kSL, n};
}

GroupFamily GroupFamily::gl(std::size_t n) {
  if (n == 0) throw UsageError("GL: dimension must be positive");
  return {FamilyKind::kGL, n};
}

GroupFamily GroupFamily::sp(std::size_t dim) {
  if (dim == 0 || dim % 2 != 0) throw UsageError("Sp: dimension must be even and positive");
  return {FamilyKind::kSp, dim};
}

std::string_view GroupFamily::name() const {
  switch (kind) {
    case FamilyKind::kSL:
      return "sl";
    case FamilyKind::kGL:
      return "gl";
    case FamilyKind::kSp:
      return "sp";
  }
  return "?";
}

IntMatrix symplectic_form(std::size_t dim) {
  if (dim == 0 || dim % 2 != 0) throw UsageError("symplectic_form: dimension must be even");
  IntMatrix j0(dim);
  for (std::size_t b = 0; b < dim; b += 2) {
    j0(b, b + 1) = 1;
    j0(b + 1, b) = -1;
  }
  return j0;
}

bool is_member_integral(const IntMatrix& x, const GroupFamily& family) {
  if (x.dim() != family.dim) {
    throw UsageError("is_member_integral: matrix dimension " + std::to_string(x.dim()) +
                     " does not match family dimension " + std::to_string(family.dim));
  }
  const Integer d = det(x);
  switch (family.kind) {
    case FamilyKind::kSL:
      return d == 1;
    case FamilyKind::kGL:
      return d == 1 || d == -1;
    case FamilyKind::kSp: {
      const IntMatrix j0 = symplectic_form(family.dim);
      return d == 1 && transpose(x) * j0 * x == j0;
    }
  }
  return false;
}

bool is_member_mod(const ModMatrix& x, const GroupFamily& family) {
  if (x.dim() != family.dim) throw UsageError("is_member_mod: dimension mismatch");
  const Modulus m = x.modulus();
  const Residue d = det_mod(x);
  switch (family.kind) {
    case FamilyKind::kSL:
      return d == 1 % m;
    case FamilyKind::kGL:
      return mod_inverse(d, m).has_value();
    case FamilyKind::kSp: {
      const ModMatrix j0 = reduce_mod(symplectic_form(family.dim), m);
      return d == 1 % m && transpose(x) * j0 * x == j0;
    }
  }
  return false;
}

bool in_congruence_subgroup(const IntMatrix& x, Modulus m) {
  return reduce_mod(x, m) == ModMatrix::identity(x.dim(), m);
}

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
      text.find(':', c2 + 1) != std::string_view::npos) {
    throw UsageError("group descriptor must look like sl:n:m, gl:n:m or sp:2n:m, got '" +
                     std::string(text) + "'");
  }
  const auto kind = text.substr(0, c1);
  const auto n = parse_u64(text.substr(c1 + 1, c2 - c1 - 1), "dimension");
  const auto m = parse_u64(text.substr(c2 + 1), "modulus");
  if (m < 2) throw UsageError("group descriptor: modulus must be >= 2");
  if (kind == "sl") return {GroupFamily::sl(n), m};
  if (kind == "gl") return {GroupFamily::gl(n), m};
  if (kind == "sp") return {GroupFamily::sp(n), m};
  throw UsageError("group descriptor: unknown family '" + std::string(kind) + "'");
}

std::string GroupDescriptor::str() const {
  return std::string(family.name()) + ":" + std::to_string(family.dim) + ":" +
         std::to_string(modulus);
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::optional<Integer> classical_order(const GroupFamily& family, Modulus m) {
  if (!is_prime(m)) return std::nullopt;
  const Integer q = m;
  auto qpow = [&](std::size_t e) {
    Integer r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= q;
    return r;
  };
  const std::size_t n = family.dim;
  switch (family.kind) {
    case FamilyKind::kGL:
    case FamilyKind::kSL: {
      Integer gl = 1;
      for (std::size_t i = 0; i < n; ++i) gl *= qpow(n) - qpow(i);
      return family.kind == FamilyKind::kGL ? gl : Integer(gl / (q - 1));
    }
    case FamilyKind::kSp: {
      const std::size_t half = n / 2;
      Integer r = qpow(half * half);
      for (std::size_t i = 1; i <= half; ++i) r *= qpow(2 * i) - 1;
      return r;
    }
  }
  return std::nullopt;
}

std::vector<IntMatrix> integral_generators(const GroupFamily& family) {
  const std::size_t n = family.dim;
  std::vector<IntMatrix> gens;
  if (family.kind == FamilyKind::kSp) {
    const IntMatrix form = symplectic_form(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Integer> v(n);
      v[i] = 1;
      gens.push_back(symplectic_transvection(v, form));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<Integer> v(n);
        v[i] = 1;
        v[j] = 1;
        gens.push_back(symplectic_transvection(v, form));
      }
    }
    return gens;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) gens.push_back(elementary(n, i, j, 1));
  if (family.kind == FamilyKind::kGL) {
    IntMatrix d = IntMatrix::identity(n);
    d(0, 0) = -1;
    gens.push_back(d);
  }
  return gens;
}

std::vector<ModMatrix> quotient_generators(const GroupFamily& family, Modulus m,
                                           bool all_vectors) {
  const std::size_t n = family.dim;
  std::vector<ModMatrix> gens;
  if (family.kind == FamilyKind::kSp) {
    if (!all_vectors) {
      for (const auto& g : integral_generators(family)) gens.push_back(reduce_mod(g, m));
      return gens;
    }
    const IntMatrix form = symplectic_form(n);
    std::vector<Integer> v(n, 0);
    // Odometer over (Z/m)^n \ {0}.
    while (true) {
      std::size_t pos = 0;
      while (pos < n && v[pos] == static_cast<long long>(m - 1)) v[pos++] = 0;
      if (pos == n) break;
      v[pos] += 1;
      gens.push_back(reduce_mod(symplectic_transvection(v, form), m));
    }
    return gens;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) gens.push_back(reduce_mod(elementary(n, i, j, 1), m));
  if (family.kind == FamilyKind::kGL) {
    for (Residue u = 2; u < m; ++u) {
      if (!mod_inverse(u, m)) continue;
      ModMatrix d = ModMatrix::identity(n, m);
      d.set(0, 0, static_cast<std::int64_t>(u));
      gens.push_back(d);
    }
  }
  return gens;
}

FiniteMatrixGroup FiniteMatrixGroup::generate(std::size_t n, Modulus m,
                                              std::span<const ModMatrix> generators,
                                              std::size_t cap, std::string label) {
  check_storable(n, m);
  for (const auto& g : generators) {
    if (g.dim() != n || g.modulus() != m) {
      throw UsageError("generate: generator " + g.to_string() + " has wrong shape");
    }
    if (!mod_inverse(det_mod(g), m)) {
      throw NotInvertible(std::to_string(det_mod(g)), "generate: generator is not invertible");
    }
  }
  const auto mm = static_cast<std::uint32_t>(m);
  const std::size_t entries = n * n;

  FiniteMatrixGroup out;
  out.n_ = n;
  out.m_ = m;
  out.label_ = std::move(label);

  std::vector<std::vector<std::uint32_t>> gen_ops;
  for (const auto& g : generators) gen_ops.push_back(as_u32(g));

  const Key id_key = out.key_of(ModMatrix::identity(n, m));
  // Small key spaces get a dense bitmap; larger ones a hash set.
  unsigned __int128 key_space = 1;
  for (std::size_t e = 0; e < entries; ++e) key_space *= m;
  const bool dense = key_space <= kDenseVisitedLimit;
  std::vector<bool> seen_bits(dense ? static_cast<std::size_t>(key_space) : 0);
  std::unordered_set<Key> seen_set;
  auto mark = [&](Key k) {
    if (dense) {
      if (seen_bits[k]) return false;
      seen_bits[k] = true;
      return true;
    }
    return seen_set.insert(k).second;
  };
  mark(id_key);
  std::vector<Key> all{id_key};
  std::vector<Key> frontier{id_key};
  std::vector<std::uint8_t> in_planes, out_planes;
  std::vector<Key> new_keys;

  while (!frontier.empty()) {
    const std::size_t count = frontier.size();
    in_planes.assign(entries * count, 0);
    out_planes.assign(entries * count, 0);
    new_keys.assign(count, 0);
    kernels::decode_keys(frontier, n, mm, in_planes);
    std::vector<Key> next;
    for (const auto& op : gen_ops) {
      kernels::sandwich(in_planes, count, n, {}, op, mm, out_planes);
      kernels::encode_keys(out_planes, count, n, mm, new_keys);
      for (Key k : new_keys) {
        if (!mark(k)) continue;
        next.push_back(k);
        all.push_back(k);
        if (all.size() > cap) {
          throw ResourceLimit(all.size(), "group closure exceeded element cap " +
                                              std::to_string(cap) + " (reached " +
                                              std::to_string(all.size()) + ")");
        }
      }
    }
    frontier = std::move(next);
  }

  std::sort(all.begin(), all.end());
  out.keys_ = std::move(all);
  out.planes_.assign(entries * out.keys_.size(), 0);
  kernels::decode_keys(out.keys_, n, mm, out.planes_);
  out.build_buckets();
  out.identity_ = *out.find_key(id_key);
  for (const auto& g : generators) {
    const Index gi = *out.find(g);
    if (gi == out.identity_) continue;
    if (std::find(out.generators_.begin(), out.generators_.end(), gi) == out.generators_.end()) {
      out.generators_.push_back(gi);
    }
  }
  out.verify_closure();
  return out;
}

ModMatrix FiniteMatrixGroup::element(Index i) const {
  if (i >= order()) throw LookupError("element index " + std::to_string(i) + " out of range");
  std::vector<Residue> e(n_ * n_);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = planes_[k * order() + i];
  return ModMatrix::from_canonical(n_, m_, std::move(e));
}

FiniteMatrixGroup::Key FiniteMatrixGroup::key_of(const ModMatrix& x) const {
  if (x.dim() != n_ || x.modulus() != m_) throw LookupError("element has wrong shape");
  Key k = 0;
  for (Residue e : x.entries()) k = k * m_ + e;
  return k;
}

void FiniteMatrixGroup::build_buckets() {
  const std::size_t buckets = std::bit_ceil(std::max<std::size_t>(keys_.size() / 4, 1));
  bucket_start_.assign(buckets + 1, static_cast<Index>(keys_.size()));
  for (std::size_t i = keys_.size(); i-- > 0;) bucket_start_[bucket_of(keys_[i])] = static_cast<Index>(i);
  for (std::size_t b = buckets; b-- > 0;) bucket_start_[b] = std::min(bucket_start_[b], bucket_start_[b + 1]);
}

std::size_t FiniteMatrixGroup::bucket_of(Key key) const {
  const Key lo = keys_.front(), hi = keys_.back();
  if (key <= lo) return 0;
  const std::size_t buckets = bucket_start_.size() - 1;
  if (key >= hi) return buckets - 1;
  const auto scaled = static_cast<unsigned __int128>(key - lo) * buckets / (static_cast<unsigned __int128>(hi - lo) + 1);
  return static_cast<std::size_t>(scaled);
}

std::optional<FiniteMatrixGroup::Index> FiniteMatrixGroup::find_key(Key key) const {
  if (keys_.empty() || key < keys_.front() || key > keys_.back()) return std::nullopt;
  const std::size_t b = bucket_of(key);
  const auto first = keys_.begin() + bucket_start_[b];
  const auto last = keys_.begin() + bucket_start_[b + 1];
  const auto it = std::lower_bound(first, last, key);
  if (it == last || *it != key) return std::nullopt;
  return static_cast<Index>(it - keys_.begin());
}

std::optional<FiniteMatrixGroup::Index> FiniteMatrixGroup::find(const ModMatrix& x) const {
  if (x.dim() != n_ || x.modulus() != m_) return std::nullopt;
  return find_key(key_of(x));
}

FiniteMatrixGroup::Index FiniteMatrixGroup::index_of(const ModMatrix& x) const {
  const auto i = find(x);
  if (!i) throw LookupError(x.to_string() + " is not an element of " + label_);
  return *i;
}

FiniteMatrixGroup::Index FiniteMatrixGroup::multiply(Index a, Index b) const {
  return index_of(element(a) * element(b));
}

FiniteMatrixGroup::Index FiniteMatrixGroup::inverse_of(Index a) const {
  return index_of(inverse(element(a)));
}

std::vector<FiniteMatrixGroup::Index> FiniteMatrixGroup::sandwich_indices(
    const ModMatrix* left, const ModMatrix* right) const {
  const std::size_t count = order();
  std::vector<std::uint32_t> l, r;
  if (left != nullptr) {
    if (left->dim() != n_ || left->modulus() != m_) throw UsageError("sandwich: bad left operand");
    l = as_u32(*left);
  }
  if (right != nullptr) {
    if (right->dim() != n_ || right->modulus() != m_) {
      throw UsageError("sandwich: bad right operand");
    }
    r = as_u32(*right);
  }
  std::vector<std::uint8_t> out_planes(planes_.size());
  kernels::sandwich(planes_, count, n_, l, r, static_cast<std::uint32_t>(m_), out_planes);
  std::vector<Key> keys(count);
  kernels::encode_keys(out_planes, count, n_, static_cast<std::uint32_t>(m_), keys);
  std::vector<Index> out(count);
  for (std::size_t b = 0; b < count; ++b) out[b] = find_key(keys[b]).value_or(kNotFound);
  return out;
}

void FiniteMatrixGroup::verify_closure() const {
  const std::size_t count = order();
  if (count <= kExhaustiveClosureLimit) {
    for (Index a = 0; a < count; ++a) {
      const ModMatrix x = element(a);
      const auto row = sandwich_indices(&x, nullptr);
      if (std::find(row.begin(), row.end(), kNotFound) != row.end()) {
        throw std::logic_error("group " + label_ + " is not closed under products");
      }
    }
  } else {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(count - 1));
    for (std::size_t s = 0; s < kSampledClosurePairs; ++s) {
      const Index a = pick(rng), b = pick(rng);
      if (!find(element(a) * element(b))) {
        throw std::logic_error("group " + label_ + " is not closed under products");
      }
    }
  }
  // A finite set of invertible matrices closed under products is closed under
  // inverses, so above the exhaustive limit a sample is enough.
  auto check_inverse = [&](Index a) {
    if (!find(inverse(element(a)))) {
      throw std::logic_error("group " + label_ + " is not closed under inverses");
    }
  };
  if (count <= kExhaustiveClosureLimit) {
    for (Index a = 0; a < count; ++a) check_inverse(a);
  } else {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(count - 1));
    for (std::size_t s = 0; s < kSampledClosurePairs; ++s) check_inverse(pick(rng));
  }
}

FiniteMatrixGroup build_quotient(const GroupFamily& family, Modulus m, std::size_t element_cap) {
  const GroupDescriptor desc{family, m};
  const auto expected = classical_order(family, m);
  auto group = FiniteMatrixGroup::generate(family.dim, m, quotient_generators(family, m),
                                           element_cap, desc.str());
  if (family.kind == FamilyKind::kSp && expected && Integer(group.order()) != *expected) {
    // Fall back to every nonzero transvection vector, which generates Sp over a field.
    group = FiniteMatrixGroup::generate(family.dim, m, quotient_generators(family, m, true),
                                        element_cap, desc.str());
  }
  group.set_family(family);
  return group;
}

FiniteMatrixGroup direct_product(const FiniteMatrixGroup& g, const FiniteMatrixGroup& h,
                                 std::size_t element_cap) {
  const Modulus mg = g.modulus(), mh = h.modulus();
  Modulus m = mg;
  // Embedding x -> e_g x + e_h I with e_g, e_h the CRT idempotents.
  Integer eg = 1, eh = 0;
  if (mg != mh) {
    const auto inv_h = mod_inverse(mh % mg, mg);
    const auto inv_g = mod_inverse(mg % mh, mh);
    if (!inv_h || !inv_g) {
      throw UsageError("direct_product: moduli " + std::to_string(mg) + " and " +
                       std::to_string(mh) + " are neither equal nor coprime");
    }
    m = mg * mh;
    eg = Integer(mh) * *inv_h;
    eh = Integer(mg) * *inv_g;
  }
  auto embed = [&](const ModMatrix& x, const Integer& e_self, const Integer& e_other) {
    if (mg == mh) return x;
    const IntMatrix lifted = e_self * lift(x) + e_other * IntMatrix::identity(x.dim());
    return reduce_mod(lifted, m);
  };
  const std::size_t ng = g.dim(), nh = h.dim();
  std::vector<ModMatrix> gens;
  for (auto gi : g.generators()) {
    gens.push_back(block_diag(embed(g.element(gi), eg, eh), ModMatrix::identity(nh, m)));
  }
  for (auto hi : h.generators()) {
    gens.push_back(block_diag(ModMatrix::identity(ng, m), embed(h.element(hi), eh, eg)));
  }
  if (g.order() * h.order() > element_cap) {
    throw ResourceLimit(g.order() * h.order(), "direct_product: order " +
                                                   std::to_string(g.order() * h.order()) +
                                                   " exceeds element cap");
  }
  auto out = FiniteMatrixGroup::generate(ng + nh, m, gens, element_cap,
                                         "(" + g.label() + ")x(" + h.label() + ")");
  if (out.order() != g.order() * h.order()) {
    throw std::logic_error("direct_product: closure order " + std::to_string(out.order()) +
                           " differs from " + std::to_string(g.order() * h.order()));
  }
  return out;
}

}  // namespace twistcc
