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

#include "twistcc/oracles.hpp"

#include <set>
#include <stdexcept>

#include "twistcc/error.hpp"

namespace twistcc::oracle {

EntryKey key(const ModMatrix& x) { return EntryKey(x.entries().begin(), x.entries().end()); }

std::vector<ModMatrix> enumerate_members(std::size_t n, Modulus m,
                                         const std::function<bool(const ModMatrix&)>& member) {
  const std::size_t cells = n * n;
  std::uint64_t total = 1;
  for (std::size_t c = 0; c < cells; ++c) {
    total *= m;
    if (total > (1u << 24)) throw ResourceLimit(total, "oracle enumeration space too large");
  }
  std::vector<ModMatrix> out;
  std::vector<Residue> digits(cells, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    ModMatrix x = ModMatrix::from_canonical(n, m, digits);
    if (member(x)) out.push_back(std::move(x));
    for (std::size_t c = cells; c-- > 0;) {
      if (++digits[c] < m) break;
      digits[c] = 0;
    }
  }
  return out;
}

ClassMap twisted_classes(const std::vector<ModMatrix>& elements, const MatrixFn& phi) {
  std::set<EntryKey> universe;
  for (const ModMatrix& x : elements) universe.insert(key(x));
  std::vector<ModMatrix> phi_inv;
  phi_inv.reserve(elements.size());
  for (const ModMatrix& g : elements) phi_inv.push_back(inverse(phi(g)));

  ClassMap classes;
  std::uint32_t next = 0;
  // Visit x in lexicographic order so that a fresh id always starts at the
  // smallest member of its class.
  std::map<EntryKey, const ModMatrix*> sorted;
  for (const ModMatrix& x : elements) sorted.emplace(key(x), &x);
  for (const auto& [xk, xp] : sorted) {
    std::set<EntryKey> orbit;
    for (std::size_t gi = 0; gi < elements.size(); ++gi) {
      EntryKey y = key(elements[gi] * *xp * phi_inv[gi]);
      if (!universe.count(y)) throw std::logic_error("oracle: orbit leaves the group");
      orbit.insert(std::move(y));
    }
    auto found = classes.find(xk);
    const std::uint32_t id = found == classes.end() ? next++ : found->second;
    for (const EntryKey& y : orbit) {
      auto [it, fresh] = classes.emplace(y, id);
      if (!fresh && it->second != id) throw std::logic_error("oracle: orbits overlap");
    }
  }
  return classes;
}

std::size_t class_count(const ClassMap& classes) {
  std::set<std::uint32_t> ids;
  for (const auto& [k, id] : classes) ids.insert(id);
  return ids.size();
}

std::size_t mismatches(const TwistedPartition& engine, const ClassMap& oracle) {
  const FiniteMatrixGroup& g = engine.group();
  std::size_t bad = g.order() == oracle.size() ? 0 : 1;
  for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i) {
    auto it = oracle.find(key(g.element(i)));
    if (it == oracle.end() || it->second != engine.class_of(i)) ++bad;
  }
  return bad;
}

IntMatrix random_sl(std::size_t n, std::size_t steps, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  IntMatrix x = IntMatrix::identity(n);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = idx(rng);
    std::size_t j = idx(rng);
    while (j == i) j = idx(rng);
    x = x * elementary(n, i, j, sign(rng) ? 1 : -1);
  }
  return x;
}

IntMatrix random_bounded_sl(std::size_t n, std::int64_t bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(1, 3 * n);
  for (;;) {
    const IntMatrix x = random_sl(n, len(rng), rng);
    bool ok = true;
    for (const Integer& v : x.entries()) ok = ok && v <= bound && v >= -bound;
    if (ok) return x;
  }
}

}  // namespace twistcc::oracle
