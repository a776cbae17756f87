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

#include "twistcc/partition.hpp"

#include <numeric>
#include <unordered_map>
#include <utility>

namespace twistcc {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), 0U);
}

std::uint32_t DisjointSets::find(std::uint32_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void DisjointSets::unite(std::uint32_t a, std::uint32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (rank_size_[a] < rank_size_[b]) std::swap(a, b);
  parent_[b] = a;
  rank_size_[a] += rank_size_[b];
}

ClassLabels label_classes(DisjointSets& sets) {
  std::vector<std::uint32_t> roots(sets.size());
  for (std::uint32_t i = 0; i < sets.size(); ++i) roots[i] = sets.find(i);
  return canonical_labels(roots);
}

ClassLabels canonical_labels(std::span<const std::uint32_t> raw_class_of) {
  ClassLabels out;
  out.class_of.resize(raw_class_of.size());
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  for (std::uint32_t i = 0; i < raw_class_of.size(); ++i) {
    auto [it, fresh] = ids.try_emplace(raw_class_of[i], static_cast<std::uint32_t>(ids.size()));
    if (fresh) {
      out.representatives.push_back(i);
      out.class_sizes.push_back(0);
    }
    out.class_of[i] = it->second;
    ++out.class_sizes[it->second];
  }
  return out;
}

}  // namespace twistcc
