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
#include <cstdint>
#include <span>
#include <vector>

namespace twistcc {

/// Union-find over 0..n-1 with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);

  std::uint32_t find(std::uint32_t x);
  void unite(std::uint32_t a, std::uint32_t b);
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> rank_size_;
};

/// A partition of 0..n-1 labelled deterministically: class ids ascend with
/// the smallest member of each class, which is also its representative.
struct ClassLabels {
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint32_t> representatives;
  std::vector<std::size_t> class_sizes;

  std::size_t count() const noexcept { return representatives.size(); }
};

ClassLabels label_classes(DisjointSets& sets);

/// Relabels an arbitrary class assignment into the canonical form above.
ClassLabels canonical_labels(std::span<const std::uint32_t> raw_class_of);

/// A finite group given by its multiplication table, for quotients and
/// subgroups that have no convenient matrix model.
struct TableGroup {
  std::size_t order = 0;
  std::vector<std::uint32_t> table;  // table[a * order + b] = a * b
  std::vector<std::uint32_t> inverses;
  std::vector<std::uint32_t> generators;
  std::uint32_t identity = 0;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * order + b]; }
};

}  // namespace twistcc
