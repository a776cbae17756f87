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
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "twistcc/automorphism.hpp"
#include "twistcc/groups.hpp"
#include "twistcc/orbits.hpp"
#include "twistcc/partition.hpp"

namespace twistcc {

/// Largest quotient or kernel for which a full multiplication table is built.
inline constexpr std::size_t kMaxTableOrder = 8192;

/// A finite group together with a normal subgroup N and the coset group G/N.
///
/// Cosets are numbered by their smallest element, which is also the
/// representative, so coset ids ascend with canonical order.
class FiniteExtension {
 public:
  using Index = FiniteMatrixGroup::Index;

  const FiniteMatrixGroup& total() const noexcept { return *total_; }
  /// Kernel element indices, ascending.
  std::span<const Index> kernel() const noexcept { return kernel_; }
  bool in_kernel(Index x) const { return kernel_pos_.at(x) != kNone; }
  /// Position of x in kernel(), throws LookupError when x is not in N.
  std::uint32_t kernel_position(Index x) const;
  /// A generating set of N, as element indices.
  std::span<const Index> kernel_generators() const noexcept { return kernel_gens_; }
  std::size_t kernel_size() const noexcept { return kernel_.size(); }
  std::size_t index() const noexcept { return reps_.size(); }
  std::uint32_t coset_of(Index x) const { return coset_of_.at(x); }
  std::span<const Index> coset_representatives() const noexcept { return reps_; }
  /// Members of every coset, ascending within each coset.
  std::vector<std::vector<Index>> cosets() const;
  const TableGroup& quotient() const noexcept { return quotient_; }

 private:
  friend FiniteExtension build_extension(const FiniteMatrixGroup&,
                                         const std::function<bool(const ModMatrix&)>&);
  static constexpr std::uint32_t kNone = UINT32_MAX;

  const FiniteMatrixGroup* total_ = nullptr;
  std::vector<Index> kernel_;
  std::vector<std::uint32_t> kernel_pos_;
  std::vector<Index> kernel_gens_;
  std::vector<std::uint32_t> coset_of_;
  std::vector<Index> reps_;
  TableGroup quotient_;
};

/// Selects N = {x : predicate(x)} and verifies that it is a normal subgroup
/// (NotASubgroup / NotNormal name an offending pair otherwise). The group
/// must outlive the extension.
FiniteExtension build_extension(const FiniteMatrixGroup& g,
                                const std::function<bool(const ModMatrix&)>& predicate);

struct Descent {
  /// phi on the whole group, by element index.
  std::vector<FiniteMatrixGroup::Index> image;
  /// N as a table group on kernel positions, and phi restricted to it.
  TableGroup kernel_group;
  std::vector<std::uint32_t> on_kernel;
  /// The induced map on coset ids.
  std::vector<std::uint32_t> on_quotient;
};

/// Checks phi on the total group (InvalidAutomorphism), then phi(N) = N
/// (NotInvariant), and returns phi|N and the induced map on G/N, both checked
/// to be automorphisms of their table groups.
Descent restrict_and_descend(const FiniteExtension& e, const Automorphism& phi,
                             std::uint64_t seed = 0);

/// Exhaustive check that the table map is a bijective homomorphism.
bool is_table_automorphism(const TableGroup& g, std::span<const std::uint32_t> phi);

struct BoundsReport {
  std::size_t r_total = 0;
  std::size_t r_quotient = 0;
  std::size_t r_kernel = 0;
  std::size_t kernel_size = 0;
  std::size_t index = 0;
  std::size_t max_fiber_eta = 0;
  std::size_t max_fiber_j = 0;
  bool eta_well_defined = false;
  bool eta_surjective = false;
  bool j_well_defined = false;
  bool bounds_hold = false;

  /// {"R_total", "R_quotient", "R_kernel", "kernel_size", "index",
  ///  "max_fiber_eta", "max_fiber_j", "bounds_hold"}
  nlohmann::ordered_json to_json() const;
};

/// Twisted class counts on G, G/N and N, the class maps between them and
/// the inequalities R(phi_bar) <= R(phi) <= |N| R(phi_bar) and
/// R(phi|N) <= [G:N] R(phi), with fibre sizes bounded by |N| and [G:N].
BoundsReport fiber_bounds_check(const FiniteExtension& e, const Automorphism& phi,
                                std::uint64_t seed = 0);

/// Number of ordinary conjugacy classes.
std::size_t conjugacy_class_count(const FiniteMatrixGroup& g);

/// x ~ y under conjugation by gamma iff x gamma and y gamma are conjugate.
/// All pairs for groups up to 500 elements, otherwise 10^5 sampled pairs; in
/// both cases the induced map on classes is checked to be a bijection.
bool inner_equals_conjugacy_check(const FiniteMatrixGroup& g, FiniteMatrixGroup::Index gamma,
                                  std::uint64_t seed = 0);

/// conjugacy_class_count(g) >= ln(ln |g|). Requires |g| >= 3.
bool brauer_bound_check(const FiniteMatrixGroup& g);

}  // namespace twistcc
