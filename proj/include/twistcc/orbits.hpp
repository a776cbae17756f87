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

#include <cstdint>
#include <stdexcept>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistcc/automorphism.hpp"
#include "twistcc/groups.hpp"
#include "twistcc/partition.hpp"

namespace twistcc {

class InvalidAutomorphism : public std::runtime_error {
 public:
  InvalidAutomorphism(ValidationReport report, const std::string& what)
      : std::runtime_error(what), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// The orbits of x -> g x phi(g)^-1 on a finite matrix group.
///
/// Holds a pointer to the group, which must outlive the partition.
class TwistedPartition {
 public:
  using Index = FiniteMatrixGroup::Index;
  using ClassId = std::uint32_t;

  TwistedPartition(const FiniteMatrixGroup& group, Automorphism phi, ClassLabels labels);

  const FiniteMatrixGroup& group() const noexcept { return *group_; }
  const Automorphism& automorphism() const noexcept { return phi_; }

  std::size_t reidemeister_number() const noexcept { return labels_.count(); }
  ClassId class_of(Index x) const { return labels_.class_of.at(x); }
  std::span<const ClassId> class_of() const noexcept { return labels_.class_of; }
  std::span<const Index> representatives() const noexcept { return labels_.representatives; }
  std::span<const std::size_t> class_sizes() const noexcept { return labels_.class_sizes; }
  const ClassLabels& labels() const noexcept { return labels_; }

  /// {"group", "automorphism", "reidemeister_number", "classes": [{"id", "size", "representative"}]}
  nlohmann::ordered_json to_json(const std::string& group_descriptor,
                                 const std::string& automorphism_descriptor) const;

 private:
  const FiniteMatrixGroup* group_;
  Automorphism phi_;
  ClassLabels labels_;
};

/// Validates phi on g (throwing InvalidAutomorphism on failure), then
/// unions x with s x phi(s)^-1 for every element x and generator s.
TwistedPartition twisted_partition(const FiniteMatrixGroup& g, const Automorphism& phi,
                                   std::uint64_t seed = 0);

/// Same, for a caller that has already validated phi on g.
TwistedPartition twisted_partition_unchecked(const FiniteMatrixGroup& g, const Automorphism& phi);

/// Twisted classes of a table group under the automorphism given as an index
/// map (phi[x] = image of x).
ClassLabels twisted_classes(const TableGroup& g, std::span<const std::uint32_t> phi);

/// Throws LookupError when x or y is not in the group.
bool same_twisted_class(const TwistedPartition& p, const ModMatrix& x, const ModMatrix& y);

/// tr(x M): constant on Inner(M)-twisted classes.
Integer inner_trace_invariant(const IntMatrix& x, const IntMatrix& m);
Residue inner_trace_invariant(const ModMatrix& x, const ModMatrix& m);

/// tr(x J) for an involutive conjugator J: constant on classes twisted by
/// conjugation with J.
Integer sigma_trace_invariant(const IntMatrix& x, const IntMatrix& j);
Residue sigma_trace_invariant(const ModMatrix& x, const ModMatrix& j);

/// diag(1, ..., 1, -1) and diag([[0, 1], [1, 0]], I).
IntMatrix sigma_conjugator(std::size_t n);
IntMatrix theta_conjugator(std::size_t n);

}  // namespace twistcc
