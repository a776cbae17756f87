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

#include "twistcc/orbits.hpp"

#include "twistcc/error.hpp"
#include "twistcc/matrix_io.hpp"

namespace twistcc {

TwistedPartition::TwistedPartition(const FiniteMatrixGroup& group, Automorphism phi,
                                   ClassLabels labels)
    : group_(&group), phi_(std::move(phi)), labels_(std::move(labels)) {}

nlohmann::ordered_json TwistedPartition::to_json(const std::string& group_descriptor,
                                                 const std::string& automorphism_descriptor) const {
  nlohmann::ordered_json out;
  out["group"] = group_descriptor;
  out["automorphism"] = automorphism_descriptor;
  out["reidemeister_number"] = reidemeister_number();
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < labels_.count(); ++c) {
    nlohmann::ordered_json entry;
    entry["id"] = c;
    entry["size"] = labels_.class_sizes[c];
    entry["representative"] = rows_to_json(group_->element(labels_.representatives[c]));
    classes.push_back(std::move(entry));
  }
  out["classes"] = std::move(classes);
  return out;
}

TwistedPartition twisted_partition_unchecked(const FiniteMatrixGroup& g, const Automorphism& phi) {
  DisjointSets sets(g.order());
  for (auto s : g.generators()) {
    const ModMatrix gen = g.element(s);
    const ModMatrix twisted_inv = inverse(phi.apply(gen));
    const auto moves = g.sandwich_indices(&gen, &twisted_inv);
    for (FiniteMatrixGroup::Index x = 0; x < g.order(); ++x) {
      if (moves[x] == FiniteMatrixGroup::kNotFound) {
        throw std::logic_error("twisted action left the group at " + g.element(x).to_string());
      }
      sets.unite(x, moves[x]);
    }
  }
  return TwistedPartition(g, phi, label_classes(sets));
}

TwistedPartition twisted_partition(const FiniteMatrixGroup& g, const Automorphism& phi,
                                   std::uint64_t seed) {
  ValidationReport report = validate_automorphism(phi, g, seed);
  if (!report.ok()) {
    const std::string msg = "automorphism " + phi.descriptor() + " is not valid on " + g.label() +
                            ": " + report.first_failure;
    throw InvalidAutomorphism(std::move(report), msg);
  }
  return twisted_partition_unchecked(g, phi);
}

ClassLabels twisted_classes(const TableGroup& g, std::span<const std::uint32_t> phi) {
  if (phi.size() != g.order) throw UsageError("twisted_classes: map has wrong size");
  DisjointSets sets(g.order);
  for (auto s : g.generators) {
    const std::uint32_t right = g.inverses[phi[s]];
    for (std::uint32_t x = 0; x < g.order; ++x) sets.unite(x, g.mul(g.mul(s, x), right));
  }
  return label_classes(sets);
}

bool same_twisted_class(const TwistedPartition& p, const ModMatrix& x, const ModMatrix& y) {
  const auto& g = p.group();
  return p.class_of(g.index_of(x)) == p.class_of(g.index_of(y));
}

Integer inner_trace_invariant(const IntMatrix& x, const IntMatrix& m) { return trace(x * m); }
Residue inner_trace_invariant(const ModMatrix& x, const ModMatrix& m) { return trace(x * m); }
Integer sigma_trace_invariant(const IntMatrix& x, const IntMatrix& j) { return trace(x * j); }
Residue sigma_trace_invariant(const ModMatrix& x, const ModMatrix& j) { return trace(x * j); }

IntMatrix sigma_conjugator(std::size_t n) {
  IntMatrix j = IntMatrix::identity(n);
  j(n - 1, n - 1) = -1;
  return j;
}

IntMatrix theta_conjugator(std::size_t n) {
  if (n < 2) throw UsageError("theta conjugator needs dimension >= 2");
  IntMatrix j = IntMatrix::identity(n);
  j(0, 0) = 0;
  j(1, 1) = 0;
  j(0, 1) = 1;
  j(1, 0) = 1;
  return j;
}

}  // namespace twistcc
