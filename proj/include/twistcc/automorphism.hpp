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
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "twistcc/groups.hpp"
#include "twistcc/int_matrix.hpp"
#include "twistcc/mod_matrix.hpp"

namespace twistcc {

/// x -> chi(x) * x for a character chi into {+1, -1}.
///
/// chi is data: a function on integer matrices, on residue matrices, or both.
/// A twist descends to Z/m only through `on_residues`; when `modulus` is set
/// the residue function is only valid for that modulus.
struct CharacterTwist {
  std::string name;
  std::function<int(const IntMatrix&)> on_integers;
  std::function<int(const ModMatrix&)> on_residues;
  std::optional<Modulus> modulus;
};

namespace primitive {

/// x -> M x M^-1.
struct Inner {
  std::variant<IntMatrix, ModMatrix> conjugator;
  std::variant<IntMatrix, ModMatrix> conjugator_inverse;
  std::string label;
};
/// tau: x -> transpose(x)^-1.
struct TransposeInverse {};
/// sigma: x -> J x J, J = diag(1, ..., 1, -1).
struct ConjByJ {};
/// theta: x -> J' x J', J' = diag([[0, 1], [1, 0]], I).
struct ConjBySwap {};

}  // namespace primitive

using Primitive = std::variant<primitive::Inner, primitive::TransposeInverse, primitive::ConjByJ,
                               primitive::ConjBySwap, CharacterTwist>;

/// A composition chain of primitive automorphisms, applied right to left.
/// Chains are kept exactly as written; equality of automorphisms is only
/// ever tested pointwise on a finite group.
class Automorphism {
 public:
  Automorphism() = default;

  static Automorphism identity() { return {}; }
  /// Throws NotInvertible unless det(m) = +-1.
  static Automorphism inner(const IntMatrix& m, std::string label = {});
  /// Throws NotInvertible unless det(m) is a unit.
  static Automorphism inner(const ModMatrix& m, std::string label = {});
  static Automorphism tau();
  static Automorphism sigma();
  static Automorphism theta();
  static Automorphism character_twist(CharacterTwist chi);

  /// outer * inner: apply `inner` first.
  friend Automorphism operator*(const Automorphism& outer, const Automorphism& inner);

  IntMatrix apply(const IntMatrix& x) const;
  ModMatrix apply(const ModMatrix& x) const;

  /// "id" for the empty chain; otherwise primitives joined by '.'.
  std::string descriptor() const;
  bool is_identity() const noexcept { return chain_.empty(); }
  bool has_character_twist() const;
  std::span<const Primitive> chain() const noexcept { return chain_; }

  /// When the chain is conjugation by a fixed matrix (Inner, sigma, theta
  /// only), returns (L, R) with phi(x) = L x R over Z/m.
  std::optional<std::pair<ModMatrix, ModMatrix>> as_sandwich(std::size_t n, Modulus m) const;

 private:
  explicit Automorphism(Primitive p) { chain_.push_back(std::move(p)); }
  std::vector<Primitive> chain_;
};

/// Same chain with every integral conjugator reduced mod m, so that
/// induced.apply(reduce_mod(x, m)) == reduce_mod(phi.apply(x), m).
/// Throws NonDescending for a twist without a residue-level chi for m.
Automorphism induced_mod(const Automorphism& phi, Modulus m);

struct ValidationReport {
  bool closure = true;
  bool homomorphism = true;
  bool bijectivity = true;
  bool exhaustive = true;
  std::size_t pairs_checked = 0;
  std::uint64_t seed = 0;
  std::string first_failure;

  bool ok() const noexcept { return closure && homomorphism && bijectivity; }
  nlohmann::ordered_json to_json() const;
};

/// Index of phi(x) for every element x, FiniteMatrixGroup::kNotFound where the
/// image leaves the group (or is undefined).
std::vector<FiniteMatrixGroup::Index> image_table(const Automorphism& phi,
                                                  const FiniteMatrixGroup& g);

/// Closure, homomorphism (all pairs up to 2000 elements, otherwise 10^5
/// sampled pairs drawn with `seed`) and bijectivity. Failures are reported,
/// never thrown.
ValidationReport validate_automorphism(const Automorphism& phi, const FiniteMatrixGroup& g,
                                       std::uint64_t seed = 0);

/// Outer automorphism class representatives: SL odd -> [tau]; SL even ->
/// [tau, sigma, tau.sigma]; Sp(2n), 2n > 4 -> [theta]; Sp(4) -> [theta, phi,
/// theta.phi] with phi the supplied character twist.
std::vector<Automorphism> out_representatives(const GroupFamily& family,
                                              const std::optional<CharacterTwist>& chi = {});

/// chi(x) = det(x), defined where det(x) = +-1 (over Z and every Z/m).
CharacterTwist determinant_character();

/// Character given by an explicit table of residue matrices. Elements missing
/// from the table make application throw LookupError.
CharacterTwist table_character(std::string name, Modulus m,
                               std::vector<std::pair<ModMatrix, int>> table);

/// Parses {"n", "modulus", "values": [{"matrix": [[...]], "chi": +-1}, ...]}.
CharacterTwist load_character_table(const std::filesystem::path& path);

/// The unique nontrivial character of a group whose derived subgroup has
/// index 2, or nullopt if the index is not 2.
std::optional<CharacterTwist> index_two_character(const FiniteMatrixGroup& g);

/// CLI descriptors: "id", "tau", "sigma", "theta", "inner:<matrix-file>",
/// "chartwist:<table-file>", "chartwist:det", joined by '.' and applied
/// right to left. Relative file names resolve against `base_dir`.
Automorphism parse_automorphism(std::string_view text,
                                const std::filesystem::path& base_dir = {});

}  // namespace twistcc
