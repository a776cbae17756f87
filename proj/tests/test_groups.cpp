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

#include <random>

#include <gtest/gtest.h>

#include "twistcc/automorphism.hpp"
#include "twistcc/error.hpp"
#include "twistcc/groups.hpp"
#include "twistcc/oracles.hpp"
#include "twistcc/orbits.hpp"

namespace twistcc {
namespace {

// Order formulas written out independently of classical_order().
Integer sl_order(std::size_t n, long q) {
  Integer num = 1;
  for (std::size_t i = 0; i < n; ++i) num *= pow(Integer(q), n) - pow(Integer(q), i);
  return num / (q - 1);
}

Integer sp_order(std::size_t half, long q) {
  Integer v = pow(Integer(q), half * half);
  for (std::size_t i = 1; i <= half; ++i) v *= pow(Integer(q), 2 * i) - 1;
  return v;
}

TEST(Groups, ClassicalOrders) {
  EXPECT_EQ(build_quotient(GroupFamily::sl(2), 3).order(), 24u);
  EXPECT_EQ(build_quotient(GroupFamily::sl(2), 5).order(), 120u);
  EXPECT_EQ(build_quotient(GroupFamily::sl(3), 2).order(), 168u);
  EXPECT_EQ(build_quotient(GroupFamily::sp(4), 2).order(), 720u);
  EXPECT_EQ(build_quotient(GroupFamily::sl(2), 2).order(), 6u);
  EXPECT_EQ(build_quotient(GroupFamily::gl(2), 3).order(), 48u);
}

TEST(Groups, OrderFormulasAgreeWithBfs) {
  for (auto [n, q] : std::vector<std::pair<std::size_t, long>>{{2, 2}, {2, 3}, {2, 5}, {2, 7}, {3, 2}, {3, 3}, {4, 2}}) {
    const auto g = build_quotient(GroupFamily::sl(n), q);
    EXPECT_EQ(Integer(g.order()), sl_order(n, q));
    EXPECT_EQ(classical_order(GroupFamily::sl(n), q), sl_order(n, q));
  }
  for (auto [dim, q] : std::vector<std::pair<std::size_t, long>>{{2, 3}, {2, 5}, {4, 2}, {4, 3}, {6, 2}}) {
    const auto g = build_quotient(GroupFamily::sp(dim), q, 2'000'000);
    EXPECT_EQ(Integer(g.order()), sp_order(dim / 2, q)) << dim << " " << q;
  }
  EXPECT_EQ(build_quotient(GroupFamily::gl(2), 5).order(), 480u);
  EXPECT_FALSE(classical_order(GroupFamily::sl(2), 4).has_value());
}

TEST(Groups, CompositeModuliMatchBruteForceMembership) {
  for (Modulus m : {4, 6, 8, 9}) {
    const GroupFamily sl2 = GroupFamily::sl(2);
    const auto members = oracle::enumerate_members(2, m, [](const ModMatrix& x) { return det_mod(x) == 1; });
    EXPECT_EQ(build_quotient(sl2, m).order(), members.size()) << m;
  }
}

TEST(Groups, ReducedIntegralSymplecticGeneratorsSurjectAtCompositeModuli) {
  // Sp(2) = SL(2); the group generated by reduced integral Sp generators
  // must be everything that passes the membership test.
  for (Modulus m : {4, 6, 8, 9, 10}) {
    const GroupFamily sp2 = GroupFamily::sp(2);
    const auto gens = quotient_generators(sp2, m);
    const auto g = FiniteMatrixGroup::generate(2, m, gens, kDefaultElementCap);
    const auto members = oracle::enumerate_members(2, m, [&](const ModMatrix& x) { return is_member_mod(x, sp2); });
    EXPECT_EQ(g.order(), members.size()) << m;
  }
  const auto sp4_4 = build_quotient(GroupFamily::sp(4), 4, 1'000'000);
  EXPECT_EQ(sp4_4.order(), 720u * 1024u);
}

TEST(Groups, TrivialGroup) {
  const auto g = build_quotient(GroupFamily::sl(1), 5);
  EXPECT_EQ(g.order(), 1u);
  EXPECT_TRUE(g.generators().empty());
}

TEST(Groups, IndexOrderIsCanonicalOrder) {
  const auto g = build_quotient(GroupFamily::sl(2), 5);
  for (FiniteMatrixGroup::Index i = 0; i + 1 < g.order(); ++i) EXPECT_LT(g.element(i), g.element(i + 1));
  for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i) EXPECT_EQ(g.index_of(g.element(i)), i);
  EXPECT_EQ(g.element(g.identity()), ModMatrix::identity(2, 5));
}

TEST(Groups, LookupOfNonMembers) {
  const auto g = build_quotient(GroupFamily::sl(2), 3);
  const ModMatrix two_i(3, {{2, 0}, {0, 1}});
  EXPECT_FALSE(g.find(two_i).has_value());
  EXPECT_THROW(g.index_of(two_i), LookupError);
}

TEST(Groups, ClosureAndInverses) {
  const auto g = build_quotient(GroupFamily::sp(4), 2);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<FiniteMatrixGroup::Index> pick(0, g.order() - 1);
  for (int t = 0; t < 2000; ++t) {
    const auto a = pick(rng), b = pick(rng);
    EXPECT_TRUE(g.find(g.element(a) * g.element(b)).has_value());
  }
  for (FiniteMatrixGroup::Index a = 0; a < g.order(); ++a)
    EXPECT_EQ(g.multiply(a, g.inverse_of(a)), g.identity());
}

TEST(Groups, ReducedIntegralWordsLandInQuotient) {
  std::mt19937_64 rng(2);
  for (const GroupFamily& family : {GroupFamily::sl(3), GroupFamily::sp(4)}) {
    const auto gens = integral_generators(family);
    const auto g = build_quotient(family, 3);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int t = 0; t < 100; ++t) {
      IntMatrix w = IntMatrix::identity(family.dim);
      for (int s = 0; s < 12; ++s) w = w * (rng() % 2 ? gens[pick(rng)] : inverse(gens[pick(rng)]));
      EXPECT_TRUE(is_member_integral(w, family));
      EXPECT_TRUE(g.find(reduce_mod(w, 3)).has_value());
    }
  }
}

TEST(Groups, ElementCapIsEnforced) {
  try {
    build_quotient(GroupFamily::sl(2), 5, 50);
    FAIL() << "expected ResourceLimit";
  } catch (const ResourceLimit& e) {
    EXPECT_GT(e.reached(), 50u);
  }
}

TEST(Groups, Membership) {
  const IntMatrix x3 = block_diag(IntMatrix{{10, 3}, {3, 1}}, IntMatrix::identity(2));
  EXPECT_TRUE(is_member_integral(x3, GroupFamily::sp(4)));
  const IntMatrix j = IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  EXPECT_FALSE(is_member_integral(j, GroupFamily::sl(3)));
  EXPECT_TRUE(is_member_integral(j, GroupFamily::gl(3)));
  EXPECT_TRUE(is_member_integral(elementary(3, 1, 0, 7), GroupFamily::sl(3)));
  EXPECT_TRUE(in_congruence_subgroup(elementary(3, 1, 0, 6), 3));
  EXPECT_FALSE(in_congruence_subgroup(elementary(3, 1, 0, 5), 3));
  EXPECT_TRUE(in_congruence_subgroup(block_diag(IntMatrix{{17, 4}, {4, 1}}, IntMatrix::identity(1)), 2));
}

TEST(Groups, SymplecticForm) {
  const IntMatrix j0 = symplectic_form(4);
  EXPECT_EQ(transpose(j0), -j0);
  EXPECT_EQ(det(j0), 1);
  EXPECT_THROW(GroupFamily::sp(3), UsageError);
}

TEST(Groups, Descriptors) {
  const auto d = GroupDescriptor::parse("sp:4:3");
  EXPECT_EQ(d.family, GroupFamily::sp(4));
  EXPECT_EQ(d.modulus, 3u);
  EXPECT_EQ(d.str(), "sp:4:3");
  for (const char* bad : {"sl:2", "xx:2:3", "sl:2:1", "sp:3:5", "sl:a:3", "sl:2:3:4", ""})
    EXPECT_THROW(GroupDescriptor::parse(bad), UsageError) << bad;
}

TEST(DirectProduct, Orders) {
  const auto s2 = build_quotient(GroupFamily::sl(2), 2);
  const auto s3 = build_quotient(GroupFamily::sl(2), 3);
  EXPECT_EQ(direct_product(s2, s2).order(), 36u);
  const auto mixed = direct_product(s3, s2);
  EXPECT_EQ(mixed.order(), 144u);
  EXPECT_EQ(mixed.modulus(), 6u);
  const auto trivial = build_quotient(GroupFamily::sl(1), 3);
  EXPECT_EQ(direct_product(s3, trivial).order(), 24u);
  const auto s4 = build_quotient(GroupFamily::sl(2), 4);
  EXPECT_THROW(direct_product(s2, s4), UsageError);
}

TEST(DirectProduct, ReidemeisterNumbersMultiply) {
  const auto s2 = build_quotient(GroupFamily::sl(2), 2);
  const auto s3 = build_quotient(GroupFamily::sl(2), 3);
  const auto p = direct_product(s3, s2);
  for (const Automorphism& phi : {Automorphism::identity(), Automorphism::tau()}) {
    const std::size_t r = twisted_partition(p, induced_mod(phi, 6)).reidemeister_number();
    const std::size_t r3 = twisted_partition(s3, induced_mod(phi, 3)).reidemeister_number();
    const std::size_t r2 = twisted_partition(s2, induced_mod(phi, 2)).reidemeister_number();
    EXPECT_EQ(r, r3 * r2) << phi.descriptor();
  }
}

}  // namespace
}  // namespace twistcc
