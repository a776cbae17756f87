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

#include <map>
#include <numeric>
#include <set>
#include <random>

#include <gtest/gtest.h>

#include "twistcc/automorphism.hpp"
#include "twistcc/error.hpp"
#include "twistcc/groups.hpp"
#include "twistcc/matrix_io.hpp"
#include "twistcc/oracles.hpp"
#include "twistcc/orbits.hpp"
#include "twistcc/partition.hpp"

namespace twistcc {
namespace {

std::vector<ModMatrix> elements_of(const FiniteMatrixGroup& g) {
  std::vector<ModMatrix> out;
  for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i) out.push_back(g.element(i));
  return out;
}

void expect_partition_invariants(const TwistedPartition& p, const Automorphism& phi) {
  const FiniteMatrixGroup& g = p.group();
  const std::size_t total = std::accumulate(p.class_sizes().begin(), p.class_sizes().end(), std::size_t{0});
  EXPECT_EQ(total, g.order());
  for (std::uint32_t c = 0; c < p.reidemeister_number(); ++c) {
    const auto rep = p.representatives()[c];
    EXPECT_EQ(p.class_of(rep), c);
    if (c > 0) {
      EXPECT_LT(p.representatives()[c - 1], rep);
    }
  }
  for (FiniteMatrixGroup::Index x = 0; x < g.order(); ++x) {
    EXPECT_LE(p.representatives()[p.class_of(x)], x);  // representative is the minimum
    for (const auto s : g.generators()) {
      const ModMatrix sx = g.element(s) * g.element(x) * inverse(phi.apply(g.element(s)));
      EXPECT_EQ(p.class_of(g.index_of(sx)), p.class_of(x));
    }
  }
}

TEST(DisjointSets, UnionFind) {
  DisjointSets s(6);
  s.unite(0, 3);
  s.unite(4, 3);
  s.unite(1, 5);
  const ClassLabels l = label_classes(s);
  EXPECT_EQ(l.count(), 3u);
  EXPECT_EQ(l.class_of, (std::vector<std::uint32_t>{0, 1, 2, 0, 0, 1}));
  EXPECT_EQ(l.representatives, (std::vector<std::uint32_t>{0, 1, 2}));
  EXPECT_EQ(l.class_sizes, (std::vector<std::size_t>{3, 2, 1}));
  const std::vector<std::uint32_t> raw{9, 4, 9, 7};
  EXPECT_EQ(canonical_labels(raw).class_of, (std::vector<std::uint32_t>{0, 1, 0, 2}));
}

TEST(TwistedPartition, ConjugacyClassCounts) {
  const auto sl23 = build_quotient(GroupFamily::sl(2), 3);
  const auto p = twisted_partition(sl23, Automorphism::identity());
  const auto brute = oracle::twisted_classes(elements_of(sl23), [](const ModMatrix& x) { return x; });
  EXPECT_EQ(oracle::class_count(brute), 7u);
  EXPECT_EQ(p.reidemeister_number(), 7u);
  EXPECT_EQ(oracle::mismatches(p, brute), 0u);

  const auto sl22 = build_quotient(GroupFamily::sl(2), 2);
  EXPECT_EQ(twisted_partition(sl22, Automorphism::identity()).reidemeister_number(), 3u);
  const auto trivial = build_quotient(GroupFamily::sl(1), 7);
  EXPECT_EQ(twisted_partition(trivial, induced_mod(Automorphism::tau(), 7)).reidemeister_number(), 1u);
}

TEST(TwistedPartition, StructuralInvariants) {
  std::mt19937_64 rng(1);
  const auto g = build_quotient(GroupFamily::sl(2), 5);
  for (const Automorphism& phi : {Automorphism::identity(), Automorphism::tau(), Automorphism::sigma(),
                                  Automorphism::inner(oracle::random_sl(2, 7, rng), "M")}) {
    const auto induced = induced_mod(phi, 5);
    expect_partition_invariants(twisted_partition(g, induced), induced);
  }
  const auto sp = build_quotient(GroupFamily::sp(4), 2);
  const auto theta = induced_mod(Automorphism::theta(), 2);
  expect_partition_invariants(twisted_partition(sp, theta), theta);
}

TEST(TwistedPartition, MatchesDoubleLoopOracle) {
  std::mt19937_64 rng(2);
  struct Case {
    GroupFamily family;
    Modulus m;
  };
  for (const Case& c : {Case{GroupFamily::sl(2), 3}, Case{GroupFamily::sl(2), 4}, Case{GroupFamily::sl(3), 2},
                        Case{GroupFamily::gl(2), 3}, Case{GroupFamily::sp(4), 2}}) {
    const auto g = build_quotient(c.family, c.m);
    const auto members = oracle::enumerate_members(c.family.dim, c.m,
                                                   [&](const ModMatrix& x) { return is_member_mod(x, c.family); });
    ASSERT_EQ(members.size(), g.order());
    std::uniform_int_distribution<FiniteMatrixGroup::Index> pick(0, g.order() - 1);
    const std::vector<Automorphism> maps = {Automorphism::identity(), Automorphism::tau(),
                                            Automorphism::inner(g.element(pick(rng)), "g")};
    for (const Automorphism& phi : maps) {
      const auto p = twisted_partition(g, phi);
      const auto brute = oracle::twisted_classes(members, [&](const ModMatrix& x) { return phi.apply(x); });
      EXPECT_EQ(oracle::mismatches(p, brute), 0u) << GroupDescriptor{c.family, c.m}.str() << " " << phi.descriptor();
    }
  }
}

TEST(TwistedPartition, IdentityGivesOrdinaryConjugacy) {
  // Independent conjugacy enumeration: y ~ x iff y = g x g^-1 for some g.
  const auto g = build_quotient(GroupFamily::sl(3), 2);
  const auto p = twisted_partition(g, Automorphism::identity());
  for (FiniteMatrixGroup::Index x = 0; x < g.order(); x += 7) {
    std::set<FiniteMatrixGroup::Index> cls;
    for (FiniteMatrixGroup::Index h = 0; h < g.order(); ++h)
      cls.insert(g.index_of(g.element(h) * g.element(x) * inverse(g.element(h))));
    for (FiniteMatrixGroup::Index y = 0; y < g.order(); ++y)
      EXPECT_EQ(cls.count(y) == 1, p.class_of(y) == p.class_of(x));
  }
}

TEST(TwistedPartition, RejectsInvalidAutomorphisms) {
  const auto g = build_quotient(GroupFamily::sp(4), 3);
  try {
    twisted_partition(g, induced_mod(Automorphism::theta(), 3));
    FAIL() << "expected InvalidAutomorphism";
  } catch (const InvalidAutomorphism& e) {
    EXPECT_FALSE(e.report().closure);
  }
}

TEST(TwistedPartition, SameClassQueries) {
  const auto g = build_quotient(GroupFamily::sl(2), 5);
  const auto tau = induced_mod(Automorphism::tau(), 5);
  const auto p = twisted_partition(g, tau);
  const ModMatrix id = ModMatrix::identity(2, 5);
  EXPECT_TRUE(same_twisted_class(p, id, id));
  for (const auto s : g.generators()) {
    const ModMatrix step = g.element(s) * id * inverse(tau.apply(g.element(s)));
    EXPECT_TRUE(same_twisted_class(p, id, step));
  }
  // A(1) and A(2) mod 5 under tau, recorded from the double-loop oracle.
  const auto brute = oracle::twisted_classes(elements_of(g), [&](const ModMatrix& x) { return tau.apply(x); });
  const ModMatrix a1(5, {{1, 0}, {1, 1}}), a2(5, {{1, 0}, {2, 1}});
  const bool oracle_same = brute.at(oracle::key(a1)) == brute.at(oracle::key(a2));
  EXPECT_EQ(same_twisted_class(p, a1, a2), oracle_same);
  EXPECT_FALSE(oracle_same);
  EXPECT_THROW(same_twisted_class(p, id, ModMatrix(5, {{2, 0}, {0, 2}})), LookupError);
}

TEST(Invariants, InnerTraceIsConstantOnClasses) {
  std::mt19937_64 rng(3);
  const auto g = build_quotient(GroupFamily::sl(2), 5);
  std::uniform_int_distribution<FiniteMatrixGroup::Index> pick(0, g.order() - 1);
  for (int t = 0; t < 3; ++t) {
    const ModMatrix m = g.element(pick(rng));
    const auto p = twisted_partition(g, Automorphism::inner(m, "M"));
    std::map<std::uint32_t, Residue> seen;
    for (FiniteMatrixGroup::Index x = 0; x < g.order(); ++x) {
      const Residue v = inner_trace_invariant(g.element(x), m);
      auto [it, fresh] = seen.emplace(p.class_of(x), v);
      EXPECT_EQ(it->second, v);
    }
  }
  EXPECT_EQ(inner_trace_invariant(IntMatrix::identity(3), IntMatrix{{1, 2, 0}, {0, 1, 0}, {4, 0, 1}}), 3);
}

TEST(Invariants, SigmaTraceIsConstantOnClasses) {
  const auto check = [](const FiniteMatrixGroup& g, const Automorphism& phi, const IntMatrix& j) {
    const auto induced = induced_mod(phi, g.modulus());
    const auto p = twisted_partition(g, induced);
    const ModMatrix jm = reduce_mod(j, g.modulus());
    std::map<std::uint32_t, Residue> seen;
    for (FiniteMatrixGroup::Index x = 0; x < g.order(); ++x) {
      const Residue v = sigma_trace_invariant(g.element(x), jm);
      auto [it, fresh] = seen.emplace(p.class_of(x), v);
      EXPECT_EQ(it->second, v);
    }
  };
  check(build_quotient(GroupFamily::sl(2), 5), Automorphism::sigma(), sigma_conjugator(2));
  check(build_quotient(GroupFamily::sl(3), 3), Automorphism::sigma(), sigma_conjugator(3));
  check(build_quotient(GroupFamily::sp(4), 2), Automorphism::theta(), theta_conjugator(4));
}

TEST(Invariants, TraceExamples) {
  const IntMatrix a_prime = IntMatrix{{3, 2}, {7, 5}};
  const IntMatrix d = block_diag(a_prime, IntMatrix::identity(1));
  EXPECT_EQ(sigma_trace_invariant(d, sigma_conjugator(3)), trace(a_prime) - 1);
  EXPECT_EQ(sigma_trace_invariant(IntMatrix::identity(3), sigma_conjugator(3)), 1);
  for (long long k = 1; k <= 20; ++k) {
    const IntMatrix xk = block_diag(IntMatrix{{k * k + 1, k}, {k, 1}}, IntMatrix::identity(2));
    EXPECT_EQ(sigma_trace_invariant(xk, theta_conjugator(4)), 2 * k + 2);
  }
  const IntMatrix zero_diag = IntMatrix{{0, 4, 1}, {3, 0, 2}, {5, 1, 0}};
  for (long long k = 1; k <= 10; ++k)
    EXPECT_EQ(inner_trace_invariant(elementary(3, 1, 0, k), zero_diag), k * 4);
}

TEST(TwistedPartition, JsonExport) {
  const auto g = build_quotient(GroupFamily::sl(2), 3);
  const auto p = twisted_partition(g, Automorphism::identity());
  const auto j = p.to_json("sl:2:3", "id");
  EXPECT_EQ(j["group"], "sl:2:3");
  EXPECT_EQ(j["automorphism"], "id");
  EXPECT_EQ(j["reidemeister_number"], 7);
  ASSERT_EQ(j["classes"].size(), 7u);
  EXPECT_EQ(j["classes"][0]["id"], 0);
  EXPECT_EQ(j["classes"][0]["representative"], rows_to_json(g.element(p.representatives()[0])));
  EXPECT_EQ(j.dump(), twisted_partition(g, Automorphism::identity()).to_json("sl:2:3", "id").dump());
}

TEST(TwistedPartition, TableGroupEngine) {
  // Z/6 as a table group under x -> -x: classes are the cosets of 2Z/6.
  TableGroup z6;
  z6.order = 6;
  for (std::uint32_t a = 0; a < 6; ++a)
    for (std::uint32_t b = 0; b < 6; ++b) z6.table.push_back((a + b) % 6);
  for (std::uint32_t a = 0; a < 6; ++a) z6.inverses.push_back((6 - a) % 6);
  z6.generators = {1};
  const std::vector<std::uint32_t> neg{0, 5, 4, 3, 2, 1};
  const ClassLabels l = twisted_classes(z6, neg);
  EXPECT_EQ(l.count(), 2u);
  EXPECT_EQ(l.class_of, (std::vector<std::uint32_t>{0, 1, 0, 1, 0, 1}));
}

}  // namespace
}  // namespace twistcc
