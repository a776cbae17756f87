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

#include "twistcc/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "twistcc/automorphism.hpp"
#include "twistcc/error.hpp"
#include "twistcc/extensions.hpp"
#include "twistcc/groups.hpp"
#include "twistcc/kernels.hpp"
#include "twistcc/oracles.hpp"
#include "twistcc/orbits.hpp"
#include "twistcc/witnesses.hpp"

namespace twistcc::verify {

namespace {

Check make_check(std::string name, bool pass, std::string detail = {}) {
  return Check{std::move(name), pass, std::move(detail)};
}

std::string count_detail(std::size_t bad, std::size_t total, std::string_view what) {
  std::ostringstream out;
  out << bad << " of " << total << ' ' << what << " failed";
  return out.str();
}

std::function<bool(const ModMatrix&)> membership(const GroupFamily& family) {
  return [family](const ModMatrix& x) { return is_member_mod(x, family); };
}

// Random element of the group as an inner automorphism.
Automorphism random_inner(const FiniteMatrixGroup& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<FiniteMatrixGroup::Index> pick(
      0, static_cast<FiniteMatrixGroup::Index>(g.order() - 1));
  return Automorphism::inner(g.element(pick(rng)), "gamma");
}

}  // namespace

Checks identity_checks(std::uint64_t seed) {
  Checks out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small_k(0, 10);

  for (std::size_t n : {2, 3, 4}) {
    std::size_t bad = 0;
    for (int t = 0; t < 200; ++t) {
      const IntMatrix x = oracle::random_sl(n, 12, rng);
      if (!tau_action_identity_check(x, small_k(rng))) ++bad;
    }
    out.push_back(make_check("X A(k) X^t = X X^t + k c2 c1^t, 200 random X in SL(" +
                                 std::to_string(n) + ",Z)",
                             bad == 0, count_detail(bad, 200, "samples")));
  }

  {
    std::uniform_int_distribution<int> k_dist(1, 50);
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
      const IntMatrix m = oracle::random_sl(3, 12, rng);
      const Integer k = k_dist(rng);
      const Integer lhs = trace(make_witness(WitnessKind::kX, 3, k) * m);
      Integer rhs = (k * k + 1) * m(0, 0) + k * (m(0, 1) + m(1, 0));
      for (std::size_t j = 1; j < 3; ++j) rhs += m(j, j);
      if (lhs != rhs) ++bad;
    }
    out.push_back(make_check("tr(X(k) M) = (k^2+1) m11 + k (m12 + m21) + sum_{j>=2} m_jj, 100 samples",
                             bad == 0, count_detail(bad, 100, "samples")));
  }

  {
    std::uniform_int_distribution<int> entry(-9, 9);
    std::uniform_int_distribution<int> k_dist(1, 50);
    std::size_t bad = 0;
    for (int t = 0; t < 100; ++t) {
      IntMatrix m(3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (i != j) m(i, j) = entry(rng);
      const Integer k = k_dist(rng);
      if (trace(make_witness(WitnessKind::kA, 3, k) * m) != k * m(0, 1)) ++bad;
    }
    out.push_back(make_check("tr(A(k) M) = k m12 for zero-diagonal M, 100 samples", bad == 0,
                             count_detail(bad, 100, "samples")));
  }

  for (std::size_t dim : {4, 6}) {
    const IntMatrix jp = theta_conjugator(dim);
    std::size_t bad = 0;
    for (int k = 1; k <= 100; ++k) {
      const Integer want = 2 * k + static_cast<int>(dim) - 2;
      if (trace(make_witness(WitnessKind::kX, dim, k) * jp) != want) ++bad;
    }
    out.push_back(make_check("tr(X(k) J') = 2k + " + std::to_string(dim - 2) + ", k <= 100, 2n = " +
                                 std::to_string(dim),
                             bad == 0, count_detail(bad, 100, "values of k")));
  }

  {
    std::size_t bad = 0;
    for (int k = 0; k <= 50; ++k) {
      if (det(make_witness(WitnessKind::kX, 2, k)) != 1) ++bad;
      for (std::size_t dim : {4, 6})
        if (!is_member_integral(make_witness(WitnessKind::kX, dim, k), GroupFamily::sp(dim))) ++bad;
    }
    out.push_back(make_check("det C(k) = 1 and X(k) in Sp(4,Z), Sp(6,Z) for k <= 50", bad == 0,
                             count_detail(bad, 153, "cases")));
  }

  {
    const std::vector<Automorphism> maps = {
        Automorphism::tau(), Automorphism::sigma(), Automorphism::tau() * Automorphism::sigma(),
        Automorphism::inner(oracle::random_sl(3, 8, rng), "M")};
    std::size_t bad = 0, total = 0;
    for (const Automorphism& phi : maps) {
      for (Modulus m : {2, 3, 5, 7}) {
        const Automorphism induced = induced_mod(phi, m);
        for (int t = 0; t < 25; ++t) {
          const IntMatrix x = oracle::random_sl(3, 10, rng);
          ++total;
          if (reduce_mod(phi.apply(x), m) != induced.apply(reduce_mod(x, m))) ++bad;
        }
      }
    }
    out.push_back(make_check("reduction commutes with tau, sigma, tau.sigma, inner", bad == 0,
                             count_detail(bad, total, "samples")));
  }
  return out;
}

Checks separating_family_checks(std::uint64_t seed) {
  Checks out;
  std::mt19937_64 rng(seed);
  std::vector<IntMatrix> ms;
  for (int t = 0; t < 20; ++t) ms.push_back(oracle::random_bounded_sl(3, 5, rng));
  for (Modulus level : {2, 3}) {
    std::size_t bad = 0;
    for (const IntMatrix& m : ms) {
      const std::vector<IntMatrix> family = separating_family(m, level, 10);
      std::set<Integer> traces;
      bool ok = family.size() == 10;
      for (const IntMatrix& w : family) {
        ok = ok && in_congruence_subgroup(w, level) && det(w) == 1;
        traces.insert(trace(w * m));
      }
      if (!ok || traces.size() != 10) ++bad;
    }
    out.push_back(make_check("separating_family(M, " + std::to_string(level) +
                                 ", 10): in Gamma_m, det 1, 10 distinct traces, 20 random M",
                             bad == 0, count_detail(bad, 20, "matrices")));
  }
  return out;
}

Checks no_solution_checks() {
  Checks out;
  std::size_t bad = 0;
  std::ostringstream detail;
  for (std::int64_t k = 1; k <= 4; ++k) {
    for (std::int64_t l = 1; l <= 4; ++l) {
      const SearchReport r = tau_no_solution_oracle(k, l, 2, 6);
      const bool ok = k == l ? (r.solutions >= 1 && r.identity_found) : r.solutions == 0;
      if (!ok) {
        ++bad;
        detail << "(" << k << "," << l << ") ";
      }
    }
  }
  out.push_back(make_check("no X in SL(2,Z), |x_ij| <= 6, with X A(k) X^t = A(l) for k != l in 1..4; "
                           "identity found for k = l",
                           bad == 0, bad == 0 ? "16 pairs" : "failed pairs: " + detail.str()));
  return out;
}

namespace {

struct OracleCase {
  GroupFamily family;
  Modulus m;
  std::vector<std::pair<std::string, Automorphism>> maps;
};

}  // namespace

Checks oracle_equivalence_checks(std::uint64_t seed) {
  Checks out;
  std::mt19937_64 rng(seed);
  const auto tau = Automorphism::tau();
  const auto sigma = Automorphism::sigma();
  const auto theta = Automorphism::theta();
  const auto det_twist = Automorphism::character_twist(determinant_character());

  const std::vector<std::pair<GroupFamily, Modulus>> groups = {
      {GroupFamily::sl(2), 2}, {GroupFamily::sl(2), 3}, {GroupFamily::sl(2), 4},
      {GroupFamily::sl(2), 5}, {GroupFamily::sl(3), 2}, {GroupFamily::gl(2), 3},
      {GroupFamily::sp(4), 2}};

  for (const auto& [family, m] : groups) {
    const FiniteMatrixGroup g = build_quotient(family, m);
    const std::vector<ModMatrix> elements = oracle::enumerate_members(family.dim, m, membership(family));
    std::vector<std::pair<std::string, Automorphism>> maps = {
        {"id", Automorphism::identity()}, {"tau", tau}};
    const Automorphism inner = random_inner(g, rng);
    maps.emplace_back("inner", inner);
    maps.emplace_back("inner.tau", inner * tau);
    if (family.kind != FamilyKind::kSp && family.dim % 2 == 0) {
      maps.emplace_back("sigma", sigma);
      maps.emplace_back("tau.sigma", tau * sigma);
    }
    if (family.kind == FamilyKind::kGL) {
      maps.emplace_back("chartwist:det", det_twist);
      maps.emplace_back("chartwist:det.tau", det_twist * tau);
    }
    if (family.kind == FamilyKind::kSp) {
      maps.emplace_back("theta", theta);
      if (auto chi = index_two_character(g)) {
        const auto twist = Automorphism::character_twist(*chi);
        maps.emplace_back("chartwist", twist);
        maps.emplace_back("theta.chartwist", theta * twist);
      }
    }
    const std::string desc = GroupDescriptor{family, m}.str();
    for (const auto& [name, phi] : maps) {
      const Automorphism induced = induced_mod(phi, m);
      const TwistedPartition engine = twisted_partition(g, induced);
      const oracle::ClassMap brute =
          oracle::twisted_classes(elements, [&](const ModMatrix& x) { return induced.apply(x); });
      const std::size_t bad = oracle::mismatches(engine, brute);
      const bool same_count = engine.reidemeister_number() == oracle::class_count(brute);
      out.push_back(make_check("union-find = double loop on " + desc + " under " + name,
                               bad == 0 && same_count,
                               "R = " + std::to_string(engine.reidemeister_number()) + ", " +
                                   std::to_string(bad) + " mismatches over " +
                                   std::to_string(g.order()) + " elements"));
    }
  }
  return out;
}

Checks character_fusion_checks() {
  Checks out;
  const GroupFamily gl2 = GroupFamily::gl(2);
  const std::vector<ModMatrix> elements = oracle::enumerate_members(2, 3, membership(gl2));
  const CharacterTwist chi = determinant_character();
  const oracle::ClassMap twisted = oracle::twisted_classes(elements, [&](const ModMatrix& x) {
    return chi.on_residues(x) == 1 ? x : -x;
  });
  const oracle::ClassMap conj =
      oracle::twisted_classes(elements, [](const ModMatrix& x) { return x; });

  std::size_t unequal = 0, uncontained = 0;
  for (const ModMatrix& x : elements) {
    const std::uint32_t tx = twisted.at(oracle::key(x));
    const std::uint32_t cx = conj.at(oracle::key(x));
    const std::uint32_t cmx = conj.at(oracle::key(-x));
    std::set<oracle::EntryKey> cls, fused;
    for (const auto& [k, id] : twisted)
      if (id == tx) cls.insert(k);
    for (const auto& [k, id] : conj)
      if (id == cx || id == cmx) fused.insert(k);
    if (cls != fused) ++unequal;
    if (!std::includes(fused.begin(), fused.end(), cls.begin(), cls.end())) ++uncontained;
  }
  out.push_back(make_check("GL(2,3), phi(X) = det(X) X: twisted class of X = conj(X) ∪ conj(-X)",
                           unequal == 0, count_detail(unequal, elements.size(), "elements")));
  out.push_back(make_check("GL(2,3), phi(X) = det(X) X: twisted class of X ⊆ conj(X) ∪ conj(-X)",
                           uncontained == 0, count_detail(uncontained, elements.size(), "elements")));
  return out;
}

Checks kernel_equivalence_checks(std::uint64_t seed) {
  using kernels::Isa;
  Checks out;
  if (!kernels::isa_available(Isa::kAvx2)) {
    out.push_back(make_check("scalar and AVX2 kernels agree", true,
                             "AVX2 not available on this CPU; scalar only"));
    return out;
  }
  std::mt19937_64 rng(seed);
  std::size_t bad = 0, cases = 0;
  for (std::uint32_t m : {2u, 3u, 5u, 7u, 11u, 13u, 101u, 251u, 256u}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      std::uniform_int_distribution<std::uint32_t> residue(0, m - 1);
      std::uniform_int_distribution<std::size_t> len(1, 5000);
      const std::size_t count = len(rng);
      std::vector<std::uint8_t> in(n * n * count);
      for (auto& v : in) v = static_cast<std::uint8_t>(residue(rng));
      std::vector<std::uint32_t> left(n * n), right(n * n);
      for (auto& v : left) v = residue(rng);
      for (auto& v : right) v = residue(rng);
      std::vector<std::uint8_t> a(in.size()), b(in.size());
      kernels::sandwich_with(Isa::kScalar, in, count, n, left, right, m, a);
      kernels::sandwich_with(Isa::kAvx2, in, count, n, left, right, m, b);
      ++cases;
      if (a != b) ++bad;
    }
  }
  out.push_back(make_check("scalar and AVX2 sandwich kernels agree on random batches", bad == 0,
                           count_detail(bad, cases, "batches")));
  return out;
}

Checks fiber_bound_checks(std::uint64_t seed) {
  Checks out;
  std::mt19937_64 rng(seed);
  struct Case {
    std::string name;
    GroupFamily family;
    Modulus m;
    std::function<bool(const ModMatrix&)> kernel;
  };
  const std::vector<Case> cases = {
      {"SL(2,3) over its center", GroupFamily::sl(2), 3,
       [](const ModMatrix& x) {
         return x == ModMatrix::identity(2, 3) || x == -ModMatrix::identity(2, 3);
       }},
      {"GL(2,3) over SL(2,3)", GroupFamily::gl(2), 3,
       [](const ModMatrix& x) { return det_mod(x) == 1; }},
  };
  for (const Case& c : cases) {
    const FiniteMatrixGroup g = build_quotient(c.family, c.m);
    const FiniteExtension e = build_extension(g, c.kernel);
    out.push_back(make_check(c.name + ": |G/N| |N| = |G|",
                             e.index() * e.kernel_size() == g.order(),
                             std::to_string(e.index()) + " * " + std::to_string(e.kernel_size())));
    std::vector<std::pair<std::string, Automorphism>> maps = {
        {"id", Automorphism::identity()},
        {"inner", random_inner(g, rng)},
        {"inner", random_inner(g, rng)},
        {"tau", Automorphism::tau()}};
    for (const auto& [name, phi] : maps) {
      const BoundsReport r = fiber_bounds_check(e, induced_mod(phi, c.m));
      out.push_back(make_check(c.name + " under " + name + ": fiber bounds", r.bounds_hold,
                               r.to_json().dump()));
    }
  }
  return out;
}

Checks inner_conjugacy_checks(std::uint64_t seed) {
  Checks out;
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<GroupFamily, Modulus>> groups = {
      {GroupFamily::sl(2), 3}, {GroupFamily::sl(2), 5}, {GroupFamily::sl(3), 2}};
  for (const auto& [family, m] : groups) {
    const FiniteMatrixGroup g = build_quotient(family, m);
    const std::vector<ModMatrix> elements = oracle::enumerate_members(family.dim, m, membership(family));
    const std::size_t classes = oracle::class_count(
        oracle::twisted_classes(elements, [](const ModMatrix& x) { return x; }));
    std::uniform_int_distribution<FiniteMatrixGroup::Index> pick(
        0, static_cast<FiniteMatrixGroup::Index>(g.order() - 1));
    std::size_t bad = 0;
    std::ostringstream rs;
    for (int t = 0; t < 5; ++t) {
      const FiniteMatrixGroup::Index gamma = pick(rng);
      const std::size_t r =
          twisted_partition(g, Automorphism::inner(g.element(gamma), "gamma")).reidemeister_number();
      rs << (t ? "," : "") << r;
      if (r != classes || !inner_equals_conjugacy_check(g, gamma)) ++bad;
    }
    out.push_back(make_check("R(inner gamma) = class number on " + GroupDescriptor{family, m}.str() +
                                 ", 5 random gamma",
                             bad == 0,
                             "class number " + std::to_string(classes) + ", R = " + rs.str()));
  }
  return out;
}

Checks brauer_checks() {
  Checks out;
  std::vector<FiniteMatrixGroup> groups;
  for (const auto& [family, m] :
       std::vector<std::pair<GroupFamily, Modulus>>{{GroupFamily::sl(2), 3},
                                                    {GroupFamily::sl(2), 5},
                                                    {GroupFamily::sl(3), 2},
                                                    {GroupFamily::gl(2), 3},
                                                    {GroupFamily::sp(4), 2}}) {
    FiniteMatrixGroup g = build_quotient(family, m);
    g.set_family(family);
    groups.push_back(std::move(g));
  }
  const ModMatrix two(7, {{2}});
  groups.push_back(FiniteMatrixGroup::generate(1, 7, std::span(&two, 1), kDefaultElementCap, "C3"));
  for (const FiniteMatrixGroup& g : groups) {
    const std::string name = g.label().empty() ? "group" : g.label();
    out.push_back(make_check("class number >= ln ln |G| on " + name + " (order " +
                                 std::to_string(g.order()) + ")",
                             brauer_bound_check(g),
                             std::to_string(conjugacy_class_count(g)) + " classes"));
  }
  return out;
}

Checks run_suite(std::string_view suite, std::uint64_t seed) {
  Checks out;
  auto append = [&out](Checks more) {
    for (auto& c : more) out.push_back(std::move(c));
  };
  const bool all = suite == "all";
  if (!all && suite != "identities" && suite != "lemmas" && suite != "brauer" && suite != "oracles")
    throw UsageError("unknown suite '" + std::string(suite) +
                     "' (expected identities, lemmas, brauer, oracles or all)");
  if (all || suite == "identities") {
    append(identity_checks(seed));
    append(separating_family_checks(seed));
    append(no_solution_checks());
  }
  if (all || suite == "lemmas") {
    append(fiber_bound_checks(seed));
    append(inner_conjugacy_checks(seed));
  }
  if (all || suite == "brauer") append(brauer_checks());
  if (all || suite == "oracles") {
    append(oracle_equivalence_checks(seed));
    append(character_fusion_checks());
    append(kernel_equivalence_checks(seed));
  }
  return out;
}

bool all_pass(const Checks& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::ordered_json to_json(std::string_view suite, std::uint64_t seed, const Checks& checks) {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  j["all_pass"] = all_pass(checks);
  return j;
}

}  // namespace twistcc::verify
