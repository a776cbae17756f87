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

#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "twistcc/automorphism.hpp"
#include "twistcc/error.hpp"
#include "twistcc/groups.hpp"
#include "twistcc/oracles.hpp"

namespace twistcc {
namespace {

IntMatrix b_mat(long long k) { return IntMatrix{{1, 0}, {k, 1}}; }
IntMatrix x_mat(long long k, std::size_t dim) {
  return block_diag(IntMatrix{{k * k + 1, k}, {k, 1}}, IntMatrix::identity(dim - 2));
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "twistcc_test_automorphisms";
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Apply, PrimitivesOnExamples) {
  EXPECT_EQ(Automorphism::tau().apply(b_mat(4)), (IntMatrix{{1, -4}, {0, 1}}));
  const IntMatrix a = block_diag(IntMatrix{{2, 3}, {5, 8}}, IntMatrix::identity(1));
  EXPECT_EQ(Automorphism::sigma().apply(a), a);
  for (long long k : {1, 2, 7}) {
    EXPECT_EQ(Automorphism::theta().apply(x_mat(k, 4)),
              block_diag(IntMatrix{{1, k}, {k, k * k + 1}}, IntMatrix::identity(2)));
  }
}

TEST(Apply, SigmaIsConjugationByJ) {
  std::mt19937_64 rng(1);
  const IntMatrix j = IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
  for (int t = 0; t < 20; ++t) {
    const IntMatrix x = oracle::random_sl(3, 10, rng);
    EXPECT_EQ(Automorphism::sigma().apply(x), j * x * j);
    const IntMatrix jp = IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    EXPECT_EQ(Automorphism::theta().apply(x), jp * x * jp);
  }
}

TEST(Apply, ChainsApplyRightToLeft) {
  const IntMatrix m = IntMatrix{{1, 1}, {0, 1}};
  const Automorphism inner = Automorphism::inner(m, "M");
  const Automorphism chain = Automorphism::tau() * inner;
  const IntMatrix x = b_mat(3);
  EXPECT_EQ(chain.apply(x), Automorphism::tau().apply(m * x * inverse(m)));
  EXPECT_EQ(chain.descriptor(), "tau.inner:M");
  EXPECT_EQ(Automorphism::identity().descriptor(), "id");
}

TEST(Apply, Involutions) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const IntMatrix x = oracle::random_sl(4, 12, rng);
    for (const Automorphism& phi : {Automorphism::tau(), Automorphism::sigma(), Automorphism::theta()})
      EXPECT_EQ(phi.apply(phi.apply(x)), x);
  }
  const auto g = build_quotient(GroupFamily::gl(2), 3);
  const auto twist = induced_mod(Automorphism::character_twist(determinant_character()), 3);
  for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i)
    EXPECT_EQ(twist.apply(twist.apply(g.element(i))), g.element(i));
}

TEST(Inner, RejectsNonUnimodularConjugators) {
  EXPECT_THROW(Automorphism::inner(IntMatrix{{2, 0}, {0, 1}}), NotInvertible);
  EXPECT_THROW(Automorphism::inner(ModMatrix(4, {{2, 0}, {0, 1}})), NotInvertible);
}

TEST(Induced, EquivariantWithReduction) {
  std::mt19937_64 rng(3);
  const IntMatrix m = oracle::random_sl(3, 6, rng);
  for (const Automorphism& phi :
       {Automorphism::tau(), Automorphism::sigma(), Automorphism::theta(), Automorphism::inner(m, "M"),
        Automorphism::tau() * Automorphism::sigma()}) {
    for (Modulus q : {2, 3, 5}) {
      const Automorphism induced = induced_mod(phi, q);
      for (int t = 0; t < 100; ++t) {
        const IntMatrix x = oracle::random_sl(3, 10, rng);
        ASSERT_EQ(induced.apply(reduce_mod(x, q)), reduce_mod(phi.apply(x), q)) << phi.descriptor();
      }
    }
  }
}

TEST(Induced, Examples) {
  const Automorphism tau5 = induced_mod(Automorphism::tau(), 5);
  EXPECT_EQ(tau5.apply(reduce_mod(b_mat(3), 5)), ModMatrix(5, {{1, 2}, {0, 1}}));
  EXPECT_EQ(reduce_mod(Automorphism::tau().apply(b_mat(3)), 5), ModMatrix(5, {{1, 2}, {0, 1}}));
  const Automorphism inner = induced_mod(Automorphism::inner(IntMatrix{{2, 1}, {1, 1}}, "M"), 7);
  EXPECT_EQ(inner.apply(ModMatrix::identity(2, 7)), ModMatrix::identity(2, 7));
  const auto g = build_quotient(GroupFamily::sl(2), 2);
  const Automorphism sigma2 = induced_mod(Automorphism::sigma(), 2);
  for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i) EXPECT_EQ(sigma2.apply(g.element(i)), g.element(i));
}

TEST(Induced, IntegerOnlyTwistDoesNotDescend) {
  CharacterTwist chi;
  chi.name = "integral-only";
  chi.on_integers = [](const IntMatrix&) { return 1; };
  EXPECT_THROW(induced_mod(Automorphism::character_twist(chi), 3), NonDescending);
  const auto table = table_character("t", 3, {});
  EXPECT_THROW(induced_mod(Automorphism::character_twist(table), 5), NonDescending);
}

TEST(Validate, TauOnSl25) {
  const auto report = validate_automorphism(Automorphism::tau(), build_quotient(GroupFamily::sl(2), 5));
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.exhaustive);
  EXPECT_EQ(report.pairs_checked, 120u * 120u);
}

TEST(Validate, SigmaOnSl32IsTheIdentityMap) {
  const auto g = build_quotient(GroupFamily::sl(3), 2);
  const auto sigma = induced_mod(Automorphism::sigma(), 2);
  EXPECT_TRUE(validate_automorphism(sigma, g).ok());
  const auto images = image_table(sigma, g);
  for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i) EXPECT_EQ(images[i], i);
}

TEST(Validate, ThetaPreservesSp42) {
  EXPECT_TRUE(validate_automorphism(Automorphism::theta(), build_quotient(GroupFamily::sp(4), 2)).ok());
}

TEST(Validate, ThetaLeavesSp43) {
  // J' J0 J' = diag(-j0, j0) differs from J0 once -1 != 1.
  const auto g = build_quotient(GroupFamily::sp(4), 3);
  const auto report = validate_automorphism(Automorphism::theta(), g);
  EXPECT_FALSE(report.closure);
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.first_failure.empty());
  const ModMatrix witness(3, {{0, 0, 0, 1}, {0, 0, 2, 0}, {0, 1, 0, 0}, {2, 0, 0, 0}});
  ASSERT_TRUE(g.find(witness).has_value());
  EXPECT_FALSE(g.find(induced_mod(Automorphism::theta(), 3).apply(witness)).has_value());
}

TEST(Validate, NonHomomorphicTableIsRejected) {
  const auto g = build_quotient(GroupFamily::sl(2), 3);
  std::vector<std::pair<ModMatrix, int>> table;
  for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i) table.emplace_back(g.element(i), i == 1 ? -1 : 1);
  const auto phi = Automorphism::character_twist(table_character("bogus", 3, table));
  const auto report = validate_automorphism(phi, g);
  EXPECT_FALSE(report.ok());
}

TEST(Validate, DeterminantTwistOnGl23) {
  const auto phi = induced_mod(Automorphism::character_twist(determinant_character()), 3);
  EXPECT_TRUE(validate_automorphism(phi, build_quotient(GroupFamily::gl(2), 3)).ok());
}

TEST(Validate, ReportJson) {
  const auto report = validate_automorphism(Automorphism::tau(), build_quotient(GroupFamily::sl(2), 3), 17);
  const auto j = report.to_json();
  EXPECT_EQ(j["seed"], 17);
  EXPECT_EQ(j["closure"], true);
}

TEST(OutRepresentatives, PerFamily) {
  const auto names = [](const std::vector<Automorphism>& v) {
    std::vector<std::string> out;
    for (const auto& a : v) out.push_back(a.descriptor());
    return out;
  };
  EXPECT_EQ(names(out_representatives(GroupFamily::sl(3))), (std::vector<std::string>{"tau"}));
  EXPECT_EQ(names(out_representatives(GroupFamily::sl(4))),
            (std::vector<std::string>{"tau", "sigma", "tau.sigma"}));
  EXPECT_EQ(names(out_representatives(GroupFamily::sp(6))), (std::vector<std::string>{"theta"}));
  const auto chi = index_two_character(build_quotient(GroupFamily::sp(4), 2));
  ASSERT_TRUE(chi.has_value());
  const auto sp4 = out_representatives(GroupFamily::sp(4), chi);
  ASSERT_EQ(sp4.size(), 3u);
  EXPECT_EQ(sp4[0].descriptor(), "theta");
  EXPECT_TRUE(sp4[1].has_character_twist());
  EXPECT_THROW(out_representatives(GroupFamily::sp(4)), UsageError);
}

TEST(Characters, IndexTwoCharacter) {
  const auto sp42 = build_quotient(GroupFamily::sp(4), 2);
  const auto chi = index_two_character(sp42);
  ASSERT_TRUE(chi.has_value());
  std::size_t minus = 0;
  for (FiniteMatrixGroup::Index i = 0; i < sp42.order(); ++i) minus += chi->on_residues(sp42.element(i)) == -1;
  EXPECT_EQ(minus, 360u);
  EXPECT_TRUE(validate_automorphism(Automorphism::character_twist(*chi), sp42).ok());
  // SL(2,5) is perfect: no such character.
  EXPECT_FALSE(index_two_character(build_quotient(GroupFamily::sl(2), 5)).has_value());
}

TEST(Characters, TableFile) {
  const auto dir = scratch_dir();
  const auto path = dir / "sign.json";
  std::ofstream(path) << R"({"n": 1, "modulus": 7, "values": [
    {"matrix": [[1]], "chi": 1}, {"matrix": [[6]], "chi": -1}]})";
  const CharacterTwist chi = load_character_table(path);
  EXPECT_EQ(chi.on_residues(ModMatrix(7, {{6}})), -1);
  EXPECT_THROW(chi.on_residues(ModMatrix(7, {{3}})), LookupError);
  std::ofstream(dir / "bad.json") << R"({"n": 2, "modulus": 7, "values": [{"matrix": [[1, 0], [0]], "chi": 1}]})";
  EXPECT_THROW(load_character_table(dir / "bad.json"), UsageError);
}

TEST(Parse, Descriptors) {
  const auto dir = scratch_dir();
  std::ofstream(dir / "m.v1.json") << R"({"n": 2, "entries": [[1, 1], [0, 1]]})";
  const Automorphism phi = parse_automorphism("tau.inner:m.v1.json.sigma", dir);
  EXPECT_EQ(phi.descriptor(), "tau.inner:m.v1.json.sigma");
  const IntMatrix m = IntMatrix{{1, 1}, {0, 1}};
  const IntMatrix x = b_mat(2);
  EXPECT_EQ(phi.apply(x), Automorphism::tau().apply(m * Automorphism::sigma().apply(x) * inverse(m)));
  EXPECT_TRUE(parse_automorphism("id").is_identity());
  EXPECT_EQ(parse_automorphism("chartwist:det").descriptor(), "chartwist:det");
  for (const char* bad : {"", "tau.", "rho", "inner:", "tau..sigma", "inner:missing.json"})
    EXPECT_THROW(parse_automorphism(bad, dir), UsageError) << bad;
}

TEST(Sandwich, FastPathAgreesWithApply) {
  const auto g = build_quotient(GroupFamily::sl(2), 5);
  std::mt19937_64 rng(4);
  for (const Automorphism& phi :
       {Automorphism::sigma(), Automorphism::theta(), Automorphism::inner(oracle::random_sl(2, 5, rng), "M")}) {
    const Automorphism induced = induced_mod(phi, 5);
    const auto lr = induced.as_sandwich(2, 5);
    ASSERT_TRUE(lr.has_value());
    for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i)
      EXPECT_EQ(lr->first * g.element(i) * lr->second, induced.apply(g.element(i)));
  }
  EXPECT_FALSE(Automorphism::tau().as_sandwich(2, 5).has_value());
}

}  // namespace
}  // namespace twistcc
