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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "twistcc/automorphism.hpp"
#include "twistcc/error.hpp"
#include "twistcc/groups.hpp"
#include "twistcc/oracles.hpp"
#include "twistcc/orbits.hpp"
#include "twistcc/verify.hpp"
#include "twistcc/witnesses.hpp"

namespace {

using namespace twistcc;

constexpr std::uint64_t kSeed = 20261016;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Folds a list of checks into one outcome, naming the failures.
Outcome fold(const verify::Checks& checks) {
  Outcome o{true, {}};
  std::size_t failed = 0;
  for (const auto& c : checks) {
    if (c.pass) continue;
    o.pass = false;
    ++failed;
    o.detail += "[" + c.name + ": " + c.detail + "] ";
  }
  o.detail = std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " checks" +
             (failed ? "; failing " + o.detail : "");
  return o;
}

Outcome order_formulas() {
  const auto start = Clock::now();
  struct Case {
    GroupFamily family;
    Modulus m;
    std::size_t want;
  };
  const std::vector<Case> cases = {{GroupFamily::sl(2), 3, 24},
                                   {GroupFamily::sl(2), 5, 120},
                                   {GroupFamily::sl(3), 2, 168},
                                   {GroupFamily::sp(4), 2, 720},
                                   {GroupFamily::sp(4), 3, 51840}};
  Outcome o{true, {}};
  for (const Case& c : cases) {
    const auto g = build_quotient(c.family, c.m);
    const auto formula = classical_order(c.family, c.m);
    const bool ok = g.order() == c.want && formula && *formula == c.want;
    o.pass = o.pass && ok;
    o.detail += GroupDescriptor{c.family, c.m}.str() + "=" + std::to_string(g.order()) + " ";
  }
  const double t = seconds_since(start);
  o.pass = o.pass && t < 60.0;
  o.detail += "in " + std::to_string(t) + " s";
  return o;
}

Outcome certificates() {
  const auto start = Clock::now();
  Certifier certifier;
  Outcome o{true, {}};
  std::size_t issued = 0, total = 0;
  for (std::size_t n : {2, 3}) {
    for (int k = 1; k <= 4; ++k) {
      for (int l = 1; l <= 4; ++l) {
        if (k == l) continue;
        CertifyRequest req;
        req.phi = Automorphism::tau();
        req.n = n;
        req.k = k;
        req.l = l;
        req.moduli = {3, 5, 7, 11};
        // SL(3, Z/7) has 5,630,688 elements.
        req.element_cap = 6'000'000;
        req.seed = kSeed;
        ++total;
        const auto cert = certifier.certify(req);
        if (cert.distinct()) {
          ++issued;
        } else {
          o.pass = false;
          o.detail += "n=" + std::to_string(n) + " (" + std::to_string(k) + "," + std::to_string(l) +
                      ") inconclusive; ";
        }
      }
    }
  }
  const double t = seconds_since(start);
  o.pass = o.pass && t < 120.0;
  o.detail += std::to_string(issued) + "/" + std::to_string(total) + " distinct in " + std::to_string(t) + " s";
  return o;
}

Outcome no_solution() {
  const auto start = Clock::now();
  Outcome o = fold(verify::no_solution_checks());
  const double t = seconds_since(start);
  o.pass = o.pass && t < 120.0;
  o.detail += " in " + std::to_string(t) + " s";
  return o;
}

Outcome inner_conjugacy() {
  Outcome o = fold(verify::inner_conjugacy_checks(kSeed));
  // The class number of SL(2, Z/3) itself, from the double-loop oracle.
  const auto elements =
      oracle::enumerate_members(2, 3, [](const ModMatrix& x) { return det_mod(x) == 1; });
  const std::size_t classes =
      oracle::class_count(oracle::twisted_classes(elements, [](const ModMatrix& x) { return x; }));
  if (classes != 7) o.pass = false;
  o.detail += "; SL(2,3) class number " + std::to_string(classes);
  return o;
}

std::string trim_run(const std::string& binary, const std::string& args, int& status) {
  const std::string cmd = "'" + binary + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return {};
  }
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

Outcome determinism(const std::string& binary) {
  const std::vector<std::string> commands = {
      "quotient --group sp:4:3",
      "quotient --group gl:2:5 --format text",
      "reidemeister --group sl:2:5 --aut tau --seed 7",
      "reidemeister --group sp:4:2 --aut theta --format text",
      "reidemeister --group gl:2:3 --aut chartwist:det",
      "certify --family A --aut tau --n 2 --k 1 --l 2 --moduli 3,5,7",
      "certify --family X --aut theta --n 4 --k 1 --l 2 --moduli 3",
      "verify --suite lemmas --seed 11",
      "verify --suite brauer --seed 3 --format text",
      "quotient --group sl:3:7 --element-cap 1000",
  };
  Outcome o{true, {}};
  for (const auto& c : commands) {
    int s1 = 0, s2 = 0;
    const std::string a = trim_run(binary, c, s1);
    const std::string b = trim_run(binary, c, s2);
    if (a != b || s1 != s2 || a.empty()) {
      o.pass = false;
      o.detail += "differs: " + c + "; ";
    }
  }
  o.detail += std::to_string(commands.size()) + " commands run twice";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "twistcc";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"order formulas", order_formulas},
      {"algebraic identities", [] { return fold(verify::identity_checks(kSeed)); }},
      {"witness separation certificates", certificates},
      {"brute-force no-solution oracle", no_solution},
      {"union-find vs double-loop partitions", [] { return fold(verify::oracle_equivalence_checks(kSeed)); }},
      {"inner twist equals conjugacy", inner_conjugacy},
      {"fiber bounds", [] { return fold(verify::fiber_bound_checks(kSeed)); }},
      {"character-twist fusion on GL(2,3)",
       [] {
         // Only the equality check belongs to this criterion.
         auto checks = verify::character_fusion_checks();
         checks.resize(1);
         return fold(checks);
       }},
      {"separating family", [] { return fold(verify::separating_family_checks(kSeed)); }},
      {"CLI determinism", [&] { return determinism(binary); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failures == 0 ? 0 : 1;
}
