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

#include "twistcc/witnesses.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>
#include <sstream>
#include <variant>

#include "twistcc/error.hpp"

namespace twistcc {

std::string witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::kA:
      return "A";
    case WitnessKind::kX:
      return "X";
    case WitnessKind::kAAt:
      return "A_at";
    case WitnessKind::kXAt:
      return "X_at";
  }
  return "?";
}

WitnessKind parse_witness_kind(std::string_view text) {
  if (text == "A") return WitnessKind::kA;
  if (text == "X") return WitnessKind::kX;
  throw UsageError("unknown witness family '" + std::string(text) + "' (expected A or X)");
}

IntMatrix make_witness(WitnessKind kind, std::size_t n, const Integer& k, std::size_t i,
                       std::size_t j) {
  if (n < 2) throw UsageError("witness dimension must be at least 2");
  if (kind == WitnessKind::kA || kind == WitnessKind::kX) {
    i = 0;
    j = 1;
  }
  if (i >= n || j >= n || i == j) {
    throw UsageError("witness indices must be distinct and below " + std::to_string(n));
  }
  IntMatrix w = IntMatrix::identity(n);
  if (kind == WitnessKind::kA || kind == WitnessKind::kAAt) {
    w(j, i) = k;
  } else {
    w(i, i) += k * k;
    w(i, j) = k;
    w(j, i) = k;
  }
  return w;
}

bool tau_action_identity_check(const IntMatrix& x, const Integer& k) {
  const std::size_t n = x.dim();
  const IntMatrix xt = transpose(x);
  const IntMatrix lhs = x * make_witness(WitnessKind::kA, n, k) * xt;
  const std::vector<Integer> c1 = column(x, 0);
  const std::vector<Integer> c2 = column(x, 1);
  const IntMatrix rhs = x * xt + k * outer_product(c2, c1);
  return lhs == rhs;
}

std::int64_t default_search_bound(std::size_t n) {
  if (n == 2) return 6;
  if (n == 3) return 2;
  throw UsageError("no default search bound for n = " + std::to_string(n));
}

namespace {

std::int64_t det_small(const std::int64_t* a, std::size_t n) {
  switch (n) {
    case 1:
      return a[0];
    case 2:
      return a[0] * a[3] - a[1] * a[2];
    case 3:
      return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
             a[2] * (a[3] * a[7] - a[4] * a[6]);
    default: {
      std::int64_t total = 0;
      std::array<std::int64_t, 9> minor{};
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = 0;
        for (std::size_t r = 1; r < n; ++r)
          for (std::size_t cc = 0; cc < n; ++cc)
            if (cc != c) minor[p++] = a[r * n + cc];
        const std::int64_t sub = det_small(minor.data(), n - 1);
        total += (c % 2 == 0 ? 1 : -1) * a[c] * sub;
      }
      return total;
    }
  }
}

}  // namespace

SearchReport tau_no_solution_oracle(std::int64_t k, std::int64_t l, std::size_t n,
                                    std::int64_t bound, std::uint64_t cap) {
  if (k < 1 || l < 1) throw UsageError("search parameters k and l must be positive");
  if (n < 2 || n > 4) throw UsageError("search dimension must be 2, 3 or 4");
  if (bound < 0) throw UsageError("search bound must be non-negative");

  // Every intermediate below is bounded by n^2 B^2 (1 + max(k, l)) or n! B^n;
  // refuse anything that could leave 62 bits rather than risk wraparound.
  const long double limit = 4.0e18L;
  const long double b = static_cast<long double>(bound);
  const long double kl = static_cast<long double>(std::max(k, l));
  const long double nn = static_cast<long double>(n);
  if (nn * nn * b * b * (1 + kl) >= limit || 24.0L * b * b * b * b >= limit) {
    throw UsageError("search bound too large for the 64-bit search");
  }

  const std::uint64_t side = static_cast<std::uint64_t>(2 * bound + 1);
  const std::size_t cells = n * n;
  std::uint64_t total = 1;
  for (std::size_t c = 0; c < cells; ++c) {
    if (total > cap / side) {
      throw ResourceLimit(static_cast<std::size_t>(cap),
                          "search space exceeds the cap of " + std::to_string(cap) + " tuples");
    }
    total *= side;
  }

  SearchReport report;
  std::array<std::int64_t, 16> x{};
  std::array<std::int64_t, 16> xa{};
  std::fill_n(x.begin(), cells, -bound);
  for (std::uint64_t t = 0; t < total; ++t) {
    ++report.tuples_enumerated;
    if (det_small(x.data(), n) == 1) {
      ++report.candidates_tested;
      // X A(k): column 0 gains k times column 1.
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) xa[r * n + c] = x[r * n + c];
        xa[r * n] += k * x[r * n + 1];
      }
      bool match = true;
      for (std::size_t r = 0; r < n && match; ++r) {
        for (std::size_t c = 0; c < n && match; ++c) {
          std::int64_t v = 0;
          for (std::size_t s = 0; s < n; ++s) v += xa[r * n + s] * x[c * n + s];
          const std::int64_t want = (r == c ? 1 : 0) + (r == 1 && c == 0 ? l : 0);
          match = v == want;
        }
      }
      if (match) {
        if (!report.first_solution) {
          std::vector<Integer> entries(x.begin(), x.begin() + cells);
          report.first_solution = IntMatrix(n, std::move(entries));
        }
        ++report.solutions;
        bool is_identity = true;
        for (std::size_t c = 0; c < cells; ++c)
          is_identity = is_identity && x[c] == (c % (n + 1) == 0 ? 1 : 0);
        report.identity_found = report.identity_found || is_identity;
      }
    }
    for (std::size_t c = cells; c-- > 0;) {
      if (x[c] < bound) {
        ++x[c];
        break;
      }
      x[c] = -bound;
    }
  }
  return report;
}

std::vector<IntMatrix> separating_family(const IntMatrix& m_mat, Modulus level, std::size_t count) {
  const std::size_t n = m_mat.dim();
  if (n < 3) throw UsageError("separating_family needs n >= 3");
  if (level < 2) throw UsageError("level must be at least 2");
  if (count < 1) throw UsageError("count must be at least 1");
  if (det(m_mat) != 1) throw UsageError("M must have determinant 1");

  const Integer mod = level;
  std::vector<IntMatrix> out;
  out.reserve(count);

  std::size_t diag = n;
  for (std::size_t i = 0; i < n && diag == n; ++i)
    if (m_mat(i, i) != 0) diag = i;

  if (diag < n) {
    const std::size_t i = diag;
    const std::size_t j = i == 0 ? 1 : 0;
    const Integer s = m_mat(i, j) + m_mat(j, i);
    const Integer mii = m_mat(i, i);
    const Integer abs_s = s < 0 ? Integer(-s) : s;
    const Integer abs_mii = mii < 0 ? Integer(-mii) : mii;
    const Integer k0 = abs_s / (mod * abs_mii) + 1;
    std::vector<Integer> ks;
    for (std::size_t t = 0; t < count; ++t) ks.push_back(k0 + t);
    // Two witnesses collide exactly when m (k + l) m_ii + m_ij + m_ji = 0.
    for (std::size_t a = 0; a < ks.size(); ++a)
      for (std::size_t b = a + 1; b < ks.size(); ++b)
        if (mod * (ks[a] + ks[b]) * mii + s == 0)
          throw std::logic_error("separating_family: collision condition violated");
    for (const Integer& k : ks) out.push_back(make_witness(WitnessKind::kXAt, n, mod * k, i, j));
  } else {
    std::size_t pi = n, pj = n;
    for (std::size_t i = 0; i < n && pi == n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && m_mat(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == n) throw std::logic_error("separating_family: no nonzero off-diagonal entry");
    for (std::size_t t = 1; t <= count; ++t)
      out.push_back(make_witness(WitnessKind::kAAt, n, mod * Integer(t), pi, pj));
  }

  std::set<Integer> traces;
  for (const IntMatrix& w : out) traces.insert(trace(w * m_mat));
  if (traces.size() != out.size())
    throw std::logic_error("separating_family: traces are not pairwise distinct");
  return out;
}

namespace {

// Plain JSON numbers while they fit, decimal strings beyond 64 bits.
nlohmann::ordered_json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

}  // namespace

nlohmann::ordered_json DistinctnessCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["automorphism"] = automorphism;
  j["n"] = n;
  j["k"] = integer_json(k);
  j["l"] = integer_json(l);
  j["modulus"] = modulus ? nlohmann::ordered_json(*modulus) : nlohmann::ordered_json(nullptr);
  if (class_ids) {
    j["class_ids"] = {class_ids->first, class_ids->second};
  } else {
    j["class_ids"] = nullptr;
  }
  j["verdict"] = verdict;
  auto& tried = j["attempts"] = nlohmann::ordered_json::array();
  for (const ModulusAttempt& a : attempts) {
    nlohmann::ordered_json e;
    e["modulus"] = a.modulus;
    e["outcome"] = a.outcome;
    if (a.class_ids) e["class_ids"] = {a.class_ids->first, a.class_ids->second};
    if (!a.detail.empty()) e["detail"] = a.detail;
    tried.push_back(std::move(e));
  }
  return j;
}

namespace {

bool involves_theta(const Automorphism& phi) {
  for (const Primitive& p : phi.chain())
    if (std::holds_alternative<primitive::ConjBySwap>(p)) return true;
  return false;
}

// Descriptor plus the conjugator entries, so two inner maps sharing a label
// never share a cache slot.
std::string fingerprint(const Automorphism& phi) {
  std::ostringstream out;
  out << phi.descriptor();
  for (const Primitive& p : phi.chain()) {
    if (const auto* inner = std::get_if<primitive::Inner>(&p)) {
      out << '|';
      std::visit([&](const auto& m) { out << m.to_string(); }, inner->conjugator);
    }
  }
  return out.str();
}

}  // namespace

Certifier::Entry& Certifier::quotient(FamilyKind kind, std::size_t n, Modulus m,
                                      const Automorphism& phi, std::size_t cap,
                                      std::uint64_t seed) {
  const auto key = std::make_tuple(static_cast<int>(kind), n, m, fingerprint(phi));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  // Share the group with any other automorphism already seen at this size.
  std::shared_ptr<const FiniteMatrixGroup> group;
  for (auto& [k, entry] : cache_) {
    if (std::get<0>(k) == static_cast<int>(kind) && std::get<1>(k) == n && std::get<2>(k) == m) {
      group = entry.group;
      break;
    }
  }
  if (!group) {
    const GroupFamily family = kind == FamilyKind::kSp   ? GroupFamily::sp(n)
                               : kind == FamilyKind::kGL ? GroupFamily::gl(n)
                                                         : GroupFamily::sl(n);
    group = std::make_shared<const FiniteMatrixGroup>(build_quotient(family, m, cap));
  }

  Entry entry;
  entry.group = std::move(group);
  const Automorphism induced = induced_mod(phi, m);
  const ValidationReport report = validate_automorphism(induced, *entry.group, seed);
  if (report.ok()) {
    entry.partition = std::make_unique<TwistedPartition>(
        twisted_partition_unchecked(*entry.group, induced));
  } else {
    entry.rejected = report;
  }
  return cache_.emplace(key, std::move(entry)).first->second;
}

DistinctnessCertificate Certifier::certify(const CertifyRequest& request) {
  if (request.family != WitnessKind::kA && request.family != WitnessKind::kX)
    throw UsageError("certificates use the A or X family");
  if (request.moduli.empty()) throw UsageError("at least one modulus is required");

  const FamilyKind kind =
      request.group_kind.value_or(involves_theta(request.phi) ? FamilyKind::kSp : FamilyKind::kSL);
  const IntMatrix wk = make_witness(request.family, request.n, request.k);
  const IntMatrix wl = make_witness(request.family, request.n, request.l);

  DistinctnessCertificate cert;
  cert.family = witness_kind_name(request.family);
  cert.automorphism = request.phi.descriptor();
  cert.n = request.n;
  cert.k = request.k;
  cert.l = request.l;
  cert.verdict = "inconclusive";

  for (const Modulus m : request.moduli) {
    if (m < 2) throw UsageError("moduli must be at least 2");
    ModulusAttempt attempt;
    attempt.modulus = m;
    const ModMatrix xk = reduce_mod(wk, m);
    const ModMatrix xl = reduce_mod(wl, m);
    if (xk == xl) {
      attempt.outcome = request.k == request.l ? "identical-witnesses" : "identical-residues";
      cert.attempts.push_back(std::move(attempt));
      continue;
    }
    Entry& entry = quotient(kind, request.n, m, request.phi, request.element_cap, request.seed);
    if (entry.rejected) {
      attempt.outcome = "invalid-automorphism";
      attempt.detail = entry.rejected->first_failure;
      cert.attempts.push_back(std::move(attempt));
      continue;
    }
    const auto ik = entry.group->find(xk);
    const auto il = entry.group->find(xl);
    if (!ik || !il) {
      attempt.outcome = "witness-outside-group";
      cert.attempts.push_back(std::move(attempt));
      continue;
    }
    const std::pair<std::uint32_t, std::uint32_t> ids{entry.partition->class_of(*ik),
                                                      entry.partition->class_of(*il)};
    attempt.class_ids = ids;
    if (ids.first != ids.second) {
      attempt.outcome = "distinct";
      cert.attempts.push_back(std::move(attempt));
      cert.modulus = m;
      cert.class_ids = ids;
      cert.verdict = "distinct";
      return cert;
    }
    attempt.outcome = "same-class";
    cert.attempts.push_back(std::move(attempt));
  }
  return cert;
}

DistinctnessCertificate certify_distinct(const CertifyRequest& request) {
  Certifier certifier;
  return certifier.certify(request);
}

}  // namespace twistcc
