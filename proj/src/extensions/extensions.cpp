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

#include "twistcc/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "twistcc/error.hpp"

namespace twistcc {

namespace {

using Index = FiniteMatrixGroup::Index;
constexpr std::uint32_t kUnset = UINT32_MAX;

std::vector<Index> right_table(const FiniteMatrixGroup& g, Index s) {
  const ModMatrix m = g.element(s);
  return g.sandwich_indices(nullptr, &m);
}

std::vector<Index> left_table(const FiniteMatrixGroup& g, Index s) {
  const ModMatrix m = g.element(s);
  return g.sandwich_indices(&m, nullptr);
}

std::string pair_text(const FiniteMatrixGroup& g, Index a, Index b) {
  return g.element(a).to_string() + " , " + g.element(b).to_string();
}

void fill_inverses(TableGroup& t) {
  t.inverses.assign(t.order, kUnset);
  for (std::uint32_t a = 0; a < t.order; ++a)
    for (std::uint32_t b = 0; b < t.order; ++b)
      if (t.mul(a, b) == t.identity) {
        t.inverses[a] = b;
        break;
      }
}

}  // namespace

std::uint32_t FiniteExtension::kernel_position(Index x) const {
  const std::uint32_t p = kernel_pos_.at(x);
  if (p == kNone) throw LookupError("element is not in the kernel");
  return p;
}

std::vector<std::vector<FiniteExtension::Index>> FiniteExtension::cosets() const {
  std::vector<std::vector<Index>> out(reps_.size());
  for (Index x = 0; x < coset_of_.size(); ++x) out[coset_of_[x]].push_back(x);
  return out;
}

FiniteExtension build_extension(const FiniteMatrixGroup& g,
                                const std::function<bool(const ModMatrix&)>& predicate) {
  const std::size_t order = g.order();
  FiniteExtension e;
  e.total_ = &g;
  e.kernel_pos_.assign(order, FiniteExtension::kNone);
  for (Index x = 0; x < order; ++x) {
    if (predicate(g.element(x))) {
      e.kernel_pos_[x] = static_cast<std::uint32_t>(e.kernel_.size());
      e.kernel_.push_back(x);
    }
  }
  const Index id = g.identity();
  if (!e.in_kernel(id)) {
    throw NotASubgroup(g.element(id).to_string(), "kernel does not contain the identity");
  }

  // Greedy generating set: each kernel element outside the current span is
  // added, and the span is recomputed by closing under right multiplication.
  // A product escaping the kernel disproves closure.
  std::vector<std::vector<Index>> gen_tables;
  std::vector<char> span(order, 0);
  for (const Index x : e.kernel_) {
    if (span[x]) continue;
    e.kernel_gens_.push_back(x);
    gen_tables.push_back(right_table(g, x));
    std::fill(span.begin(), span.end(), 0);
    std::vector<Index> frontier{id};
    span[id] = 1;
    while (!frontier.empty()) {
      const Index h = frontier.back();
      frontier.pop_back();
      for (std::size_t s = 0; s < gen_tables.size(); ++s) {
        const Index y = gen_tables[s][h];
        if (!e.in_kernel(y)) {
          throw NotASubgroup(pair_text(g, h, e.kernel_gens_[s]),
                             "kernel is not closed under multiplication");
        }
        if (!span[y]) {
          span[y] = 1;
          frontier.push_back(y);
        }
      }
    }
  }

  for (const Index s : g.generators()) {
    const ModMatrix sm = g.element(s);
    const ModMatrix si = g.element(g.inverse_of(s));
    const std::vector<Index> conj = g.sandwich_indices(&sm, &si);
    for (const Index n : e.kernel_) {
      if (conj[n] == FiniteMatrixGroup::kNotFound || !e.in_kernel(conj[n])) {
        throw NotNormal(pair_text(g, s, n), "kernel is not normal");
      }
    }
  }

  // Cosets xN as right-multiplication orbits under the kernel generators.
  e.coset_of_.assign(order, kUnset);
  for (Index x = 0; x < order; ++x) {
    if (e.coset_of_[x] != kUnset) continue;
    const auto c = static_cast<std::uint32_t>(e.reps_.size());
    e.reps_.push_back(x);
    std::vector<Index> frontier{x};
    e.coset_of_[x] = c;
    while (!frontier.empty()) {
      const Index h = frontier.back();
      frontier.pop_back();
      for (const auto& t : gen_tables) {
        const Index y = t[h];
        if (e.coset_of_[y] == kUnset) {
          e.coset_of_[y] = c;
          frontier.push_back(y);
        }
      }
    }
  }

  const std::size_t q = e.reps_.size();
  if (q * e.kernel_.size() != order) throw std::logic_error("coset sizes do not multiply out");
  if (q > kMaxTableOrder) {
    throw ResourceLimit(q, "quotient of order " + std::to_string(q) + " is too large to tabulate");
  }

  TableGroup& t = e.quotient_;
  t.order = q;
  t.table.assign(q * q, kUnset);
  for (std::uint32_t a = 0; a < q; ++a) {
    const std::vector<Index> lt = left_table(g, e.reps_[a]);
    for (Index x = 0; x < order; ++x) {
      std::uint32_t& cell = t.table[a * q + e.coset_of_[x]];
      const std::uint32_t c = e.coset_of_[lt[x]];
      if (cell == kUnset) {
        cell = c;
      } else if (cell != c) {
        throw std::logic_error("coset multiplication is not well defined");
      }
    }
  }
  for (std::uint32_t b = 0; b < q; ++b) {
    const std::vector<Index> rt = right_table(g, e.reps_[b]);
    for (Index x = 0; x < order; ++x) {
      if (t.table[e.coset_of_[x] * q + b] != e.coset_of_[rt[x]])
        throw std::logic_error("coset multiplication is not well defined");
    }
  }
  t.identity = e.coset_of_[id];
  fill_inverses(t);
  for (const Index s : g.generators()) {
    const std::uint32_t c = e.coset_of_[s];
    if (c != t.identity && std::find(t.generators.begin(), t.generators.end(), c) == t.generators.end())
      t.generators.push_back(c);
  }
  return e;
}

bool is_table_automorphism(const TableGroup& g, std::span<const std::uint32_t> phi) {
  if (phi.size() != g.order) return false;
  std::vector<char> hit(g.order, 0);
  for (const std::uint32_t v : phi) {
    if (v >= g.order || hit[v]) return false;
    hit[v] = 1;
  }
  for (std::uint32_t a = 0; a < g.order; ++a)
    for (std::uint32_t b = 0; b < g.order; ++b)
      if (phi[g.mul(a, b)] != g.mul(phi[a], phi[b])) return false;
  return true;
}

Descent restrict_and_descend(const FiniteExtension& e, const Automorphism& phi,
                             std::uint64_t seed) {
  const FiniteMatrixGroup& g = e.total();
  ValidationReport report = validate_automorphism(phi, g, seed);
  if (!report.ok()) {
    throw InvalidAutomorphism(report, "automorphism is not valid on the total group: " +
                                          report.first_failure);
  }

  Descent d;
  d.image = image_table(phi, g);
  for (const Index n : e.kernel()) {
    if (!e.in_kernel(d.image[n])) {
      throw NotInvariant(g.element(n).to_string(), "phi does not preserve the kernel");
    }
  }

  const std::size_t k = e.kernel_size();
  if (k > kMaxTableOrder) {
    throw ResourceLimit(k, "kernel of order " + std::to_string(k) + " is too large to tabulate");
  }
  TableGroup& kg = d.kernel_group;
  kg.order = k;
  kg.table.resize(k * k);
  for (std::uint32_t a = 0; a < k; ++a) {
    const std::vector<Index> lt = left_table(g, e.kernel()[a]);
    for (std::uint32_t b = 0; b < k; ++b) kg.table[a * k + b] = e.kernel_position(lt[e.kernel()[b]]);
  }
  kg.identity = e.kernel_position(g.identity());
  fill_inverses(kg);
  for (const Index s : e.kernel_generators()) kg.generators.push_back(e.kernel_position(s));

  d.on_kernel.resize(k);
  for (std::uint32_t p = 0; p < k; ++p) d.on_kernel[p] = e.kernel_position(d.image[e.kernel()[p]]);

  const auto reps = e.coset_representatives();
  d.on_quotient.resize(reps.size());
  for (std::uint32_t a = 0; a < reps.size(); ++a) d.on_quotient[a] = e.coset_of(d.image[reps[a]]);
  for (Index x = 0; x < g.order(); ++x) {
    if (e.coset_of(d.image[x]) != d.on_quotient[e.coset_of(x)])
      throw std::logic_error("induced map on cosets is not well defined");
  }

  if (!is_table_automorphism(kg, d.on_kernel))
    throw std::logic_error("restriction to the kernel is not an automorphism");
  if (!is_table_automorphism(e.quotient(), d.on_quotient))
    throw std::logic_error("induced map on the quotient is not an automorphism");
  return d;
}

nlohmann::ordered_json BoundsReport::to_json() const {
  nlohmann::ordered_json j;
  j["R_total"] = r_total;
  j["R_quotient"] = r_quotient;
  j["R_kernel"] = r_kernel;
  j["kernel_size"] = kernel_size;
  j["index"] = index;
  j["max_fiber_eta"] = max_fiber_eta;
  j["max_fiber_j"] = max_fiber_j;
  j["bounds_hold"] = bounds_hold;
  return j;
}

BoundsReport fiber_bounds_check(const FiniteExtension& e, const Automorphism& phi,
                                std::uint64_t seed) {
  const Descent d = restrict_and_descend(e, phi, seed);
  const FiniteMatrixGroup& g = e.total();
  const TwistedPartition total = twisted_partition_unchecked(g, phi);
  const ClassLabels quotient = twisted_classes(e.quotient(), d.on_quotient);
  const ClassLabels kernel = twisted_classes(d.kernel_group, d.on_kernel);

  BoundsReport r;
  r.r_total = total.reidemeister_number();
  r.r_quotient = quotient.count();
  r.r_kernel = kernel.count();
  r.kernel_size = e.kernel_size();
  r.index = e.index();

  // eta~: [x] -> [xN].
  std::vector<std::uint32_t> eta(r.r_total, kUnset);
  r.eta_well_defined = true;
  for (Index x = 0; x < g.order(); ++x) {
    const std::uint32_t q = quotient.class_of[e.coset_of(x)];
    std::uint32_t& slot = eta[total.class_of(x)];
    if (slot == kUnset) {
      slot = q;
    } else if (slot != q) {
      r.eta_well_defined = false;
    }
  }
  std::vector<std::size_t> eta_fiber(r.r_quotient, 0);
  for (const std::uint32_t q : eta) ++eta_fiber[q];
  r.eta_surjective = std::find(eta_fiber.begin(), eta_fiber.end(), 0) == eta_fiber.end();
  r.max_fiber_eta = *std::max_element(eta_fiber.begin(), eta_fiber.end());

  // j: [n]_{phi|N} -> [n]_phi.
  std::vector<std::uint32_t> jmap(r.r_kernel, kUnset);
  r.j_well_defined = true;
  for (std::uint32_t p = 0; p < e.kernel_size(); ++p) {
    const std::uint32_t c = total.class_of(e.kernel()[p]);
    std::uint32_t& slot = jmap[kernel.class_of[p]];
    if (slot == kUnset) {
      slot = c;
    } else if (slot != c) {
      r.j_well_defined = false;
    }
  }
  std::vector<std::size_t> j_fiber(r.r_total, 0);
  for (const std::uint32_t c : jmap) ++j_fiber[c];
  r.max_fiber_j = *std::max_element(j_fiber.begin(), j_fiber.end());

  r.bounds_hold = r.eta_well_defined && r.eta_surjective && r.j_well_defined &&
                  r.r_quotient <= r.r_total && r.r_total <= r.kernel_size * r.r_quotient &&
                  r.r_kernel <= r.index * r.r_total && r.max_fiber_eta <= r.kernel_size &&
                  r.max_fiber_j <= r.index;
  return r;
}

std::size_t conjugacy_class_count(const FiniteMatrixGroup& g) {
  return twisted_partition_unchecked(g, Automorphism::identity()).reidemeister_number();
}

bool inner_equals_conjugacy_check(const FiniteMatrixGroup& g, Index gamma, std::uint64_t seed) {
  const ModMatrix gm = g.element(gamma);
  const TwistedPartition twisted = twisted_partition(g, Automorphism::inner(gm, "gamma"), seed);
  const TwistedPartition conj = twisted_partition_unchecked(g, Automorphism::identity());
  const std::vector<Index> times_gamma = g.sandwich_indices(nullptr, &gm);

  // The class map [x] -> [x gamma] must be a well-defined bijection.
  std::vector<std::uint32_t> to_conj(twisted.reidemeister_number(), kUnset);
  for (Index x = 0; x < g.order(); ++x) {
    const std::uint32_t c = conj.class_of(times_gamma[x]);
    std::uint32_t& slot = to_conj[twisted.class_of(x)];
    if (slot == kUnset) {
      slot = c;
    } else if (slot != c) {
      return false;
    }
  }
  std::vector<char> hit(conj.reidemeister_number(), 0);
  for (const std::uint32_t c : to_conj) {
    if (hit[c]) return false;
    hit[c] = 1;
  }
  if (to_conj.size() != hit.size()) return false;

  auto agree = [&](Index x, Index y) {
    return (twisted.class_of(x) == twisted.class_of(y)) ==
           (conj.class_of(times_gamma[x]) == conj.class_of(times_gamma[y]));
  };
  const auto order = static_cast<Index>(g.order());
  if (order <= 500) {
    for (Index x = 0; x < order; ++x)
      for (Index y = 0; y < order; ++y)
        if (!agree(x, y)) return false;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(0, order - 1);
    for (int t = 0; t < 100000; ++t)
      if (!agree(pick(rng), pick(rng))) return false;
  }
  return true;
}

bool brauer_bound_check(const FiniteMatrixGroup& g) {
  if (g.order() < 3) throw UsageError("the class-number bound needs a group of order >= 3");
  const double bound = std::log(std::log(static_cast<double>(g.order())));
  return static_cast<double>(conjugacy_class_count(g)) >= bound;
}

}  // namespace twistcc
