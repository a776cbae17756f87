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

#include "twistcc/automorphism.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "twistcc/error.hpp"
#include "twistcc/matrix_io.hpp"

namespace twistcc {

namespace {

constexpr std::size_t kExhaustivePairLimit = 2000;
constexpr std::size_t kSampledPairs = 100'000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <class M>
M flip_last(const M& x);

template <>
IntMatrix flip_last(const IntMatrix& x) {
  IntMatrix out = x;
  const std::size_t n = x.dim(), last = n - 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == last) continue;
    out(last, k) = -out(last, k);
    out(k, last) = -out(k, last);
  }
  return out;
}

template <>
ModMatrix flip_last(const ModMatrix& x) {
  ModMatrix out = x;
  const std::size_t n = x.dim(), last = n - 1;
  const auto m = static_cast<std::int64_t>(x.modulus());
  for (std::size_t k = 0; k < n; ++k) {
    if (k == last) continue;
    out.set(last, k, m - static_cast<std::int64_t>(x(last, k)));
    out.set(k, last, m - static_cast<std::int64_t>(x(k, last)));
  }
  return out;
}

IntMatrix swap_first_two(const IntMatrix& x) {
  if (x.dim() < 2) throw UsageError("theta needs dimension >= 2");
  IntMatrix out(x.dim());
  auto p = [](std::size_t i) { return i < 2 ? 1 - i : i; };
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j) out(i, j) = x(p(i), p(j));
  return out;
}

ModMatrix swap_first_two(const ModMatrix& x) {
  if (x.dim() < 2) throw UsageError("theta needs dimension >= 2");
  ModMatrix out(x.dim(), x.modulus());
  auto p = [](std::size_t i) { return i < 2 ? 1 - i : i; };
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j)
      out.set(i, j, static_cast<std::int64_t>(x(p(i), p(j))));
  return out;
}

ModMatrix as_mod(const std::variant<IntMatrix, ModMatrix>& v, Modulus m) {
  if (const auto* im = std::get_if<IntMatrix>(&v)) return reduce_mod(*im, m);
  const auto& mm = std::get<ModMatrix>(v);
  if (mm.modulus() != m) {
    throw UsageError("inner: conjugator modulus " + std::to_string(mm.modulus()) +
                     " does not match element modulus " + std::to_string(m));
  }
  return mm;
}

void check_sign(int s, const std::string& name) {
  if (s != 1 && s != -1) {
    throw std::domain_error("character " + name + " returned " + std::to_string(s) +
                            ", expected +1 or -1");
  }
}

std::string primitive_descriptor(const Primitive& p) {
  return std::visit(Overloaded{
                        [](const primitive::Inner& i) { return "inner:" + i.label; },
                        [](const primitive::TransposeInverse&) { return std::string("tau"); },
                        [](const primitive::ConjByJ&) { return std::string("sigma"); },
                        [](const primitive::ConjBySwap&) { return std::string("theta"); },
                        [](const CharacterTwist& c) { return "chartwist:" + c.name; },
                    },
                    p);
}

template <class M>
M apply_primitive(const Primitive& p, const M& x) {
  return std::visit(
      Overloaded{
          [&](const primitive::Inner& i) -> M {
            if constexpr (std::is_same_v<M, IntMatrix>) {
              const auto* c = std::get_if<IntMatrix>(&i.conjugator);
              if (c == nullptr) throw UsageError("inner: residue conjugator applied over Z");
              return *c * x * std::get<IntMatrix>(i.conjugator_inverse);
            } else {
              return as_mod(i.conjugator, x.modulus()) * x *
                     as_mod(i.conjugator_inverse, x.modulus());
            }
          },
          [&](const primitive::TransposeInverse&) -> M { return transpose(inverse(x)); },
          [&](const primitive::ConjByJ&) -> M { return flip_last(x); },
          [&](const primitive::ConjBySwap&) -> M { return swap_first_two(x); },
          [&](const CharacterTwist& c) -> M {
            int s = 0;
            if constexpr (std::is_same_v<M, IntMatrix>) {
              if (!c.on_integers) throw NonDescending("character " + c.name + " undefined over Z");
              s = c.on_integers(x);
              check_sign(s, c.name);
              return s == 1 ? x : -x;
            } else {
              if (!c.on_residues || (c.modulus && *c.modulus != x.modulus())) {
                throw NonDescending("character " + c.name + " undefined mod " +
                                    std::to_string(x.modulus()));
              }
              s = c.on_residues(x);
              check_sign(s, c.name);
              return s == 1 ? x : -x;
            }
          },
      },
      p);
}

ModMatrix j_matrix(std::size_t n, Modulus m) {
  ModMatrix j = ModMatrix::identity(n, m);
  j.set(n - 1, n - 1, -1);
  return j;
}

ModMatrix swap_matrix(std::size_t n, Modulus m) {
  if (n < 2) throw UsageError("theta needs dimension >= 2");
  ModMatrix j = ModMatrix::identity(n, m);
  j.set(0, 0, 0);
  j.set(1, 1, 0);
  j.set(0, 1, 1);
  j.set(1, 0, 1);
  return j;
}

using Key = std::vector<Residue>;

Key entries_key(const ModMatrix& x) { return {x.entries().begin(), x.entries().end()}; }

}  // namespace

Automorphism Automorphism::inner(const IntMatrix& m, std::string label) {
  IntMatrix inv = inverse(m);
  if (label.empty()) label = m.to_string();
  return Automorphism(primitive::Inner{m, std::move(inv), std::move(label)});
}

Automorphism Automorphism::inner(const ModMatrix& m, std::string label) {
  ModMatrix inv = inverse(m);
  if (label.empty()) label = m.to_string();
  return Automorphism(primitive::Inner{m, std::move(inv), std::move(label)});
}

Automorphism Automorphism::tau() { return Automorphism(primitive::TransposeInverse{}); }
Automorphism Automorphism::sigma() { return Automorphism(primitive::ConjByJ{}); }
Automorphism Automorphism::theta() { return Automorphism(primitive::ConjBySwap{}); }

Automorphism Automorphism::character_twist(CharacterTwist chi) {
  return Automorphism(std::move(chi));
}

Automorphism operator*(const Automorphism& outer, const Automorphism& inner) {
  Automorphism out = outer;
  out.chain_.insert(out.chain_.end(), inner.chain_.begin(), inner.chain_.end());
  return out;
}

IntMatrix Automorphism::apply(const IntMatrix& x) const {
  IntMatrix y = x;
  for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) y = apply_primitive(*it, y);
  return y;
}

ModMatrix Automorphism::apply(const ModMatrix& x) const {
  ModMatrix y = x;
  for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) y = apply_primitive(*it, y);
  return y;
}

std::string Automorphism::descriptor() const {
  if (chain_.empty()) return "id";
  std::string out;
  for (const auto& p : chain_) {
    if (!out.empty()) out += '.';
    out += primitive_descriptor(p);
  }
  return out;
}

bool Automorphism::has_character_twist() const {
  return std::any_of(chain_.begin(), chain_.end(),
                     [](const Primitive& p) { return std::holds_alternative<CharacterTwist>(p); });
}

std::optional<std::pair<ModMatrix, ModMatrix>> Automorphism::as_sandwich(std::size_t n,
                                                                         Modulus m) const {
  ModMatrix left = ModMatrix::identity(n, m);
  ModMatrix right = ModMatrix::identity(n, m);
  for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
    if (const auto* in = std::get_if<primitive::Inner>(&*it)) {
      left = as_mod(in->conjugator, m) * left;
      right = right * as_mod(in->conjugator_inverse, m);
    } else if (std::holds_alternative<primitive::ConjByJ>(*it)) {
      const ModMatrix j = j_matrix(n, m);
      left = j * left;
      right = right * j;
    } else if (std::holds_alternative<primitive::ConjBySwap>(*it)) {
      const ModMatrix j = swap_matrix(n, m);
      left = j * left;
      right = right * j;
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(std::move(left), std::move(right));
}

Automorphism induced_mod(const Automorphism& phi, Modulus m) {
  Automorphism out;
  for (auto it = phi.chain().rbegin(); it != phi.chain().rend(); ++it) {
    Automorphism step = std::visit(
        Overloaded{
            [&](const primitive::Inner& i) {
              return Automorphism::inner(as_mod(i.conjugator, m), i.label);
            },
            [&](const primitive::TransposeInverse&) { return Automorphism::tau(); },
            [&](const primitive::ConjByJ&) { return Automorphism::sigma(); },
            [&](const primitive::ConjBySwap&) { return Automorphism::theta(); },
            [&](const CharacterTwist& c) {
              if (!c.on_residues || (c.modulus && *c.modulus != m)) {
                throw NonDescending("character " + c.name + " has no factorization mod " +
                                    std::to_string(m));
              }
              return Automorphism::character_twist(c);
            },
        },
        *it);
    out = step * out;
  }
  return out;
}

nlohmann::ordered_json ValidationReport::to_json() const {
  nlohmann::ordered_json j;
  j["closure"] = closure;
  j["homomorphism"] = homomorphism;
  j["bijectivity"] = bijectivity;
  j["exhaustive"] = exhaustive;
  j["pairs_checked"] = pairs_checked;
  j["seed"] = seed;
  j["first_failure"] = first_failure;
  return j;
}

std::vector<FiniteMatrixGroup::Index> image_table(const Automorphism& phi,
                                                  const FiniteMatrixGroup& g) {
  if (auto lr = phi.as_sandwich(g.dim(), g.modulus())) {
    return g.sandwich_indices(&lr->first, &lr->second);
  }
  std::vector<FiniteMatrixGroup::Index> out(g.order(), FiniteMatrixGroup::kNotFound);
  for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i) {
    try {
      if (auto j = g.find(phi.apply(g.element(i)))) out[i] = *j;
    } catch (const NotInvertible&) {
    } catch (const LookupError&) {
    }
  }
  return out;
}

ValidationReport validate_automorphism(const Automorphism& phi, const FiniteMatrixGroup& g,
                                       std::uint64_t seed) {
  using Index = FiniteMatrixGroup::Index;
  ValidationReport report;
  report.seed = seed;
  const std::size_t count = g.order();
  std::vector<Index> img;
  try {
    img = image_table(phi, g);
  } catch (const std::exception& e) {
    report.closure = report.homomorphism = report.bijectivity = false;
    report.first_failure = std::string("apply failed: ") + e.what();
    return report;
  }

  for (Index i = 0; i < count; ++i) {
    if (img[i] == FiniteMatrixGroup::kNotFound) {
      report.closure = false;
      report.first_failure = "image of " + g.element(i).to_string() + " leaves " + g.label();
      break;
    }
  }
  if (!report.closure) {
    // Homomorphism and bijectivity are meaningless for a map out of the group.
    report.homomorphism = report.bijectivity = false;
    return report;
  }

  std::vector<Index> sorted = img;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    report.bijectivity = false;
    report.first_failure = "image has fewer than " + std::to_string(count) + " elements";
  }

  auto fail_pair = [&](Index a, Index b) {
    report.homomorphism = false;
    if (report.first_failure.empty()) {
      report.first_failure = "phi(xy) != phi(x)phi(y) for x = " + g.element(a).to_string() +
                             ", y = " + g.element(b).to_string();
    }
  };

  if (count <= kExhaustivePairLimit) {
    report.exhaustive = true;
    for (Index a = 0; a < count && report.homomorphism; ++a) {
      const ModMatrix x = g.element(a);
      const ModMatrix fx = g.element(img[a]);
      const auto left_x = g.sandwich_indices(&x, nullptr);    // x * y
      const auto left_fx = g.sandwich_indices(&fx, nullptr);  // phi(x) * z
      for (Index b = 0; b < count; ++b) {
        ++report.pairs_checked;
        if (img[left_x[b]] != left_fx[img[b]]) {
          fail_pair(a, b);
          break;
        }
      }
    }
  } else {
    report.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(count - 1));
    for (std::size_t s = 0; s < kSampledPairs; ++s) {
      const Index a = pick(rng), b = pick(rng);
      ++report.pairs_checked;
      if (img[g.multiply(a, b)] != g.multiply(img[a], img[b])) {
        fail_pair(a, b);
        break;
      }
    }
  }
  return report;
}

std::vector<Automorphism> out_representatives(const GroupFamily& family,
                                              const std::optional<CharacterTwist>& chi) {
  switch (family.kind) {
    case FamilyKind::kSL: {
      const auto tau = Automorphism::tau();
      if (family.dim % 2 == 1) return {tau};
      const auto sigma = Automorphism::sigma();
      return {tau, sigma, tau * sigma};
    }
    case FamilyKind::kSp: {
      if (family.dim < 4) throw UsageError("out_representatives: Sp needs dimension >= 4");
      const auto theta = Automorphism::theta();
      if (family.dim > 4) return {theta};
      if (!chi) throw UsageError("out_representatives: Sp(4) needs a character twist");
      const auto phi = Automorphism::character_twist(*chi);
      return {theta, phi, theta * phi};
    }
    case FamilyKind::kGL:
      break;
  }
  throw UsageError("out_representatives: unsupported family " + std::string(family.name()));
}

CharacterTwist determinant_character() {
  CharacterTwist chi;
  chi.name = "det";
  chi.on_integers = [](const IntMatrix& x) {
    const Integer d = det(x);
    if (d == 1) return 1;
    if (d == -1) return -1;
    throw std::domain_error("det character: determinant " + d.str() + " is not +-1");
  };
  chi.on_residues = [](const ModMatrix& x) {
    const Residue d = det_mod(x);
    const Modulus m = x.modulus();
    if (d == 1 % m) return 1;
    if (d == m - 1) return -1;
    throw std::domain_error("det character: determinant " + std::to_string(d) + " mod " +
                            std::to_string(m) + " is not +-1");
  };
  return chi;
}

CharacterTwist table_character(std::string name, Modulus m,
                               std::vector<std::pair<ModMatrix, int>> table) {
  auto values = std::make_shared<std::map<Key, int>>();
  for (auto& [x, v] : table) {
    if (x.modulus() != m) throw UsageError("character table: modulus mismatch");
    check_sign(v, name);
    (*values)[entries_key(x)] = v;
  }
  CharacterTwist chi;
  chi.name = std::move(name);
  chi.modulus = m;
  chi.on_residues = [values, label = chi.name](const ModMatrix& x) {
    const auto it = values->find(entries_key(x));
    if (it == values->end()) {
      throw LookupError("character " + label + ": no value for " + x.to_string());
    }
    return it->second;
  };
  return chi;
}

CharacterTwist load_character_table(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("character table " + path.string() + ": " + e.what());
  }
  try {
    const auto n = doc.at("n").get<std::size_t>();
    const auto m = doc.at("modulus").get<Modulus>();
    std::vector<std::pair<ModMatrix, int>> table;
    for (const auto& row : doc.at("values")) {
      const auto& rows = row.at("matrix");
      if (!rows.is_array() || rows.size() != n) throw UsageError("character table: bad matrix");
      std::vector<std::int64_t> entries;
      for (const auto& r : rows) {
        if (!r.is_array() || r.size() != n) throw UsageError("character table: ragged row");
        for (const auto& v : r) entries.push_back(v.get<std::int64_t>());
      }
      table.emplace_back(ModMatrix(n, m, entries), row.at("chi").get<int>());
    }
    return table_character(path.filename().string(), m, std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("character table " + path.string() + ": " + e.what());
  }
}

std::optional<CharacterTwist> index_two_character(const FiniteMatrixGroup& g) {
  const std::size_t n = g.dim();
  const Modulus m = g.modulus();
  std::vector<ModMatrix> gens;
  for (auto gi : g.generators()) gens.push_back(g.element(gi));
  std::vector<ModMatrix> commutators;
  for (const auto& a : gens)
    for (const auto& b : gens) commutators.push_back(a * b * inverse(a) * inverse(b));
  // Normal closure: keep adding conjugates by generators until stable.
  auto derived = FiniteMatrixGroup::generate(n, m, commutators, g.order());
  for (bool grown = true; grown;) {
    grown = false;
    std::vector<ModMatrix> extra;
    for (const auto& a : gens) {
      const ModMatrix ainv = inverse(a);
      for (auto hi : derived.generators()) {
        ModMatrix c = a * derived.element(hi) * ainv;
        if (!derived.find(c)) extra.push_back(std::move(c));
      }
    }
    if (!extra.empty()) {
      for (auto hi : derived.generators()) extra.push_back(derived.element(hi));
      derived = FiniteMatrixGroup::generate(n, m, extra, g.order());
      grown = true;
    }
  }
  if (derived.order() * 2 != g.order()) return std::nullopt;
  std::vector<std::pair<ModMatrix, int>> table;
  table.reserve(g.order());
  for (FiniteMatrixGroup::Index i = 0; i < g.order(); ++i) {
    ModMatrix x = g.element(i);
    const int v = derived.find(x) ? 1 : -1;
    table.emplace_back(std::move(x), v);
  }
  return table_character("index2(" + g.label() + ")", m, std::move(table));
}

namespace {

bool starts_with_keyword(std::string_view s) {
  for (std::string_view kw : {"id", "tau", "sigma", "theta"}) {
    if (s.starts_with(kw) && (s.size() == kw.size() || s[kw.size()] == '.')) return true;
  }
  return s.starts_with("inner:") || s.starts_with("chartwist:");
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view name) {
  std::filesystem::path p{std::string(name)};
  if (p.is_relative() && !base.empty()) return base / p;
  return p;
}

}  // namespace

Automorphism parse_automorphism(std::string_view text, const std::filesystem::path& base_dir) {
  if (text.empty()) throw UsageError("automorphism descriptor is empty");
  std::vector<Automorphism> parts;
  std::string_view rest = text;
  while (!rest.empty()) {
    if (!starts_with_keyword(rest)) {
      throw UsageError("unknown automorphism descriptor '" + std::string(rest) + "'");
    }
    // An argument runs until a '.' that begins another primitive.
    std::size_t end = std::string_view::npos;
    const std::size_t colon = rest.find(':');
    const bool has_arg = rest.starts_with("inner:") || rest.starts_with("chartwist:");
    for (std::size_t p = has_arg ? colon + 1 : 0; p < rest.size(); ++p) {
      if (rest[p] == '.' && starts_with_keyword(rest.substr(p + 1))) {
        end = p;
        break;
      }
    }
    const std::string_view token = rest.substr(0, end);
    rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end + 1);
    if (end != std::string_view::npos && rest.empty()) {
      throw UsageError("automorphism descriptor ends with '.'");
    }

    if (token == "id") {
      parts.push_back(Automorphism::identity());
    } else if (token == "tau") {
      parts.push_back(Automorphism::tau());
    } else if (token == "sigma") {
      parts.push_back(Automorphism::sigma());
    } else if (token == "theta") {
      parts.push_back(Automorphism::theta());
    } else if (token.starts_with("inner:")) {
      const auto name = token.substr(6);
      if (name.empty()) throw UsageError("inner: missing matrix file");
      parts.push_back(Automorphism::inner(load_matrix_file(resolve(base_dir, name)),
                                          std::string(name)));
    } else if (token.starts_with("chartwist:")) {
      const auto name = token.substr(10);
      if (name.empty()) throw UsageError("chartwist: missing table file");
      if (name == "det") {
        parts.push_back(Automorphism::character_twist(determinant_character()));
      } else {
        auto chi = load_character_table(resolve(base_dir, name));
        chi.name = std::string(name);
        parts.push_back(Automorphism::character_twist(std::move(chi)));
      }
    } else {
      throw UsageError("unknown automorphism descriptor '" + std::string(token) + "'");
    }
  }
  Automorphism out;
  for (const auto& p : parts) out = out * p;
  return out;
}

}  // namespace twistcc
