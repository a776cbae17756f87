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

#include "twistcc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistcc/automorphism.hpp"
#include "twistcc/error.hpp"
#include "twistcc/groups.hpp"
#include "twistcc/orbits.hpp"
#include "twistcc/verify.hpp"
#include "twistcc/witnesses.hpp"

namespace twistcc::cli {

namespace {

using Json = nlohmann::ordered_json;

// A command's result: the JSON document is the report, and the text form is
// rendered from it.
struct Report {
  Json data;
  int exit_code = kOk;
};

std::size_t resolve_cap(std::size_t flag) {
  if (flag != 0) return flag;
  if (const char* env = std::getenv(kElementCapEnv); env != nullptr && *env != '\0') {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(env, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != std::string_view(env).size() || v == 0)
      throw UsageError(std::string(kElementCapEnv) + " must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return kDefaultElementCap;
}

Integer parse_parameter(const std::string& text, std::string_view what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(std::string(what) + " must be a non-negative integer, got '" + text + "'");
  return Integer(text);
}

std::string json_scalar(const Json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

Report cmd_quotient(const RunConfig& cfg) {
  const GroupDescriptor desc = GroupDescriptor::parse(cfg.group);
  const std::size_t cap = resolve_cap(cfg.element_cap);
  const FiniteMatrixGroup g = build_quotient(desc.family, desc.modulus, cap);
  const auto expected = classical_order(desc.family, desc.modulus);

  Report r;
  r.data["group"] = desc.str();
  r.data["order"] = g.order();
  r.data["generators"] = g.generators().size();
  if (expected) {
    const bool pass = Integer(g.order()) == *expected;
    r.data["classical_order"] = expected->str();
    r.data["order_check"] = pass ? "pass" : "fail";
    if (!pass) r.exit_code = kVerificationFailed;
  } else {
    r.data["classical_order"] = nullptr;
    r.data["order_check"] = "skipped (composite modulus)";
  }
  r.data["element_cap"] = cap;
  r.data["seed"] = cfg.seed;
  return r;
}

void text_quotient(const Json& d, std::ostream& out) {
  out << "group " << json_scalar(d["group"]) << '\n';
  out << "order " << d["order"] << '\n';
  out << "generators " << d["generators"] << '\n';
  if (d["classical_order"].is_null()) {
    out << "order formula: " << json_scalar(d["order_check"]) << '\n';
  } else {
    out << "order formula " << json_scalar(d["classical_order"]) << ": "
        << json_scalar(d["order_check"]) << '\n';
  }
  out << "seed " << d["seed"] << '\n';
}

Report cmd_reidemeister(const RunConfig& cfg) {
  const GroupDescriptor desc = GroupDescriptor::parse(cfg.group);
  const Automorphism phi = parse_automorphism(cfg.aut, std::filesystem::current_path());
  const FiniteMatrixGroup g = build_quotient(desc.family, desc.modulus, resolve_cap(cfg.element_cap));
  const Automorphism induced = induced_mod(phi, desc.modulus);

  Report r;
  try {
    const TwistedPartition p = twisted_partition(g, induced, cfg.seed);
    r.data = p.to_json(desc.str(), phi.descriptor());
  } catch (const InvalidAutomorphism& e) {
    r.data["group"] = desc.str();
    r.data["automorphism"] = phi.descriptor();
    r.data["error"] = "invalid automorphism";
    r.data["validation"] = e.report().to_json();
    r.exit_code = kInvalidAutomorphism;
  }
  r.data["seed"] = cfg.seed;
  return r;
}

void text_reidemeister(const Json& d, std::ostream& out) {
  out << "group " << json_scalar(d["group"]) << '\n';
  out << "automorphism " << json_scalar(d["automorphism"]) << '\n';
  if (d.contains("error")) {
    const Json& v = d["validation"];
    out << "invalid automorphism: closure " << v["closure"] << ", homomorphism "
        << v["homomorphism"] << ", bijectivity " << v["bijectivity"] << '\n';
    if (v.contains("first_failure")) out << "first failure: " << json_scalar(v["first_failure"]) << '\n';
  } else {
    out << "R = " << d["reidemeister_number"] << '\n';
    for (const Json& c : d["classes"]) {
      out << "class " << c["id"] << "  size " << c["size"] << "  representative "
          << c["representative"].dump() << '\n';
    }
  }
  out << "seed " << d["seed"] << '\n';
}

Report cmd_certify(const RunConfig& cfg) {
  CertifyRequest req;
  req.family = parse_witness_kind(cfg.family);
  req.phi = parse_automorphism(cfg.aut, std::filesystem::current_path());
  req.n = cfg.n;
  req.k = parse_parameter(cfg.k, "--k");
  req.l = parse_parameter(cfg.l, "--l");
  if (cfg.moduli.empty()) throw UsageError("certify needs --moduli");
  req.moduli.assign(cfg.moduli.begin(), cfg.moduli.end());
  req.element_cap = resolve_cap(cfg.element_cap);
  req.seed = cfg.seed;
  // Reject bad witness shapes before building any quotient.
  make_witness(req.family, req.n, req.k);

  const DistinctnessCertificate cert = certify_distinct(req);
  Report r;
  r.data = cert.to_json();
  r.data["seed"] = cfg.seed;
  r.exit_code = cert.distinct() ? kOk : kInconclusive;
  return r;
}

void text_certify(const Json& d, std::ostream& out) {
  out << "family " << json_scalar(d["family"]) << ", automorphism " << json_scalar(d["automorphism"])
      << ", n = " << d["n"] << ", k = " << json_scalar(d["k"]) << ", l = " << json_scalar(d["l"])
      << '\n';
  for (const Json& a : d["attempts"]) {
    out << "m = " << a["modulus"] << ": " << json_scalar(a["outcome"]);
    if (a.contains("class_ids")) out << " (class ids " << a["class_ids"][0] << ", " << a["class_ids"][1] << ")";
    if (a.contains("detail")) out << " [" << json_scalar(a["detail"]) << "]";
    out << '\n';
  }
  out << "verdict " << json_scalar(d["verdict"]);
  if (!d["modulus"].is_null()) out << " at m = " << d["modulus"];
  out << '\n';
  out << "seed " << d["seed"] << '\n';
}

Report cmd_verify(const RunConfig& cfg) {
  const verify::Checks checks = verify::run_suite(cfg.suite, cfg.seed);
  Report r;
  r.data = verify::to_json(cfg.suite, cfg.seed, checks);
  r.exit_code = verify::all_pass(checks) ? kOk : kVerificationFailed;
  return r;
}

void text_verify(const Json& d, std::ostream& out) {
  std::size_t passed = 0, total = 0;
  for (const Json& c : d["checks"]) {
    const bool pass = c["pass"].get<bool>();
    passed += pass;
    ++total;
    out << (pass ? "PASS  " : "FAIL  ") << json_scalar(c["name"]);
    if (!json_scalar(c["detail"]).empty()) out << "  (" << json_scalar(c["detail"]) << ")";
    out << '\n';
  }
  out << passed << "/" << total << " checks passed, suite " << json_scalar(d["suite"]) << ", seed "
      << d["seed"] << '\n';
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  Report r;
  void (*text)(const Json&, std::ostream&) = nullptr;
  if (cfg.command == "quotient") {
    r = cmd_quotient(cfg);
    text = text_quotient;
  } else if (cfg.command == "reidemeister") {
    r = cmd_reidemeister(cfg);
    text = text_reidemeister;
  } else if (cfg.command == "certify") {
    r = cmd_certify(cfg);
    text = text_certify;
  } else {
    r = cmd_verify(cfg);
    text = text_verify;
  }
  if (cfg.format == "text") {
    text(r.data, out);
  } else {
    out << r.data.dump(2) << '\n';
  }
  return r.exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted conjugacy classes and Reidemeister numbers of finite matrix groups"};
  app.name("twistcc");
  app.require_subcommand(1);

  RunConfig cfg;
  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    sub->add_option("--element-cap", cfg.element_cap,
                    std::string("Largest group to enumerate (default: $") + kElementCapEnv +
                        " or " + std::to_string(kDefaultElementCap) + ")");
    sub->add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
  };

  auto* quotient = app.add_subcommand("quotient", "Build a finite quotient group and check its order");
  quotient->add_option("--group", cfg.group, "sl:n:m, gl:n:m or sp:2n:m")->required();
  common(quotient);

  auto* reidemeister =
      app.add_subcommand("reidemeister", "Twisted conjugacy classes of an automorphism");
  reidemeister->add_option("--group", cfg.group, "sl:n:m, gl:n:m or sp:2n:m")->required();
  reidemeister->add_option("--aut", cfg.aut, "Automorphism descriptor")->capture_default_str();
  common(reidemeister);

  auto* certify = app.add_subcommand("certify", "Separate two witnesses in a finite quotient");
  std::string certify_aut = "tau";
  certify->add_option("--family", cfg.family, "Witness family A or X")->capture_default_str();
  certify->add_option("--aut", certify_aut, "Automorphism descriptor")->capture_default_str();
  certify->add_option("--n", cfg.n, "Matrix dimension")->capture_default_str();
  certify->add_option("--k", cfg.k, "First witness parameter")->capture_default_str();
  certify->add_option("--l", cfg.l, "Second witness parameter")->capture_default_str();
  certify->add_option("--moduli", cfg.moduli, "Moduli to try, in order")
      ->delimiter(',')
      ->required();
  common(certify);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", cfg.suite, "identities, lemmas, brauer, oracles or all")
      ->check(CLI::IsMember({"identities", "lemmas", "brauer", "oracles", "all"}))
      ->capture_default_str();
  common(verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "certify") cfg.aut = certify_aut;

  try {
    return dispatch(cfg, out);
  } catch (const InvalidAutomorphism& e) {
    err << "twistcc: invalid automorphism: " << e.what() << '\n';
    return kInvalidAutomorphism;
  } catch (const ResourceLimit& e) {
    err << "twistcc: resource limit: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const StructureError& e) {
    err << "twistcc: " << e.kind() << ": " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const UsageError& e) {
    err << "twistcc: " << e.what() << '\n';
    return kUsage;
  } catch (const NotInvertible& e) {
    err << "twistcc: " << e.what() << '\n';
    return kUsage;
  } catch (const NonDescending& e) {
    err << "twistcc: " << e.what() << '\n';
    return kUsage;
  } catch (const LookupError& e) {
    err << "twistcc: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "twistcc: malformed input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "twistcc: internal error: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace twistcc::cli
