// SPDX-License-Identifier: MIT
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qlattice/context.hpp"
#include "qlattice/error.hpp"
#include "qlattice/geometry.hpp"
#include "qlattice/ontic.hpp"
#include "qlattice/quantum.hpp"
#include "qlattice/real.hpp"
#include "qlattice/serialize.hpp"
#include "qlattice/tensor.hpp"
#include "suite.hpp"

namespace {

using namespace qlattice;
using json = nlohmann::ordered_json;

enum Exit { ok = 0, verification_failed = 1, bad_input = 2, cap_exceeded = 3 };

struct Options {
  std::string kind = "zprime";
  int n = 2;
  int na = 2, nb = 2;
  int factors = 2;
  std::string in;
  std::string out;
  std::string format = "json";
  std::string suite = "all";
  std::string what = "space";
  std::string variant = "check";
  std::size_t cap_elements = 100000;
  std::size_t cap_tuples = 1000000;
  std::uint32_t seed = 12345;
};

SpaceKind parse_kind(const std::string& k) {
  if (k == "boolean") return SpaceKind::boolean;
  if (k == "simplex") return SpaceKind::simplex;
  if (k == "zprime") return SpaceKind::zprime;
  throw Error(ErrorKind::input, "--kind: expected boolean, simplex or zprime, got \"" + k + "\"");
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::input, path + ": cannot be read");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RealSpacePtr load_space(const Options& o, const std::string& kind, int n) {
  if (!o.in.empty()) {
    const std::string text = slurp(o.in);
    const bool dot = o.in.size() > 4 && o.in.substr(o.in.size() - 4) == ".dot";
    try {
      return std::make_shared<const RealSpace>(dot ? space_from_dot(text) : space_from_json(text));
    } catch (const Error& e) {
      throw Error(e.kind(), o.in + ": " + e.what());
    }
  }
  return std::make_shared<const RealSpace>(make_space(parse_kind(kind), n));
}

void emit(const Options& o, const std::string& text) {
  const std::string body = text.empty() || text.back() == '\n' ? text : text + "\n";
  if (o.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::input, o.out + ": cannot be written");
  f << body;
}

std::string render_space(const Options& o, const RealSpace& rs) {
  return o.format == "dot" ? space_to_dot(rs) : space_to_json(rs);
}

int cmd_build(const Options& o) {
  const auto rs = load_space(o, o.kind, o.n);
  const auto viol = validate_real(*rs);
  if (!viol.empty()) throw Error(ErrorKind::input, "real structure: " + violation_text(rs->space, viol.front()));
  emit(o, render_space(o, *rs));
  return ok;
}

int cmd_tensor(const Options& o) {
  const auto a = std::make_shared<const RealSpace>(make_space(parse_kind(o.kind), o.na));
  const auto b = std::make_shared<const RealSpace>(make_space(parse_kind(o.kind), o.nb));
  const auto t = build_tensor(a, b, o.cap_elements);
  emit(o, render_space(o, *t.space));
  return ok;
}

int cmd_complete(const Options& o) {
  const auto rs = load_space(o, o.kind, o.n);
  const Completion c(rs);
  const auto ec = c.enumerate(o.cap_tuples);
  if (o.format == "dot") {
    emit(o, space_to_dot(*ec.space, rs->name.empty() ? "completion" : "J(" + rs->name + ")"));
    return ok;
  }
  json j;
  j["schema"] = kReportSchemaVersion;
  j["base"] = rs->name;
  j["elements"] = ec.space->labels();
  j["hidden"] = ec.hidden_count();
  json leq = json::array();
  for (const auto& [x, y] : ec.space->covering_pairs()) leq.push_back({x, y});
  j["leq"] = std::move(leq);
  emit(o, j.dump(2));
  return ok;
}

int cmd_contexts(const Options& o) {
  const auto rs = load_space(o, o.kind, o.n);
  const Completion c(rs);
  const auto ec = c.enumerate(o.cap_tuples);
  const RealView v = view_of(c, ec);
  const Cover cover = maximal_contexts(v);
  const ModelReport m = verify_model_iso(v, cover, o.cap_tuples);
  json j;
  j["schema"] = kReportSchemaVersion;
  j["space"] = rs->name;
  json ctx = json::array();
  for (const auto& cx : cover.contexts) {
    json effects = json::array();
    for (const auto& l : cx.effects) effects.push_back(effect_name(v.s(), l));
    json e{{"kind", context_kind_name(cx.kind)}, {"effects", std::move(effects)}};
    if (cx.omega) e["pure"] = v.s().label(*cx.omega);
    ctx.push_back(std::move(e));
  }
  j["contexts"] = std::move(ctx);
  j["cover_complete"] = cover.complete;
  j["descriptions"] = m.descriptions;
  j["states"] = m.states;
  j["bijective"] = m.bijective;
  j["meet_homomorphism"] = m.meet_homomorphism;
  j["contextual"] = m.contextual;
  if (m.hidden_witness) j["hidden_witness"] = v.s().label(*m.hidden_witness);
  emit(o, j.dump(2));
  return ok;
}

GeometryVariant parse_variant(const std::string& v) {
  if (v == "check") return GeometryVariant::check;
  if (v == "widecheck") return GeometryVariant::widecheck;
  throw Error(ErrorKind::input, "--variant: expected check or widecheck, got \"" + v + "\"");
}

GeometrySet geometry_set(const Options& o) {
  if (o.factors < 2) throw Error(ErrorKind::input, "--factors must be at least 2");
  const auto z = std::make_shared<const RealSpace>(make_zprime(2));
  const auto amb = make_ambient(std::vector<RealSpacePtr>(std::size_t(o.factors), z), o.cap_elements);
  return build_geometry(amb, parse_variant(o.variant), o.cap_elements);
}

int cmd_geometry(const Options& o) {
  const GeometrySet g = geometry_set(o);
  const Geometry geo(g);
  ScanOptions scan = default_scan(g);
  scan.seed = o.seed;
  scan.cover_cap = o.cap_tuples;
  const auto rep = g.variant == GeometryVariant::check ? verify_projective(geo, scan) : verify_ortho(geo, scan);
  emit(o, geometry_report_json(g, rep));
  return ok;
}

int cmd_bell(const Options& o) {
  const auto a = std::make_shared<const RealSpace>(make_zprime(o.na));
  const auto b = std::make_shared<const RealSpace>(make_zprime(o.nb));
  emit(o, bell_report_json(make_bell(a, b, o.cap_elements)));
  return ok;
}

int cmd_broadcast(const Options& o) {
  const auto rs = load_space(o, o.kind, o.n);
  const auto r = broadcast_obstruction(rs);
  json j;
  j["schema"] = kReportSchemaVersion;
  j["space"] = rs->name;
  j["simplex"] = r.simplex;
  j["broadcasts"] = r.broadcasts;
  if (r.broadcasts) j["traces_verified"] = r.traces_verified;
  if (r.pair) j["pair"] = {rs->space.label((*r.pair)[0]), rs->space.label((*r.pair)[1])};
  if (!r.witness.empty()) j["witness"] = r.witness;
  j["search_confirms"] = r.search_confirms ? json(*r.search_confirms) : json(nullptr);
  emit(o, j.dump(2));
  return ok;
}

int cmd_verify(const Options& o) {
  cli::SuiteOptions so;
  so.cap_elements = o.cap_elements;
  so.cap_tuples = o.cap_tuples;
  so.seed = o.seed;
  const auto checks = cli::run_suite(o.suite, so);
  const json rep = cli::suite_report(o.suite, checks);
  emit(o, rep.dump(2));
  if (rep["pass"].get<bool>()) return ok;
  for (const auto& c : checks)
    if (!c.pass) std::cerr << "FAIL " << c.name << ": " << c.detail.dump() << "\n";
  return verification_failed;
}

int cmd_export(const Options& o) {
  if (o.what == "space") return cmd_build(o);
  if (o.what == "incidence" || o.what == "consistency") {
    const GeometrySet g = geometry_set(o);
    const Geometry geo(g);
    emit(o, o.what == "incidence" ? incidence_to_json(geo) : consistency_dot(geo));
    return ok;
  }
  throw Error(ErrorKind::input, "--what: expected space, incidence or consistency, got \"" + o.what + "\"");
}

std::optional<std::size_t> cap_override() {
  const char* env = std::getenv("QLATTICE_CAP_OVERRIDE");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw Error(ErrorKind::input, "QLATTICE_CAP_OVERRIDE: expected a positive integer");
  return std::size_t(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlattice: finite state spaces, ontic completions, tensor products and their checks"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "Build or load a space and print it");
  auto* tensor = app.add_subcommand("tensor", "Minimal tensor product of two spaces of one kind");
  auto* complete = app.add_subcommand("complete", "Enumerate the ontic completion");
  auto* contexts = app.add_subcommand("contexts", "Maximal contexts and the description model");
  auto* geometry = app.add_subcommand("geometry", "Incidence checks on products of Z'2");
  auto* bell = app.add_subcommand("bell", "Bell marginals and the global-element search");
  auto* broadcast = app.add_subcommand("broadcast", "Broadcasting map or its obstruction");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  auto* exportc = app.add_subcommand("export", "Export a space, incidence structure or consistency graph");

  const std::vector<std::string> kinds{"boolean", "simplex", "zprime"};
  for (auto* c : {build, complete, contexts, broadcast, exportc}) {
    c->add_option("--kind", o.kind, "boolean, simplex or zprime")->check(CLI::IsMember(kinds));
    c->add_option("--n", o.n, "size parameter of the kind")->check(CLI::Range(1, 64));
    c->add_option("--in", o.in, "space file (.json or .dot) instead of --kind")->check(CLI::ExistingFile);
  }
  tensor->add_option("--kind", o.kind, "boolean, simplex or zprime")->check(CLI::IsMember(kinds));
  for (auto* c : {tensor, bell}) {
    c->add_option("--na", o.na, "size parameter of the left factor")->check(CLI::Range(1, 16));
    c->add_option("--nb", o.nb, "size parameter of the right factor")->check(CLI::Range(1, 16));
  }
  for (auto* c : {geometry, exportc}) {
    c->add_option("--factors", o.factors, "number of Z'2 factors")->check(CLI::Range(2, 8));
    c->add_option("--variant", o.variant, "check or widecheck")->check(CLI::IsMember({"check", "widecheck"}));
  }
  verify->add_option("--suite", o.suite, "suite name or all")
      ->check(CLI::IsMember([] {
        auto v = cli::suite_names();
        v.push_back("all");
        return v;
      }()));
  exportc->add_option("--what", o.what, "space, incidence or consistency")
      ->check(CLI::IsMember({"space", "incidence", "consistency"}));

  std::vector<CLI::Option*> caps;
  for (auto* c : {build, tensor, complete, contexts, geometry, bell, broadcast, verify, exportc}) {
    caps.push_back(c->add_option("--cap-elements", o.cap_elements, "element cap for enumerated products"));
    caps.push_back(c->add_option("--cap-tuples", o.cap_tuples, "cap on antichain candidates and cliques"));
    c->add_option("--seed", o.seed, "seed for sampled scans");
    c->add_option("--out", o.out, "output file, stdout when absent");
    c->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : bad_input;
  }

  try {
    if (const auto cap = cap_override()) {
      bool elements_set = false, tuples_set = false;
      for (std::size_t i = 0; i < caps.size(); i += 2) {
        elements_set = elements_set || caps[i]->count() > 0;
        tuples_set = tuples_set || caps[i + 1]->count() > 0;
      }
      if (!elements_set) o.cap_elements = *cap;
      if (!tuples_set) o.cap_tuples = *cap;
    }
    if (*build) return cmd_build(o);
    if (*tensor) return cmd_tensor(o);
    if (*complete) return cmd_complete(o);
    if (*contexts) return cmd_contexts(o);
    if (*geometry) return cmd_geometry(o);
    if (*bell) return cmd_bell(o);
    if (*broadcast) return cmd_broadcast(o);
    if (*verify) return cmd_verify(o);
    if (*exportc) return cmd_export(o);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cap_exceeded;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::resource ? cap_exceeded : bad_input;
  }
  return bad_input;
}
