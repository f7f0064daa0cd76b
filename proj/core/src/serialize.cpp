// SPDX-License-Identifier: MIT
#include "qlattice/serialize.hpp"

#include <json.hpp>

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "qlattice/error.hpp"

namespace qlattice {

using nlohmann::json;

namespace {

json space_json(const StateSpace& s) {
  json j;
  j["elements"] = s.labels();
  json leq = json::array();
  for (const auto& [a, b] : s.covering_pairs()) leq.push_back({a, b});
  j["leq"] = std::move(leq);
  j["bottom"] = s.label(s.bottom());
  return j;
}

json real_json(const RealSpace& rs) {
  json j = space_json(rs.space);
  if (!rs.name.empty()) j["name"] = rs.name;
  json star = json::array();
  for (Id x = 0; x < rs.size(); ++x)
    if (rs.star[x]) star.push_back({x, *rs.star[x]});
  j["star"] = std::move(star);
  return j;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::input, "JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Id resolve(const json& v, const std::vector<std::string>& labels, const char* field) {
  if (v.is_number_unsigned()) {
    const auto i = v.get<std::size_t>();
    if (i >= labels.size()) throw Error(ErrorKind::input, std::string(field) + ": id " + std::to_string(i) + " out of range");
    return Id(i);
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    for (Id i = 0; i < labels.size(); ++i)
      if (labels[i] == s) return i;
    throw Error(ErrorKind::input, std::string(field) + ": unknown element \"" + s + "\"");
  }
  throw Error(ErrorKind::input, std::string(field) + ": entries must be ids or names");
}

std::vector<std::pair<Id, Id>> read_pairs(const json& j, const char* field, const std::vector<std::string>& labels) {
  std::vector<std::pair<Id, Id>> out;
  if (!j.contains(field)) return out;
  if (!j[field].is_array()) throw Error(ErrorKind::input, std::string(field) + " must be an array");
  for (const auto& p : j[field]) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::input, std::string(field) + ": pairs must have two entries");
    out.emplace_back(resolve(p[0], labels, field), resolve(p[1], labels, field));
  }
  return out;
}

RealSpace real_from(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::input, "space JSON must be an object");
  if (!j.contains("elements") || !j["elements"].is_array())
    throw Error(ErrorKind::input, "elements: missing or not an array");
  std::vector<std::string> labels;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw Error(ErrorKind::input, "elements: names must be strings");
    labels.push_back(e.get<std::string>());
  }
  const auto leq = read_pairs(j, "leq", labels);
  const auto star = read_pairs(j, "star", labels);
  RealSpace rs;
  rs.space = StateSpace(labels, leq);
  if (j.contains("bottom")) {
    const Id b = resolve(j["bottom"], labels, "bottom");
    if (b != rs.space.bottom()) throw Error(ErrorKind::input, "bottom: \"" + labels[b] + "\" is not the least element");
  }
  rs.star.assign(rs.size(), std::nullopt);
  for (const auto& [x, y] : star) rs.star[x] = y;
  if (j.contains("name") && j["name"].is_string()) rs.name = j["name"].get<std::string>();
  return rs;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string unquoted(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out += s[i];
  }
  return out;
}

json names(const GeometrySet& g, const PointSet& pts) {
  json a = json::array();
  for (Point p : pts) a.push_back(g.name(p));
  return a;
}

json check_json(const GeometrySet& g, const CheckResult& c) {
  json j{{"name", c.name}, {"checked", c.checked}, {"failures", c.failures}, {"pass", c.pass()}};
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.witness.empty()) j["witness"] = names(g, c.witness);
  return j;
}

}  // namespace

std::string space_to_json(const StateSpace& s) { return space_json(s).dump(2); }
std::string space_to_json(const RealSpace& rs) { return real_json(rs).dump(2); }

RealSpace space_from_json(const std::string& text) { return real_from(parse(text)); }

StateSpace state_space_from_json(const std::string& text) { return real_from(parse(text)).space; }

std::string space_to_dot(const StateSpace& s, const std::string& graph_name) {
  std::ostringstream out;
  out << "digraph " << quoted(graph_name) << " {\n  rankdir=BT;\n";
  for (Id x = 0; x < s.size(); ++x) out << "  n" << x << " [label=" << quoted(s.label(x)) << "];\n";
  for (const auto& [a, b] : s.covering_pairs()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string space_to_dot(const RealSpace& rs) {
  const StateSpace& s = rs.space;
  std::ostringstream out;
  out << "digraph " << quoted(rs.name.empty() ? "space" : rs.name) << " {\n  rankdir=BT;\n";
  for (Id x = 0; x < s.size(); ++x) {
    out << "  n" << x << " [label=" << quoted(s.label(x));
    if (rs.star[x]) out << ", star=" << quoted(s.label(*rs.star[x]));
    out << "];\n";
  }
  for (const auto& [a, b] : s.covering_pairs()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

RealSpace space_from_dot(const std::string& text) {
  static const std::regex header(R"re(digraph\s+"((?:[^"\\]|\\.)*)")re");
  static const std::regex node(R"re(^\s*n(\d+)\s*\[label="((?:[^"\\]|\\.)*)"(?:,\s*star="((?:[^"\\]|\\.)*)")?\];\s*$)re");
  static const std::regex edge(R"re(^\s*n(\d+)\s*->\s*n(\d+);\s*$)re");
  std::vector<std::string> labels;
  std::vector<std::optional<std::string>> stars;
  std::vector<std::pair<Id, Id>> edges;
  std::istringstream in(text);
  std::string line;
  std::string name;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::smatch m;
    if (std::regex_search(line, m, header)) {
      name = unquoted(m[1]);
    } else if (std::regex_match(line, m, node)) {
      const auto id = std::stoul(m[1]);
      if (id != labels.size()) throw Error(ErrorKind::input, "DOT line " + std::to_string(lineno) + ": nodes must be numbered in order");
      labels.push_back(unquoted(m[2]));
      stars.push_back(m[3].matched ? std::optional(unquoted(m[3])) : std::nullopt);
    } else if (std::regex_match(line, m, edge)) {
      edges.emplace_back(Id(std::stoul(m[1])), Id(std::stoul(m[2])));
    }
  }
  for (const auto& [a, b] : edges)
    if (a >= labels.size() || b >= labels.size()) throw Error(ErrorKind::input, "DOT edge refers to an unknown node");
  RealSpace rs;
  rs.space = StateSpace(labels, edges);
  rs.star.assign(labels.size(), std::nullopt);
  for (Id x = 0; x < labels.size(); ++x)
    if (stars[x]) rs.star[x] = rs.space.at(*stars[x]);
  rs.name = name == "space" ? "" : name;
  return rs;
}

std::string element_to_json(const Completion& c, Completion::Elem e) {
  std::vector<std::string> out;
  for (Id x : c.theta(e)) out.push_back(c.base().space.label(x));
  std::sort(out.begin(), out.end());
  return json(out).dump();
}

std::string description_to_json(const StateSpace& s, const Cover& cover, const Description& d) {
  json out = json::array();
  for (std::size_t c = 0; c < cover.contexts.size(); ++c) {
    json values = json::array();
    for (std::size_t k = 0; k < cover.contexts[c].effects.size(); ++k)
      values.push_back({effect_name(s, cover.contexts[c].effects[k]), std::string(1, bool_letter(d.values.at(c).at(k)))});
    out.push_back({{"context", c}, {"values", std::move(values)}});
  }
  return out.dump(2);
}

std::string bell_report_json(const BellScenario& s) {
  const auto phi = bell_marginals(s);
  json j;
  j["schema"] = kReportSchemaVersion;
  j["sigma"] = s.tensor.completion->name(s.sigma);
  j["choice"] = {{"sigma1", s.left().space.label(s.s1)},
                 {"sigma2", s.left().space.label(s.s2)},
                 {"tau1", s.right().space.label(s.t1)},
                 {"tau2", s.right().space.label(s.t2)}};
  static const char* keys[4] = {"13", "14", "23", "24"};
  bool real_marginals = true;
  for (int k = 0; k < 4; ++k) {
    j["phi"][keys[k]] = marginal_name(phi[k]);
    real_marginals = real_marginals && phi[k].size() == 1;
  }
  std::optional<Mask16> lambda;
  if (real_marginals) lambda = lambda_search(phi).witness;
  j["lambda"] = lambda ? json(lambda_name(*lambda)) : json(nullptr);
  j["nonlocal"] = !lambda.has_value();
  return j.dump(2);
}

std::string incidence_to_json(const Geometry& geo) {
  const GeometrySet& g = geo.set();
  json j;
  PointSet all(g.size());
  for (Point p = 0; p < g.size(); ++p) all[p] = p;
  j["points"] = names(g, all);
  std::set<PointSet> lines;
  for (Point a = 0; a < g.size(); ++a)
    for (Point b = a + 1; b < g.size(); ++b)
      if (geo.consistent(a, b)) lines.insert(geo.line(a, b));
  json ls = json::array();
  for (const auto& l : lines) ls.push_back(names(g, l));
  j["lines"] = std::move(ls);
  json ps = json::array();
  for (const auto& sp : starred_planes(geo))
    ps.push_back({{"triple", names(g, PointSet(sp.triple.begin(), sp.triple.end()))}, {"points", names(g, sp.points)}});
  j["starred_planes"] = std::move(ps);
  return j.dump(2);
}

std::string consistency_dot(const Geometry& geo) {
  const GeometrySet& g = geo.set();
  std::ostringstream out;
  out << "graph \"consistency\" {\n";
  for (Point p = 0; p < g.size(); ++p)
    out << "  p" << p << " [label=" << quoted(g.name(p)) << (g.hidden(p) ? ", shape=box" : "") << "];\n";
  for (Point a = 0; a < g.size(); ++a)
    for (Point b = a + 1; b < g.size(); ++b)
      if (geo.consistent(a, b)) out << "  p" << a << " -- p" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string geometry_report_json(const GeometrySet& g, const GeometryReport& rep) {
  json j;
  j["schema"] = kReportSchemaVersion;
  j["variant"] = variant_name(g.variant);
  j["points"] = rep.points;
  j["hidden"] = rep.hidden;
  j["cover_size"] = rep.cover_size;
  j["witnesses"] = {{"by_construction", rep.construction_witness_hits}, {"by_search", rep.search_witness_hits}};
  json checks = json::array(), flags = json::array();
  for (const auto& c : rep.checks) checks.push_back(check_json(g, c));
  for (const auto& c : rep.flags) flags.push_back(check_json(g, c));
  j["checks"] = std::move(checks);
  j["flags"] = std::move(flags);
  j["pass"] = rep.pass();
  return j.dump(2);
}

}  // namespace qlattice
