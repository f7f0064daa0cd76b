// SPDX-License-Identifier: MIT
#include "suite.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "qlattice/classify.hpp"
#include "qlattice/context.hpp"
#include "qlattice/error.hpp"
#include "qlattice/geometry.hpp"
#include "qlattice/ontic.hpp"
#include "qlattice/quantum.hpp"
#include "qlattice/real.hpp"
#include "qlattice/serialize.hpp"
#include "qlattice/tensor.hpp"

namespace qlattice::cli {

using json = nlohmann::ordered_json;

namespace {

RealSpacePtr space(SpaceKind k, int n) { return std::make_shared<const RealSpace>(make_space(k, n)); }

json labels(const StateSpace& s, const IdSet& u) {
  json out = json::array();
  for (Id x : u) out.push_back(s.label(x));
  return out;
}

IdSet by_label(const StateSpace& s, std::initializer_list<const char*> names) {
  IdSet out;
  for (const char* n : names) out.push_back(s.at(n));
  return normalized(out);
}

SuiteCheck check(std::string name, std::string statement, bool pass, json detail = json::object()) {
  return SuiteCheck{std::move(name), std::move(statement), pass, std::move(detail)};
}

// ---------------------------------------------------------------- order

void order_suite(std::vector<SuiteCheck>& out, const SuiteOptions&) {
  using B = BoolVal;
  const B v[3] = {B::Yes, B::No, B::Bot};
  // Rows and columns in the order Y, N, ⊥.
  const B meet[3][3] = {{B::Yes, B::Bot, B::Bot}, {B::Bot, B::No, B::Bot}, {B::Bot, B::Bot, B::Bot}};
  const B bullet[3][3] = {{B::Yes, B::No, B::Bot}, {B::No, B::No, B::No}, {B::Bot, B::No, B::Bot}};
  const B bar[3] = {B::No, B::Yes, B::Bot};
  std::size_t bad_meet = 0, bad_bullet = 0, bad_bar = 0;
  for (int i = 0; i < 3; ++i) {
    bad_bar += bool_bar(v[i]) != bar[i];
    for (int j = 0; j < 3; ++j) {
      bad_meet += bool_meet(v[i], v[j]) != meet[i][j];
      bad_bullet += bool_bullet(v[i], v[j]) != bullet[i][j];
    }
  }
  out.push_back(check("boolean meet table", "the nine meet entries of the boolean domain", bad_meet == 0,
                      {{"mismatches", bad_meet}}));
  out.push_back(check("boolean bullet table", "the nine monoid entries of the boolean domain", bad_bullet == 0,
                      {{"mismatches", bad_bullet}}));
  out.push_back(check("boolean bar table", "the three bar entries of the boolean domain", bad_bar == 0,
                      {{"mismatches", bad_bar}}));

  const auto z = make_zprime(2);
  const auto rep = structure_report(z.space);
  out.push_back(check("Z'2 shape", "Z'2 has five elements and four pures, generated by its pures",
                      z.size() == 5 && rep.maximal.size() == 4 && rep.generated_by_maximals,
                      {{"elements", z.size()}, {"pures", rep.maximal.size()}}));
  const auto viol = validate_real(z);
  out.push_back(check("Z'2 real structure", "star on Z'2 satisfies the real-structure axioms", viol.empty(),
                      {{"violations", viol.size()}}));
}

// -------------------------------------------------------------- closure

void closure_suite(std::vector<SuiteCheck>& out, const SuiteOptions& opt) {
  const StateSpace lat = make_counterexample_lattice();
  const IdSet u = by_label(lat, {"u1", "u2", "u3"});
  const IdSet c1 = pre_closure(lat, u);
  const IdSet c2 = pre_closure(lat, c1);
  out.push_back(check("pre-closure counterexample", "c({u1,u2,u3}) = {w,z,y}", c1 == by_label(lat, {"w", "y", "z"}),
                      {{"c(U)", labels(lat, c1)}}));
  out.push_back(check("pre-closure is not idempotent", "c(c({u1,u2,u3})) = {w,z,y,x}",
                      c2 == by_label(lat, {"w", "x", "y", "z"}), {{"c(c(U))", labels(lat, c2)}}));

  // Exhaustive idempotency on small spaces, sampled on the two-qubit reals.
  std::vector<StateSpace> small{make_bool().space,   make_simplex(2).space, make_simplex(3).space,
                                make_zprime(2).space, make_zprime(3).space, make_zprime(4).space,
                                make_zprime(5).space, lat};
  small.push_back(*Completion(space(SpaceKind::zprime, 2)).enumerate(opt.cap_tuples).space);
  std::size_t subsets = 0, failures = 0;
  for (const auto& s : small) {
    IdSet rest;
    for (Id x = 0; x < s.size(); ++x)
      if (x != s.bottom()) rest.push_back(x);
    for (std::size_t m = 1; m < (std::size_t(1) << rest.size()); ++m) {
      IdSet w;
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (m >> i & 1) w.push_back(rest[i]);
      const IdSet c = closure(s, w, ClosureMode::full);
      ++subsets;
      failures += closure(s, c, ClosureMode::full) != c;
    }
  }
  const auto z = space(SpaceKind::zprime, 2);
  const auto ts = build_tensor(z, z, opt.cap_elements);
  const StateSpace& big = ts.space->space;
  std::mt19937 rng(opt.seed);
  std::size_t sampled = 0;
  for (int k = 0; k < 1000; ++k) {
    IdSet w;
    const std::size_t want = 1 + rng() % 4;
    while (w.size() < want) {
      const Id x = Id(rng() % big.size());
      if (x != big.bottom() && std::find(w.begin(), w.end(), x) == w.end()) w.push_back(x);
    }
    w = normalized(w);
    const IdSet c = closure(big, w, ClosureMode::full);
    ++sampled;
    failures += closure(big, c, ClosureMode::full) != c;
  }
  out.push_back(check("closure idempotent", "cl_c(cl_c(U)) = cl_c(U)", failures == 0,
                      {{"exhaustive_subsets", subsets}, {"sampled_subsets", sampled}, {"failures", failures}}));

  const auto nc = non_completeness(*ts.space);
  json d{{"pairs_in_K_hat", nc.pairs}, {"inadmissible", nc.inadmissible}};
  if (nc.pair) {
    d["pair"] = labels(big, IdSet{(*nc.pair)[0], (*nc.pair)[1]});
    json chain = json::array();
    for (const auto& step : nc.chain) chain.push_back(labels(big, step));
    d["growth_chain"] = std::move(chain);
    if (nc.clash) d["clash"] = {big.label((*nc.clash)[0]), big.label((*nc.clash)[1])};
  }
  out.push_back(check("completion is not complete",
                      "some pure pair of the two-qubit reals lies in K-hat but has an inadmissible closure",
                      nc.witnessed(), std::move(d)));
}

// ----------------------------------------------------------- completion

void completion_suite(std::vector<SuiteCheck>& out, const SuiteOptions& opt) {
  const auto z = space(SpaceKind::zprime, 2);
  const Completion c(z);
  const auto ec = c.enumerate(opt.cap_tuples);
  out.push_back(check("Z'2 completion size", "the completion of Z'2 has 9 elements, 4 of them hidden",
                      ec.theta.size() == 9 && ec.hidden_count() == 4,
                      {{"elements", ec.theta.size()}, {"hidden", ec.hidden_count()}}));

  std::vector<Completion::Elem> el;
  for (const auto& t : ec.theta) el.push_back(*c.from_set(t));
  const StateSpace& s = z->space;
  std::size_t pairs = 0, galois_bad = 0, op_bad = 0;
  for (auto j : el)
    for (auto sigma : el) {
      ++pairs;
      const bool lhs = preorder_leq(s, c.theta(j), c.theta(sigma));
      std::vector<Completion::Elem> parts;
      for (Id x : c.theta(j)) parts.push_back(c.real(x));
      const auto lam = c.join_all(parts);
      galois_bad += !lam || lhs != c.leq(*lam, sigma);
    }
  out.push_back(check("Galois connection", "J below Theta(sigma) iff Lambda(J) below sigma, on all pairs",
                      galois_bad == 0, {{"pairs", pairs}, {"failures", galois_bad}}));

  // Meets and joins against greatest and least bounds of the antichain preorder.
  auto below = [&](Completion::Elem a, Completion::Elem b) { return preorder_leq(s, c.theta(a), c.theta(b)); };
  for (auto a : el)
    for (auto b : el) {
      std::optional<Completion::Elem> glb, lub;
      for (auto x : el) {
        if (below(x, a) && below(x, b) && (!glb || below(*glb, x))) glb = x;
        if (below(a, x) && below(b, x) && (!lub || below(x, *lub))) lub = x;
      }
      op_bad += !glb || c.meet(a, b) != *glb;
      op_bad += c.join(a, b) != lub;
    }
  out.push_back(check("completion meet and join", "meet and join agree with the bounds of the antichain order",
                      op_bad == 0, {{"failures", op_bad}}));
}

// --------------------------------------------------------------- tensor

void tensor_suite(std::vector<SuiteCheck>& out, const SuiteOptions& opt) {
  const auto b = space(SpaceKind::boolean, 0);
  const auto bb = build_tensor(b, b, opt.cap_elements);
  out.push_back(check("B x B size", "the product of two boolean domains has 15 elements",
                      bb.space->size() == 15, {{"elements", bb.space->size()}}));
  const auto z2 = space(SpaceKind::simplex, 2), z3 = space(SpaceKind::simplex, 3);
  const auto t23 = build_tensor(z2, z3, opt.cap_elements);
  out.push_back(check("simplex products are simplices", "unique pure decomposition on B x B and Z2 x Z3",
                      is_simplex(*bb.space) && is_simplex(*t23.space),
                      {{"B x B", is_simplex(*bb.space)}, {"Z2 x Z3", is_simplex(*t23.space)}}));

  const auto zp = space(SpaceKind::zprime, 2);
  const auto tz = build_tensor(zp, zp, opt.cap_elements);
  const auto& p = *tz.product;
  out.push_back(check("tensor bottom", "the bottom of Z'2 x Z'2 is the product of bottoms",
                      tz.mask_of.at(tz.space->bottom()) == p.elementary(zp->bottom(), zp->bottom())));
  const auto c1 = pure_meet_covering(tz.space->space);
  const auto c2 = pure_meet_second_covering(tz.space->space);
  out.push_back(check("first covering property preserved",
                      "on Z'2 x Z'2 the meet of two distinct pures is covered by both", c1.pass(),
                      {{"checked", c1.checked}, {"failures", c1.failures}}));
  out.push_back(check("second covering property preserved",
                      "on Z'2 x Z'2 the four-fold meet is covered by both pair meets under a common pure", c2.pass(),
                      {{"checked", c2.checked}, {"failures", c2.failures}}));

  // Normal forms against the effect-congruence oracle, generator sets of size ≤ 2.
  std::vector<std::vector<Gen>> sets;
  for (Id x = 0; x < zp->size(); ++x)
    for (Id y = 0; y < zp->size(); ++y) sets.push_back({{x, y}});
  const std::size_t singles = sets.size();
  for (std::size_t i = 0; i < singles; ++i)
    for (std::size_t j = i + 1; j < singles; ++j) sets.push_back({sets[i][0], sets[j][0]});
  std::vector<Mask> nf;
  for (const auto& g : sets) nf.push_back(p.normalize(g));
  std::size_t compared = 0, bad = 0;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      ++compared;
      bad += (nf[i] == nf[j]) != congruence_oracle(*zp, *zp, sets[i], sets[j]);
    }
  out.push_back(check("normal form matches congruence", "normalize equality iff no effect pair separates",
                      bad == 0, {{"pairs", compared}, {"discrepancies", bad}}));
}

// ------------------------------------------------------------- contexts

void contexts_suite(std::vector<SuiteCheck>& out, const SuiteOptions& opt) {
  const auto zp = space(SpaceKind::zprime, 2);
  const Completion c(zp);
  const auto ec = c.enumerate(opt.cap_tuples);
  const RealView v = view_of(c, ec);
  const Cover cover = maximal_contexts(v);
  const ModelReport m = verify_model_iso(v, cover, opt.cap_tuples);
  out.push_back(check("descriptions match states", "coherent descriptions of J(Z'2) biject with its 9 states",
                      m.bijective && m.routes_agree && m.states == 9,
                      {{"descriptions", m.descriptions}, {"states", m.states}, {"contexts", cover.contexts.size()}}));
  out.push_back(check("description order is a meet homomorphism", "the bijection preserves meets",
                      m.meet_homomorphism));
  out.push_back(check("J(Z'2) is contextual", "some coherent description is not induced by a real state",
                      m.contextual));

  const auto z3 = space(SpaceKind::simplex, 3);
  const Completion c3(z3);
  const auto ec3 = c3.enumerate(opt.cap_tuples);
  const RealView v3 = view_of(c3, ec3);
  const Cover cover3 = maximal_contexts(v3);
  const ModelReport m3 = verify_model_iso(v3, cover3, opt.cap_tuples);
  out.push_back(check("Z3 is non-contextual", "every coherent description of Z3 is induced by a real state",
                      !m3.contextual && m3.bijective, {{"descriptions", m3.descriptions}}));

  // Orthoclosure laws over every subset of J(Z'2).
  const std::size_t n = ec.theta.size();
  std::vector<IdSet> ortho(std::size_t(1) << n);
  auto subset = [&](std::size_t mask) {
    IdSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(Id(i));
    return s;
  };
  auto mask_of = [](const IdSet& s) {
    std::size_t m = 0;
    for (Id x : s) m |= std::size_t(1) << x;
    return m;
  };
  for (std::size_t m = 0; m < ortho.size(); ++m) ortho[m] = orthogonal_set(c, ec, subset(m));
  std::size_t bad = 0;
  for (std::size_t m = 0; m < ortho.size(); ++m) {
    const std::size_t perp = mask_of(ortho[m]);
    const std::size_t dbl = mask_of(ortho[perp]);
    bad += (m & ~dbl) != 0;                  // S ⊆ S⊥⊥
    bad += mask_of(ortho[dbl]) != perp;      // S⊥⊥⊥ = S⊥
    bad += (dbl & mask_of(ortho[dbl])) != 0; // H ∩ H⊥ = ∅ on closed H
    for (std::size_t t = m; t; t = (t - 1) & m) bad += (perp & ~mask_of(ortho[t])) != 0;  // antitone
  }
  out.push_back(check("orthoclosure laws", "expansive, antitone, triple-orthogonal and complement laws on J(Z'2)",
                      bad == 0, {{"subsets", ortho.size()}, {"failures", bad}}));
}

// ------------------------------------------------------------- geometry

void report_checks(std::vector<SuiteCheck>& out, const std::string& prefix, const GeometrySet& g,
                   const GeometryReport& rep) {
  const json full = json::parse(geometry_report_json(g, rep));
  for (const auto& c : full["checks"]) {
    json d{{"checked", c["checked"]}, {"failures", c["failures"]}};
    if (c.contains("note")) d["note"] = c["note"];
    if (c.contains("witness")) d["witness"] = c["witness"];
    out.push_back(check(prefix + c["name"].get<std::string>(), "exhaustive incidence check", c["pass"], d));
  }
}

void geometry_suite(std::vector<SuiteCheck>& out, const SuiteOptions& opt) {
  const auto z = space(SpaceKind::zprime, 2);
  const auto amb = make_ambient({z, z}, opt.cap_elements);
  ScanOptions scan;
  scan.seed = opt.seed;
  scan.cover_cap = opt.cap_tuples;
  const auto gc = build_geometry(amb, GeometryVariant::check, opt.cap_elements);
  const Geometry geo(gc);
  report_checks(out, "projective: ", gc, verify_projective(geo, scan));
  const auto gw = build_geometry(amb, GeometryVariant::widecheck, opt.cap_elements);
  const Geometry geow(gw);
  report_checks(out, "ortho: ", gw, verify_ortho(geow, scan));
}

// -------------------------------------------------------------- quantum

void quantum_suite(std::vector<SuiteCheck>& out, const SuiteOptions& opt) {
  for (auto [k, n, expect] : {std::tuple{SpaceKind::boolean, 0, true}, {SpaceKind::simplex, 2, true},
                              {SpaceKind::simplex, 3, true}, {SpaceKind::zprime, 2, false},
                              {SpaceKind::zprime, 3, false}}) {
    const auto rs = space(k, n);
    const auto r = broadcast_obstruction(rs);
    const bool ok = r.broadcasts == expect && r.search_confirms.value_or(false) &&
                    (expect ? r.traces_verified : r.pair.has_value());
    json d{{"broadcasts", r.broadcasts}};
    if (!r.witness.empty()) d["witness"] = r.witness;
    out.push_back(check("broadcast " + rs->name, expect ? "the diagonal broadcasts" : "no broadcasting map exists",
                        ok, std::move(d)));
  }

  const auto z = space(SpaceKind::zprime, 2);
  const auto sc = make_bell(z, z, opt.cap_elements);
  const auto phi = bell_marginals(sc);
  const TensorProduct& bp = bool_pair();
  constexpr Id Y = 1, N = 2, B = 0;
  const std::array<std::vector<Gen>, 4> expect{std::vector<Gen>{{N, B}, {Y, N}}, std::vector<Gen>{{Y, B}, {N, Y}},
                                               std::vector<Gen>{{Y, N}, {B, Y}}, std::vector<Gen>{{B, B}}};
  static const char* keys[4] = {"13", "14", "23", "24"};
  for (int k = 0; k < 4; ++k) {
    const bool ok = phi[k].size() == 1 && phi[k][0] == bp.normalize(expect[k]);
    out.push_back(check(std::string("Bell marginal ") + keys[k], "marginal of the entangled state",
                        ok, {{"value", marginal_name(phi[k])}}));
  }
  const auto ls = lambda_search(phi);
  out.push_back(check("Bell non-locality", "no element of the four-fold boolean product has these marginals",
                      !ls.witness.has_value(), {{"scanned", ls.scanned}}));

  std::size_t reals = 0, witnessed = 0;
  for (Id x = 0; x < sc.tensor.reals.space->size(); ++x) {
    ++reals;
    witnessed += lambda_search(bell_marginals(with_state(sc, x))).witness.has_value();
  }
  out.push_back(check("real states are local", "every real state of Z'2 x Z'2 admits a global element",
                      witnessed == reals, {{"reals", reals}, {"witnessed", witnessed}}));
}

using SuiteFn = std::function<void(std::vector<SuiteCheck>&, const SuiteOptions&)>;

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> m{
      {"order", order_suite},       {"closure", closure_suite},   {"completion", completion_suite},
      {"tensor", tensor_suite},     {"contexts", contexts_suite}, {"geometry", geometry_suite},
      {"quantum", quantum_suite}};
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"order",    "closure",  "completion", "tensor",
                                              "contexts", "geometry", "quantum"};
  return names;
}

std::vector<SuiteCheck> run_suite(const std::string& suite, const SuiteOptions& opt) {
  std::vector<SuiteCheck> out;
  if (suite == "all") {
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, opt);
      for (auto& c : part) c.name = n + "/" + c.name;
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  const auto it = suites().find(suite);
  if (it == suites().end()) throw Error(ErrorKind::input, "unknown suite \"" + suite + "\"");
  it->second(out, opt);
  return out;
}

json suite_report(const std::string& suite, const std::vector<SuiteCheck>& checks) {
  json j;
  j["schema"] = kReportSchemaVersion;
  j["suite"] = suite;
  json arr = json::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    failed += !c.pass;
    arr.push_back({{"name", c.name}, {"statement", c.statement}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["checks"] = std::move(arr);
  j["failed"] = failed;
  j["pass"] = failed == 0;
  return j;
}

}  // namespace qlattice::cli
