// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <algorithm>

#include "qlattice/classify.hpp"
#include "qlattice/context.hpp"
#include "qlattice/error.hpp"
#include "support.hpp"

using namespace qt;

namespace {

struct Model {
  RealSpacePtr base;
  Completion c;
  EnumeratedCompletion ec;
  RealView v;
  Cover cover;

  explicit Model(RealSpacePtr b) : base(b), c(b), ec(c.enumerate()), v(view_of(c, ec)), cover(maximal_contexts(v)) {}

  Id real(const char* n) const { return v.of_base[base->space.at(n)]; }
  Effect l(const char* yes, const char* no) const {
    Effect e;
    if (yes) e.yes = real(yes);
    if (no) e.no = real(no);
    return e;
  }
};

const Model& jz() {
  static const Model m(zprime(2));
  return m;
}

}  // namespace

TEST_CASE("joint compatibility examples") {
  const auto& m = jz();
  CHECK_FALSE(find_joint_morphism(m.v, {m.l("a", "a*"), m.l("b", "b*")}).has_value());
  const auto same = find_joint_morphism(m.v, {m.l("a", "a*"), m.l("a", "a*")});
  REQUIRE(same.has_value());
  CHECK_FALSE(verify_joint_morphism(m.v, {m.l("a", "a*"), m.l("a", "a*")}, *same).has_value());

  const auto z3 = simplex(3);
  const auto v3 = view_of(z3);
  const auto u = [&](const char* n) { return z3->space.at(n); };
  const std::vector<Effect> ls{{u("u1"), z3->star_of(u("u1"))}, {u("u2"), z3->star_of(u("u2"))}, {u("u3"), z3->star_of(u("u3"))}};
  const auto psi = find_joint_morphism(v3, ls);
  REQUIRE(psi.has_value());
  CHECK(psi->constructive);
  CHECK_FALSE(verify_joint_morphism(v3, ls, *psi).has_value());
  for (std::size_t i = 0; i < 3; ++i)
    for (Id x = 0; x < v3.s().size(); ++x) CHECK(psi->trace(x, i) == evaluate(v3.s(), ls[i], x));
}

TEST_CASE("Type-1 contexts") {
  const auto& m = jz();
  const auto& s = m.v.s();
  std::vector<const Context*> t1;
  for (const auto& c : m.cover.contexts)
    if (c.kind == ContextKind::type1) t1.push_back(&c);
  REQUIRE(t1.size() == 4);
  IdSet omegas;
  for (const Context* c : t1) {
    CHECK(c->validated);
    CHECK(c->contains(effect_unit(s)));
    for (const auto& l : c->effects) CHECK(c->contains(effect_bar(l)));
    REQUIRE(c->omega.has_value());
    omegas.push_back(*c->omega);
    for (const char* p : {"a", "b"}) {
      const std::string ps = std::string(p) + "*";
      CHECK_FALSE((c->contains(m.l(p, nullptr)) && c->contains(m.l(ps.c_str(), nullptr))));
    }
  }
  std::sort(omegas.begin(), omegas.end());
  CHECK(omegas == m.v.real_pures);
  CHECK(m.cover.complete);
}

TEST_CASE("descriptions resolve to states") {
  const auto& m = jz();
  const Id hidden = m.ec.space->at("{a,b}");
  const auto d = induced_description(m.v, m.cover, hidden);
  CHECK(check_description(m.v, m.cover, d).coherent);
  const auto r = resolve_description(m.v, m.cover, d);
  CHECK(r.global == hidden);
  CHECK(r.reproduces);
  CHECK_FALSE(r.globally_defined);

  const auto ra = resolve_description(m.v, m.cover, induced_description(m.v, m.cover, m.real("a")));
  CHECK(ra.global == m.real("a"));
  CHECK(ra.globally_defined);

  auto bad = induced_description(m.v, m.cover, m.real("a"));
  const Effect unit = effect_unit(m.v.s());
  bool changed = false;
  for (std::size_t c = 0; c < m.cover.contexts.size(); ++c)
    for (std::size_t k = 0; k < m.cover.contexts[c].effects.size(); ++k)
      if (m.cover.contexts[c].effects[k] == unit) {
        bad.values[c][k] = BoolVal::No;
        changed = true;
      }
  REQUIRE(changed);
  CHECK_FALSE(check_description(m.v, m.cover, bad).valid);
  try {
    resolve_description(m.v, m.cover, bad);
    FAIL("a NO on the unit effect must be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::input);
  }
}

TEST_CASE("descriptions biject with states") {
  const auto& m = jz();
  const auto rep = verify_model_iso(m.v, m.cover);
  CHECK(rep.states == 9);
  CHECK(rep.descriptions == 9);
  CHECK(rep.routes_agree);
  CHECK(rep.bijective);
  CHECK(rep.meet_homomorphism);
  CHECK(rep.contextual);
  REQUIRE(rep.hidden_witness.has_value());
  CHECK_FALSE(m.v.is_real(*rep.hidden_witness));

  const Model z3(simplex(3));
  CHECK(z3.ec.hidden_count() == 0);
  const auto r3 = verify_model_iso(z3.v, z3.cover);
  CHECK(r3.bijective);
  CHECK_FALSE(r3.contextual);
}

TEST_CASE("property: reduction preserves joint compatibility") {
  const auto& m = jz();
  // Constant effects leave every tuple open and are what the reduction exists
  // to remove, so the direct search draws from the others.
  std::vector<Effect> all;
  const Effect unit = effect_unit(m.v.s());
  for (const auto& l : real_effects(m.v))
    if (l != Effect{} && l != unit && l != effect_bar(unit)) all.push_back(l);
  std::mt19937 rng(4242);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int t = 0; t < 150; ++t) {
    std::vector<Effect> ls;
    const int n = 1 + int(rng() % 3);
    for (int i = 0; i < n; ++i) ls.push_back(all[pick(rng)]);
    for (const auto& l : ls) CHECK(is_real_effect(m.v, l));
    const auto direct = find_joint_morphism(m.v, ls);
    CHECK(direct.has_value() == jointly_compatible(m.v, reduce_effects(m.v, ls)));
    if (direct) CHECK_FALSE(verify_joint_morphism(m.v, ls, *direct).has_value());
  }
}

TEST_CASE("property: induced descriptions are coherent and resolve back") {
  for (int n : {2, 3}) {
    const Model m(zprime(n));
    for (Id x = 0; x < m.v.s().size(); ++x) {
      const auto d = induced_description(m.v, m.cover, x);
      const auto chk = check_description(m.v, m.cover, d);
      CHECK(chk.valid);
      CHECK(chk.coherent);
      const auto r = resolve_description(m.v, m.cover, d);
      CHECK(r.global == x);
      CHECK(r.globally_defined == m.v.is_real(x));
    }
  }
}
