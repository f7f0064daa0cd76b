// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "qlattice/chu.hpp"
#include "qlattice/error.hpp"
#include "qlattice/ontic.hpp"
#include "qlattice/tensor.hpp"
#include "support.hpp"

using namespace qt;

namespace {

// ε_l(σ) straight from the definition.
BoolVal eval_oracle(const StateSpace& s, const Effect& l, Id sigma) {
  if (l.yes && s.leq(*l.yes, sigma)) return BoolVal::Yes;
  if (l.no && s.leq(*l.no, sigma)) return BoolVal::No;
  return BoolVal::Bot;
}

Effect eff(const StateSpace& s, const char* yes, const char* no) {
  Effect l;
  if (yes) l.yes = s.at(yes);
  if (no) l.no = s.at(no);
  return l;
}

}  // namespace

TEST_CASE("evaluation") {
  const auto z = make_zprime(2);
  const auto& s = z.space;
  CHECK(evaluate(s, eff(s, "a", "a*"), s.at("a")) == BoolVal::Yes);
  CHECK(evaluate(s, eff(s, "a", "a*"), s.at("a*")) == BoolVal::No);
  CHECK(evaluate(s, eff(s, "a", "a*"), s.at("b")) == BoolVal::Bot);
  const Effect unit = effect_unit(s);
  for (Id x = 0; x < s.size(); ++x) {
    CHECK(evaluate(s, unit, x) == BoolVal::Yes);
    CHECK(evaluate(s, effect_bottom(), x) == BoolVal::Bot);
    CHECK(evaluate(s, effect_bar(unit), x) == BoolVal::No);
  }
}

TEST_CASE("effect meets and suprema") {
  const auto z = make_zprime(2);
  const auto& s = z.space;
  CHECK(effect_meet(s, eff(s, "a", nullptr), eff(s, "b", nullptr)) == effect_bottom());
  const Effect l = eff(s, "a", "a*");
  CHECK(effect_meet(s, l, effect_unit(s)) == eff(s, "a", nullptr));
  CHECK(effect_sup(s, l, l) == l);

  const auto z3 = make_simplex(3);
  CHECK_FALSE(effect_sup(z3.space, eff(z3.space, "u1", "u2"), eff(z3.space, "u2", "u3")).has_value());

  const auto zp = zprime(2);
  const auto t = build_tensor(zp, zp);
  const auto& ts = t.space->space;
  CHECK(effect_meet(ts, eff(ts, "a⊗a", nullptr), eff(ts, "a⊗b", nullptr)) == effect_bottom());
  const auto sup = effect_sup(ts, eff(ts, "a⊗b", "a*⊗b"), eff(ts, "a⊗b*", "a*⊗b*"));
  REQUIRE(sup.has_value());
  CHECK(*sup == eff(ts, "a⊗⊥", "a*⊗⊥"));
}

TEST_CASE("measurements and duals") {
  const auto z = make_zprime(2);
  const auto& s = z.space;
  const auto b = make_bool();
  const Effect l = eff(s, "a", "a*");
  const auto m = measurement_map(s, l);
  CHECK(check_morphism(s, b.space, m).ok);
  const auto f = dualize(s, b.space, m);
  const Effect yn{b.space.at("Y"), b.space.at("N")};
  CHECK(f.pullback(yn) == l);

  std::vector<Id> id(s.size());
  for (Id i = 0; i < s.size(); ++i) id[i] = i;
  const auto ident = dualize(s, s, id);
  for (const auto& e : enumerate_effects(s)) CHECK(ident.pullback(e) == e);

  // Constant bottom map preserves meets. The star of Z3 reverses order, so it
  // cannot; on Z'N it only permutes atoms and is an automorphism.
  CHECK(check_morphism(s, s, std::vector<Id>(s.size(), s.bottom())).ok);
  const auto z3 = make_simplex(3);
  std::vector<Id> star(z3.size(), z3.bottom());
  for (Id i = 0; i < z3.size(); ++i)
    if (z3.star[i]) star[i] = *z3.star[i];
  CHECK_FALSE(check_morphism(z3.space, z3.space, star).ok);
  CHECK_THROWS_AS(dualize(z3.space, z3.space, star), Error);
}

TEST_CASE("measurement on the completed Z'2 is a morphism") {
  const auto zp = zprime(2);
  const Completion c(zp);
  const auto ec = c.enumerate();
  const auto& s = *ec.space;
  const Effect l{ec.of_real[zp->space.at("a")], ec.of_real[zp->space.at("a*")]};
  const auto b = make_bool();
  CHECK(check_morphism(s, b.space, measurement_map(s, l)).ok);
}

TEST_CASE("states are recovered from their evaluations") {
  for (const auto& rs : {make_zprime(2), make_simplex(3), make_bool()}) {
    const auto& s = rs.space;
    const auto effects = enumerate_effects(s);
    for (Id a = 0; a < s.size(); ++a)
      CHECK(state_from_effect_map(s, effects, [&](const Effect& l) { return evaluate(s, l, a); }) == a);
  }
}

TEST_CASE("property: evaluation, meets and pullbacks against definitions") {
  std::mt19937 rng(7);
  std::vector<RealSpace> spaces{make_zprime(2), make_zprime(3), make_simplex(3), make_bool()};
  const auto lat = make_counterexample_lattice();
  for (const auto& rs : spaces) {
    const auto& s = rs.space;
    const auto effects = enumerate_effects(s);
    std::uniform_int_distribution<std::size_t> pick(0, effects.size() - 1);
    for (int trial = 0; trial < 400; ++trial) {
      const Effect& l1 = effects[pick(rng)];
      const Effect& l2 = effects[pick(rng)];
      const Effect m = effect_meet(s, l1, l2);
      for (Id x = 0; x < s.size(); ++x) {
        CHECK(evaluate(s, l1, x) == eval_oracle(s, l1, x));
        CHECK(evaluate(s, m, x) == bool_meet(evaluate(s, l1, x), evaluate(s, l2, x)));
        CHECK(evaluate(s, effect_bar(l1), x) == bool_bar(evaluate(s, l1, x)));
      }
    }
    // Random forward maps: the verdict matches a brute meet check.
    std::uniform_int_distribution<Id> img(0, Id(s.size() - 1));
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Id> f(s.size());
      for (auto& y : f) y = img(rng);
      if (trial % 2) f[s.bottom()] = s.bottom();
      bool ok = true;
      for (Id a = 0; a < s.size(); ++a)
        for (Id b = 0; b < s.size(); ++b) ok = ok && f[s.meet(a, b)] == s.meet(f[a], f[b]);
      CHECK(check_morphism(s, s, f).ok == ok);
      if (!ok) continue;
      const auto g = dualize(s, s, f);
      for (const auto& l : effects)
        for (Id x = 0; x < s.size(); ++x) CHECK(evaluate(s, g.pullback(l), x) == evaluate(s, l, f[x]));
    }
    // Measurements are always morphisms into 𝔅, and evaluate as m_l.
    const auto b = make_bool();
    for (const auto& l : effects) {
      const auto m = measurement_map(s, l);
      CHECK(check_morphism(s, b.space, m).ok);
      for (Id x = 0; x < s.size(); ++x) CHECK(BoolVal(m[x]) == evaluate(s, l, x));
    }
  }
  (void)lat;
}
