// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <set>

#include "qlattice/chu.hpp"
#include "qlattice/error.hpp"
#include "qlattice/ontic.hpp"
#include "qlattice/tensor.hpp"
#include "support.hpp"

using namespace qt;

namespace {

struct TwoQubit {
  RealSpacePtr z = zprime(2);
  TensorSpace t = build_tensor(z, z);
  const StateSpace& s() const { return t.space->space; }
  Id elem(std::vector<std::pair<const char*, const char*>> gens) const {
    std::vector<Gen> g;
    for (auto [x, y] : gens) g.emplace_back(z->space.at(x), z->space.at(y));
    return t.id(t.product->normalize(g));
  }
};

const TwoQubit& two_qubit() {
  static const TwoQubit q;
  return q;
}

}  // namespace

TEST_CASE("pre-closure counterexample") {
  const auto lat = make_counterexample_lattice();
  const IdSet u = ids(lat, {"u1", "u2", "u3"});
  const IdSet c1 = closure(lat, u, ClosureMode::pre);
  CHECK(c1 == ids(lat, {"w", "z", "y"}));
  CHECK(pre_closure(lat, c1) == ids(lat, {"w", "z", "y", "x"}));
  CHECK(pre_closure_literal(lat, u) == c1);
  const auto chain = closure_chain(lat, u);
  REQUIRE(chain.size() >= 3);
  CHECK(chain[1] == c1);
  CHECK(chain.back() == closure(lat, u, ClosureMode::full));
}

TEST_CASE("closure of singletons and of the entangled pair") {
  const auto z = make_zprime(2);
  for (Id x : non_bottom(z.space)) CHECK(closure(z.space, IdSet{x}, ClosureMode::full) == IdSet{x});

  const auto& q = two_qubit();
  const Id ent = q.elem({{"a", "a"}, {"b", "b"}});
  const Id star = *q.t.space->star[q.elem({{"a", "a"}})];
  const IdSet u = normalized(IdSet{ent, star});
  const IdSet expect = normalized(IdSet{ent, q.elem({{"a", "a*"}, {"a*", "b"}}), q.elem({{"b", "a*"}, {"a*", "a"}})});
  CHECK(closure(q.s(), u, ClosureMode::full) == expect);
  CHECK(is_admissible(*q.t.space, u));
}

TEST_CASE("admissibility") {
  const auto z = make_zprime(2);
  CHECK_FALSE(is_admissible(z, ids(z.space, {"a", "a*"})));
  CHECK(is_admissible(z, ids(z.space, {"a", "b"})));
  const auto& q = two_qubit();
  const IdSet pair = normalized(IdSet{q.elem({{"a", "a"}}), q.elem({{"b", "a"}})});
  CHECK(in_K_hat(*q.t.space, pair));
  CHECK_FALSE(is_admissible(*q.t.space, pair));
}

TEST_CASE("non-completeness witness on the two-qubit reals") {
  const auto& q = two_qubit();
  const auto nc = non_completeness(*q.t.space);
  REQUIRE(nc.witnessed());
  CHECK(nc.pairs > 0);
  CHECK(nc.inadmissible == nc.pairs);
  const IdSet start{(*nc.pair)[0], (*nc.pair)[1]};
  CHECK(in_K_hat(*q.t.space, start));
  CHECK(q.s().meet(start[0], start[1]) != q.s().bottom());
  REQUIRE(nc.chain.size() >= 2);
  CHECK(nc.chain.front() == start);
  CHECK(nc.chain.back() == closure(q.s(), start, ClosureMode::full));
  CHECK_FALSE(in_K(*q.t.space, nc.chain.back()));
  // Each step is the pre-closure of the previous one.
  for (std::size_t i = 0; i + 1 < nc.chain.size(); ++i) CHECK(nc.chain[i + 1] == pre_closure(q.s(), nc.chain[i]));
  REQUIRE(nc.clash);
  CHECK(q.s().leq(q.t.space->star_of((*nc.clash)[0]), (*nc.clash)[1]));
  REQUIRE(nc.sigma3);
  CHECK(q.s().is_maximal(*nc.sigma3));

  // On Z'N pure meets are bottom, so no pair qualifies.
  CHECK(non_completeness(make_zprime(3)).pairs == 0);
}

TEST_CASE("completion sizes") {
  const Completion c2(zprime(2));
  const auto e2 = c2.enumerate();
  CHECK(e2.theta.size() == 9);
  CHECK(e2.hidden_count() == 4);
  std::set<std::string> hidden;
  for (Id i = 0; i < e2.theta.size(); ++i)
    if (!e2.real[i]) hidden.insert(e2.space->label(i));
  CHECK(hidden == std::set<std::string>{"{a,b}", "{a,b*}", "{a*,b}", "{a*,b*}"});
  CHECK(Completion(simplex(3)).enumerate().hidden_count() == 0);
  CHECK(Completion(zprime(3)).enumerate().hidden_count() == 20);
  CHECK_THROWS_AS(Completion(zprime(4)).enumerate(10), CapExceeded);
}

TEST_CASE("completion operations") {
  const auto z = zprime(2);
  const Completion c(z);
  const auto& s = z->space;
  const auto a = c.real(s.at("a"));
  CHECK(c.theta(a) == IdSet{s.at("a")});
  const auto ab = *c.from_set(ids(s, {"a", "b"}));
  const auto abs = *c.from_set(ids(s, {"a", "b*"}));
  CHECK(c.meet(ab, abs) == a);
  CHECK(c.join(a, c.real(s.at("b"))) == ab);
  CHECK_FALSE(c.join(a, c.real(s.at("a*"))).has_value());
  CHECK_FALSE(c.from_set(ids(s, {"a", "a*"})).has_value());
  CHECK(c.name(ab) == "{a,b}");
}

TEST_CASE("lifted morphisms") {
  const auto z = zprime(2);
  const auto& s = z->space;
  const Completion c(z);
  std::vector<Id> id(s.size());
  for (Id i = 0; i < s.size(); ++i) id[i] = i;
  const auto lid = lift_morphism(c, c, id);
  const auto ec = c.enumerate();
  for (const auto& t : ec.theta) {
    const auto e = *c.from_set(t);
    CHECK(lid(e) == e);
  }
  std::vector<Id> swap(s.size());
  swap[s.bottom()] = s.bottom();
  swap[s.at("a")] = s.at("b");
  swap[s.at("b")] = s.at("a");
  swap[s.at("a*")] = s.at("b*");
  swap[s.at("b*")] = s.at("a*");
  const auto ab = *c.from_set(ids(s, {"a", "b"}));
  CHECK(lift_morphism(c, c, swap)(ab) == ab);

  const auto b = boolean();
  const Completion cb(b);
  const Effect l{s.at("a"), s.at("a*")};
  const auto m = lift_morphism(c, cb, measurement_map(s, l));
  CHECK(m(ab) == cb.real(b->space.at("Y")));
  // Restriction to reals is the original map.
  const auto mm = measurement_map(s, l);
  for (Id x = 0; x < s.size(); ++x) CHECK(m(c.real(x)) == cb.real(mm[x]));
}

TEST_CASE("property: fast pre-closure matches the literal definition") {
  std::mt19937 rng(4242);
  std::vector<StateSpace> spaces{make_zprime(3).space, make_simplex(3).space, make_simplex(4).space,
                                 make_counterexample_lattice(), two_qubit().s()};
  for (const auto& s : spaces) {
    const IdSet pool = non_bottom(s);
    const int trials = s.size() > 50 ? 60 : 300;
    for (int t = 0; t < trials; ++t) {
      const IdSet u = random_subset(rng, pool, s.size() > 50 ? 3 : 5);
      const IdSet fast = pre_closure(s, u);
      CHECK(fast == pre_closure_literal(s, u));
      CHECK(preorder_leq(s, u, fast));  // expansive
      const IdSet cl = closure(s, u, ClosureMode::full);
      CHECK(closure(s, cl, ClosureMode::full) == cl);
      CHECK(max_elements(s, cl) == cl);
      // Monotone: adding an element gives a larger pre-closure.
      IdSet v = u;
      v.push_back(pool[rng() % pool.size()]);
      v = normalized(v);
      CHECK(preorder_leq(s, fast, pre_closure(s, v)));
    }
  }
}

TEST_CASE("property: exhaustive idempotency on small spaces") {
  std::vector<StateSpace> spaces{make_bool().space,    make_simplex(2).space, make_simplex(3).space,
                                 make_zprime(2).space, make_zprime(3).space,  make_zprime(5).space,
                                 make_counterexample_lattice()};
  for (const auto& s : spaces)
    for (const auto& u : all_subsets(non_bottom(s))) {
      const IdSet c = closure(s, u, ClosureMode::full);
      CHECK(closure(s, c, ClosureMode::full) == c);
    }
}

TEST_CASE("property: Galois law, fundamental formula and Theta") {
  for (int n : {2, 3, 4}) {
    const auto z = zprime(n);
    const auto& s = z->space;
    const Completion c(z);
    const auto ec = c.enumerate();
    std::set<IdSet> seen;
    for (const auto& t : ec.theta) {
      CHECK(seen.insert(t).second);
      CHECK(is_admissible(*z, t));
      CHECK(closure(s, t, ClosureMode::full) == t);
      const auto e = *c.from_set(t);
      CHECK(c.theta(e) == t);
      // Λ∘Θ is the identity.
      std::vector<Completion::Elem> parts;
      for (Id x : t) parts.push_back(c.real(x));
      CHECK(c.join_all(parts) == e);
      for (Id kappa : non_bottom(s)) {
        bool found = false;
        for (Id phi : t) {
          bool dom = true;
          for (Id chi : t) dom = dom && s.leq(s.meet(kappa, chi), s.meet(kappa, phi));
          found = found || dom;
        }
        CHECK(found);
      }
    }
    for (const auto& tj : ec.theta)
      for (const auto& ts : ec.theta) {
        const auto j = *c.from_set(tj), sg = *c.from_set(ts);
        CHECK(preorder_leq(s, tj, ts) == c.leq(j, sg));
      }
  }
}
