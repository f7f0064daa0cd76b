// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "qlattice/error.hpp"
#include "support.hpp"

using namespace qt;

TEST_CASE("boolean domain tables") {
  using B = BoolVal;
  CHECK(bool_meet(B::Yes, B::No) == B::Bot);
  CHECK(bool_bullet(B::Yes, B::No) == B::No);
  CHECK(bool_bar(B::Yes) == B::No);
  CHECK(bool_meet(B::Bot, B::Bot) == B::Bot);
  CHECK(bool_bullet(B::Bot, B::Bot) == B::Bot);
  CHECK(bool_bar(B::Bot) == B::Bot);
  CHECK(bool_bullet(B::No, B::Yes) == B::No);
  CHECK(bool_bar(B::No) == B::Yes);
  for (B x : {B::Yes, B::No, B::Bot}) {
    CHECK(bool_bullet(x, B::Yes) == x);
    CHECK(bool_bullet(x, B::No) == B::No);
    CHECK(bool_meet(x, x) == x);
    CHECK(bool_bar(bool_bar(x)) == x);
    for (B y : {B::Yes, B::No, B::Bot}) {
      CHECK(bool_meet(x, y) == bool_meet(y, x));
      CHECK(bool_bullet(x, y) == bool_bullet(y, x));
      CHECK(bool_leq(bool_meet(x, y), x));
      // x • (y ∧ z) = (x • y) ∧ (x • z)
      for (B z : {B::Yes, B::No, B::Bot}) CHECK(bool_bullet(x, bool_meet(y, z)) == bool_meet(bool_bullet(x, y), bool_bullet(x, z)));
    }
  }
}

TEST_CASE("meets in standard spaces") {
  const auto b = make_bool();
  CHECK(b.space.meet(b.space.at("Y"), b.space.at("N")) == b.bottom());
  const auto z = make_zprime(2);
  const IdSet a{z.space.at("a")};
  CHECK(z.space.meet_all(a) == z.space.at("a"));
  const IdSet ab = ids(z.space, {"a", "b"});
  CHECK(z.space.meet_all(ab) == z.bottom());
}

TEST_CASE("structure reports") {
  const auto z3 = make_simplex(3);
  const auto r = structure_report(z3.space);
  CHECK(r.maximal == ids(z3.space, {"u1", "u2", "u3"}));
  CHECK(r.generated_by_maximals);
  CHECK(r.distributive);
  CHECK(r.finite_rank);

  const auto b = make_bool();
  const auto rb = structure_report(b.space);
  CHECK(rb.maximal == ids(b.space, {"Y", "N"}));
  CHECK(rb.generated_by_maximals);

  const auto lat = make_counterexample_lattice();
  const auto rl = structure_report(lat);
  CHECK(lat.size() == 10);
  CHECK(rl.maximal.size() == 4);
  CHECK(rl.generated_by_maximals);
  CHECK_FALSE(rl.distributive);
  REQUIRE(rl.distributivity_witness);
}

TEST_CASE("covering pairs of Z3") {
  const auto z3 = make_simplex(3);
  const auto pairs = z3.space.covering_pairs();
  // Three atoms above bottom, each atom below two pures.
  CHECK(pairs.size() == 9);
  for (const auto& [a, b] : pairs) CHECK(brute_covers(z3.space, a, b));
}

TEST_CASE("malformed spaces are rejected") {
  // Two incomparable minimal elements: no bottom.
  CHECK_THROWS_AS(StateSpace({"x", "y"}, {}), Error);
  // A cycle.
  CHECK_THROWS_AS(StateSpace({"0", "x", "y"}, {{0, 1}, {1, 2}, {2, 1}}), Error);
  // Two maximal lower bounds for {p, q}.
  CHECK_THROWS_AS(StateSpace({"0", "x", "y", "p", "q"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}}), Error);
}

namespace {

// A random family of subsets of {0..5} closed under intersection, ordered by
// inclusion. Meet is intersection; it is an independent model of a space.
struct SetFamily {
  std::vector<unsigned> sets;  // sorted
  StateSpace space;
};

SetFamily random_family(std::mt19937& rng) {
  std::set<unsigned> fam;
  std::uniform_int_distribution<unsigned> pick(0, 63);
  const int seeds = 2 + int(rng() % 5);
  for (int i = 0; i < seeds; ++i) fam.insert(pick(rng));
  bool grown = true;
  while (grown) {
    grown = false;
    const std::vector<unsigned> cur(fam.begin(), fam.end());
    for (unsigned a : cur)
      for (unsigned b : cur) grown |= fam.insert(a & b).second;
  }
  SetFamily f;
  f.sets.assign(fam.begin(), fam.end());
  std::vector<std::string> labels;
  std::vector<std::pair<Id, Id>> leq;
  for (std::size_t i = 0; i < f.sets.size(); ++i) {
    labels.push_back("s" + std::to_string(f.sets[i]));
    for (std::size_t j = 0; j < f.sets.size(); ++j)
      if (i != j && (f.sets[i] & ~f.sets[j]) == 0) leq.emplace_back(Id(i), Id(j));
  }
  f.space = StateSpace(labels, leq);
  return f;
}

}  // namespace

TEST_CASE("property: intersection families agree with the order model") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_family(rng);
    const auto& s = f.space;
    std::map<unsigned, Id> id_of;
    for (Id i = 0; i < s.size(); ++i) id_of[f.sets[i]] = i;
    CHECK(f.sets[s.bottom()] == f.sets.front());
    for (Id a = 0; a < s.size(); ++a)
      for (Id b = 0; b < s.size(); ++b) {
        CHECK(s.leq(a, b) == ((f.sets[a] & ~f.sets[b]) == 0));
        CHECK(s.meet(a, b) == id_of.at(f.sets[a] & f.sets[b]));
        CHECK(brute_meet(s, a, b) == s.meet(a, b));
        CHECK(s.covers(a, b) == brute_covers(s, a, b));
        // Least member containing both, if any.
        std::optional<unsigned> lub;
        for (unsigned x : f.sets)
          if ((f.sets[a] | f.sets[b]) == ((f.sets[a] | f.sets[b]) & x)) lub = lub ? (*lub & x) : x;
        const auto j = s.join(a, b);
        CHECK(j.has_value() == lub.has_value());
        if (j && lub) CHECK(f.sets[*j] == *lub);
      }
    // Maximal elements and generation by maximal elements.
    IdSet maxi;
    for (Id a = 0; a < s.size(); ++a) {
      bool top = true;
      for (Id b = 0; b < s.size(); ++b) top = top && !(a != b && (f.sets[a] & ~f.sets[b]) == 0);
      if (top) maxi.push_back(a);
    }
    CHECK(s.maximal() == maxi);
    bool generated = true;
    for (Id a = 0; a < s.size(); ++a) {
      unsigned m = 63;
      for (Id p : maxi)
        if ((f.sets[a] & ~f.sets[p]) == 0) m &= f.sets[p];
      generated = generated && m == f.sets[a];
    }
    CHECK(generated_by_maximals(s) == generated);
    CHECK(finite_rank_condition(s));
  }
}

TEST_CASE("covering properties of pure meets") {
  const auto z = make_zprime(3);
  const auto c1 = pure_meet_covering(z.space);
  CHECK(c1.pass());
  CHECK(c1.checked == 15);
  // Every pure meet in Z'N is bottom, so the second hypothesis never holds.
  CHECK(pure_meet_second_covering(z.space).checked == 0);

  // In the counterexample lattice u1 ⊓ ... is not covered by every pure.
  const auto lat = make_counterexample_lattice();
  const auto c2 = pure_meet_covering(lat);
  CHECK(c2.checked == 6);
}
