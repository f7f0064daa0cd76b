// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "qlattice/classify.hpp"
#include "qlattice/ontic.hpp"
#include "support.hpp"

using namespace qt;

TEST_CASE("standard spaces") {
  const auto z = make_zprime(2);
  CHECK(z.size() == 5);
  CHECK(z.pures().size() == 4);
  CHECK(z.star_of(z.space.at("a")) == z.space.at("a*"));
  CHECK(z.star_of(z.space.at("b*")) == z.space.at("b"));

  const auto z3 = make_simplex(3);
  CHECK(z3.size() == 7);
  CHECK(z3.star_of(z3.space.at("u1")) == z3.space.meet(z3.space.at("u2"), z3.space.at("u3")));

  const auto b = make_bool();
  CHECK(b.star_of(b.space.at("Y")) == b.space.at("N"));
  for (const auto& rs : {z, z3, b, make_zprime(4), make_simplex(4)}) CHECK(validate_real(rs).empty());
}

TEST_CASE("invalid star is reported") {
  auto z = make_zprime(2);
  const Id a = z.space.at("a");
  const Id as = z.space.at("a*");
  z.star[a] = a;
  z.star[as] = as;
  const auto v = validate_real(z);
  REQUIRE_FALSE(v.empty());
  bool bounded = false;
  for (const auto& x : v) bounded = bounded || (x.axiom == "no common upper bound" && x.a == a);
  CHECK(bounded);
}

TEST_CASE("the simplex star is the only star") {
  for (int n : {2, 3}) {
    const auto z = make_simplex(n);
    const IdSet nb = non_bottom(z.space);
    std::size_t valid = 0;
    std::vector<std::size_t> digit(nb.size(), 0);
    while (true) {
      RealSpace cand = z;
      cand.star.assign(z.size(), std::nullopt);
      for (std::size_t i = 0; i < nb.size(); ++i) cand.star[nb[i]] = nb[digit[i]];
      if (validate_real(cand).empty()) {
        ++valid;
        CHECK(cand.star == z.star);
      }
      std::size_t k = 0;
      while (k < digit.size() && ++digit[k] == nb.size()) digit[k++] = 0;
      if (k == digit.size()) break;
    }
    CHECK(valid == 1);
  }
}

TEST_CASE("property: star is an order-reversing involution") {
  for (const auto& rs : {make_zprime(2), make_zprime(3), make_simplex(3), make_simplex(4), make_bool()}) {
    const auto& s = rs.space;
    IdSet image;
    for (Id a : non_bottom(s)) {
      CHECK(rs.star_of(rs.star_of(a)) == a);
      CHECK_FALSE(s.bounded(a, rs.star_of(a)));
      image.push_back(rs.star_of(a));
      for (Id b : non_bottom(s))
        if (s.leq(a, b)) CHECK(s.leq(rs.star_of(b), rs.star_of(a)));
    }
    CHECK(normalized(image) == non_bottom(s));
  }
}

TEST_CASE("classification") {
  const auto c3 = classify(simplex(3));
  CHECK(c3.deterministic);
  CHECK_FALSE(c3.completely_indeterministic);
  const auto cz = classify(zprime(2));
  CHECK_FALSE(cz.deterministic);
  CHECK(cz.completely_indeterministic);
  CHECK(cz.linear);
  CHECK(classify(boolean()).deterministic);
  for (int n : {2, 3, 4}) CHECK(classify(simplex(n)).deterministic == is_simplex(make_simplex(n)));
  CHECK_FALSE(is_simplex(make_zprime(3)));
}

TEST_CASE("orthoclosure on the completed Z'2") {
  const auto zp = zprime(2);
  const Completion c(zp);
  const auto ec = c.enumerate();
  const auto& s = *ec.space;
  const auto empty = orthoclosure(c, ec, {});
  IdSet all;
  for (Id i = 0; i < s.size(); ++i) all.push_back(i);
  CHECK(empty.orthogonal == all);

  const auto oa = orthoclosure(c, ec, IdSet{s.at("a")});
  CHECK(oa.orthogonal == ids(s, {"a*", "{a*,b}", "{a*,b*}"}));
  CHECK(oa.double_orthogonal == ids(s, {"a", "{a,b}", "{a,b*}"}));

  CHECK(orthoclosure(c, ec, IdSet{s.bottom()}).orthogonal.empty());
}

TEST_CASE("property: orthoclosure laws on random subsets") {
  std::mt19937 rng(99);
  for (int n : {2, 3}) {
    const auto zp = zprime(n);
    const Completion c(zp);
    const auto ec = c.enumerate();
    IdSet all;
    for (Id i = 0; i < ec.space->size(); ++i) all.push_back(i);
    auto subset_of = [](const IdSet& a, const IdSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
    for (int trial = 0; trial < 150; ++trial) {
      const IdSet s = random_subset(rng, all, 4);
      const IdSet t = normalized([&] {
        IdSet x = s;
        const IdSet extra = random_subset(rng, all, 3);
        x.insert(x.end(), extra.begin(), extra.end());
        return x;
      }());
      const auto os = orthoclosure(c, ec, s);
      CHECK(subset_of(s, os.double_orthogonal));
      CHECK(orthogonal_set(c, ec, os.double_orthogonal) == os.orthogonal);
      CHECK(subset_of(orthogonal_set(c, ec, t), os.orthogonal));
      IdSet both;
      std::set_intersection(os.double_orthogonal.begin(), os.double_orthogonal.end(), os.orthogonal.begin(),
                            os.orthogonal.end(), std::back_inserter(both));
      CHECK(both.empty());
    }
  }
}
