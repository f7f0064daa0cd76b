// SPDX-License-Identifier: MIT
#include <doctest.h>


#include "qlattice/chu.hpp"
#include "qlattice/error.hpp"
#include "qlattice/quantum.hpp"
#include "support.hpp"

using namespace qt;

namespace {

constexpr Id Y = 1, N = 2, B = 0;

Id coord(int t, int i) { return (t >> i & 1) ? N : Y; }

// Admissible (σ₁, σ₂) pairs of pures of a space.
std::vector<std::array<Id, 2>> choices(const RealSpace& rs) {
  std::vector<std::array<Id, 2>> out;
  for (Id s1 : rs.pures())
    for (Id s2 : rs.pures())
      if (s1 != s2 && s1 != rs.star_of(s2)) out.push_back({s1, s2});
  return out;
}

}  // namespace

TEST_CASE("property: pair traces agree with the generic normal form") {
  const auto& bp = bool_pair();
  for (std::uint32_t lam = 1; lam < (1u << 16); lam += 37) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        std::vector<Gen> gens;
        for (int t = 0; t < 16; ++t)
          if (lam >> t & 1u) gens.emplace_back(coord(t, i), coord(t, j));
        CHECK(pair_trace(Mask16(lam), i, j) == bp.normalize_general(gens));
      }
  }
  CHECK(pair_trace(Mask16(0xFFFF), 0, 1) == bp.full());
}

TEST_CASE("entangled marginals") {
  const auto z = zprime(2);
  const auto sc = make_bell(z, z);
  const auto& bp = bool_pair();
  CHECK(sc.left().space.label(sc.s1) == "a");
  CHECK(sc.left().space.label(sc.s2) == "b");
  CHECK_FALSE(sc.tensor.completion->is_real(sc.sigma));
  const auto phi = bell_marginals(sc);
  const std::array<std::vector<Gen>, 4> expect{std::vector<Gen>{{N, B}, {Y, N}}, std::vector<Gen>{{Y, B}, {N, Y}},
                                               std::vector<Gen>{{Y, N}, {B, Y}}, std::vector<Gen>{{B, B}}};
  for (int k = 0; k < 4; ++k) {
    REQUIRE(phi[k].size() == 1);
    CHECK(phi[k][0] == bp.normalize(expect[k]));
  }
  CHECK(marginal_name(phi[0]) == "N⊗⊥ ⊓ Y⊗N");
  CHECK(marginal_name(phi[3]) == "⊥⊗⊥");
  const auto ls = lambda_search(phi);
  CHECK_FALSE(ls.witness.has_value());
  CHECK(ls.scanned > 0);
  CHECK(bell_nonlocal(sc));

  CHECK_THROWS_AS(make_bell(z, z, sc.s1, sc.s1, sc.t1, sc.t2), Error);
  CHECK_THROWS_AS(make_bell(z, z, sc.s1, z->star_of(sc.s1), sc.t1, sc.t2), Error);
}

TEST_CASE("every admissible measurement choice is non-local") {
  for (int n : {2, 3}) {
    const auto z = zprime(n);
    const auto cs = choices(*z);
    const auto tensor = indeterministic_tensor(z, z);
    std::size_t runs = 0;
    for (const auto& [s1, s2] : cs)
      for (const auto& [t1, t2] : cs) {
        const auto sc = make_bell(tensor, s1, s2, t1, t2);
        CHECK(bell_nonlocal(sc));
        ++runs;
      }
    CHECK(runs == cs.size() * cs.size());
  }
}

TEST_CASE("real states have local models") {
  const auto z = zprime(2);
  const auto sc = make_bell(z, z);
  const auto& bp = bool_pair();
  for (Id x = 0; x < sc.tensor.reals.space->size(); ++x) {
    const auto s = with_state(sc, x);
    const auto phi = bell_marginals(s);
    for (const auto& m : phi) CHECK(m.size() == 1);
    const auto ls = lambda_search(phi);
    REQUIRE(ls.witness.has_value());
    CHECK_FALSE(bell_nonlocal(s));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(pair_trace(*ls.witness, i, 2 + j) == phi[2 * i + j][0]);
    const Mask16 c = constructive_lambda(s);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(pair_trace(c, i, 2 + j) == phi[2 * i + j][0]);
    (void)bp;
  }
}

TEST_CASE("product states factor into single-site outcomes") {
  const auto z = zprime(2);
  const auto sc = make_bell(z, z);
  const auto& prod = *sc.tensor.reals.product;
  for (std::size_t k = 0; k < prod.pure_count(); ++k) {
    const auto [p, q] = prod.pure_pair(k);
    const auto s = with_state(sc, sc.tensor.reals.id(prod.pure(p, q)));
    const std::array<Id, 4> out{sc.phi[0][p], sc.phi[1][p], sc.rho[0][q], sc.rho[1][q]};
    Mask16 box = 0;
    for (int t = 0; t < 16; ++t) {
      bool in = true;
      for (int i = 0; i < 4; ++i) in = in && (out[i] == B || coord(t, i) == out[i]);
      if (in) box |= Mask16(1u << t);
    }
    CHECK(constructive_lambda(s) == box);
  }
}

TEST_CASE("broadcasting") {
  for (const auto& rs : {boolean(), simplex(2), simplex(3)}) {
    const auto r = broadcast_obstruction(rs);
    CHECK(r.broadcasts);
    CHECK(r.simplex);
    CHECK(r.traces_verified);
    CHECK(r.search_confirms == true);
    REQUIRE(r.diagonal.size() == rs->size());
  }
  for (int n : {2, 3}) {
    const auto r = broadcast_obstruction(zprime(n));
    CHECK_FALSE(r.broadcasts);
    REQUIRE(r.pair.has_value());
    CHECK(r.bottom_via_first != r.bottom_via_second);
    CHECK(r.search_confirms == true);
    CHECK_FALSE(r.witness.empty());
  }
}
