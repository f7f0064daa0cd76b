// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <algorithm>
#include <set>

#include "qlattice/error.hpp"
#include "qlattice/geometry.hpp"
#include "qlattice/quantum.hpp"
#include "support.hpp"

using namespace qt;

namespace {

struct Fixture {
  RealSpacePtr z = zprime(2);
  AmbientPtr amb = make_ambient({z, z});
  GeometrySet gc = build_geometry(amb, GeometryVariant::check);
  GeometrySet gw = build_geometry(amb, GeometryVariant::widecheck);
  Geometry check{gc};
  Geometry wide{gw};
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

// The completion element of the ambient matching a state of the two-factor
// indeterministic product, found through pure coordinates.
std::optional<Point> locate(const Fixture& f, const BellScenario& sc, Completion::Elem sigma) {
  const auto& prod = *sc.tensor.reals.product;
  const auto& nf = f.amb->nfold.space->space;
  IdSet mapped;
  for (Id r : sc.tensor.completion->theta(sigma)) {
    IdSet pures;
    const Mask m = sc.tensor.reals.mask_of[r];
    for (std::size_t k = 0; k < prod.pure_count(); ++k)
      if (m >> k & 1u) {
        const auto [x, y] = prod.pure_pair(k);
        pures.push_back(f.amb->pure_of_coords.at({x, y}));
      }
    mapped.push_back(nf.meet_all(pures));
  }
  std::sort(mapped.begin(), mapped.end());
  const auto e = f.amb->completion->from_set(mapped);
  if (!e) return std::nullopt;
  return f.gw.find(*e);
}

}  // namespace

TEST_CASE("point sets and cover") {
  const auto& f = fx();
  CHECK(f.gc.size() == 112);
  CHECK(f.gc.pure_count == 16);
  CHECK(f.gw.size() == 80);
  CHECK(f.gw.pure_count == 16);
  CHECK(consistency_cover(f.check).size() == 481);
  for (Point p = 0; p < f.gw.size(); ++p) {
    const auto q = f.gc.find(f.gw.elems[p]);
    REQUIRE(q.has_value());
    CHECK(f.gc.widecheck[*q]);
  }
  std::size_t flagged = 0;
  for (Point p = 0; p < f.gc.size(); ++p) flagged += f.gc.widecheck[p];
  CHECK(flagged == f.gw.size());
  for (Point p = f.gc.pure_count; p < f.gc.size(); ++p)
    CHECK(f.amb->completion->theta(f.gc.elems[p]).size() == 3);
}

TEST_CASE("colinearity") {
  const auto& f = fx();
  const auto& g = f.check;
  const auto cover = consistency_cover(g);
  std::mt19937 rng(9);
  for (int t = 0; t < 300; ++t) {
    const PointSet& u = cover[rng() % cover.size()];
    const Point a = u[rng() % u.size()], b = u[rng() % u.size()], c = u[rng() % u.size()];
    CHECK(g.is_consistent(u));
    CHECK(g.colinear(u, a, b, b));
    CHECK(g.colinear(u, a, a, b));
    const bool abc = g.colinear(a, b, c);
    CHECK(abc == g.colinear(b, a, c));
    CHECK(abc == g.colinear(c, b, a));
    CHECK(abc == g.colinear(a, c, b));
    if (a != b) {
      const auto l = g.line(a, b);
      CHECK(std::binary_search(l.begin(), l.end(), a));
      CHECK(std::binary_search(l.begin(), l.end(), b));
      CHECK(std::binary_search(l.begin(), l.end(), c) == g.colinear(a, b, c));
    }
  }
  for (const auto& sp : starred_planes(g)) {
    CHECK_FALSE(g.colinear(sp.triple[0], sp.triple[1], sp.triple[2]));
    CHECK(g.plane(sp.triple[0], sp.triple[1], sp.triple[2]) == sp.points);
  }
}

TEST_CASE("the entangled Bell state is a widecheck point") {
  const auto& f = fx();
  const auto sc = make_bell(f.z, f.z);
  const auto chi = locate(f, sc, sc.sigma);
  REQUIRE(chi.has_value());
  CHECK(f.gw.hidden(*chi));
  CHECK(f.amb->completion->theta(f.gw.elems[*chi]).size() == 3);
}

TEST_CASE("projective report") {
  const auto& f = fx();
  const auto rep = verify_projective(f.check, default_scan(f.gc));
  CHECK(rep.points == 112);
  CHECK(rep.hidden == 96);
  CHECK(rep.cover_size == 481);
  for (const auto& c : rep.checks) {
    INFO(c.name);
    CHECK(c.pass());
    CHECK(c.checked > 0);
  }
  CHECK(rep.pass());
  REQUIRE(rep.find("lambdawr"));
  REQUIRE(rep.find("theta size"));
  CHECK(rep.find("theta size")->checked == 96);
  CHECK(rep.find("pure consistency is wr")->checked == 256);
  CHECK(rep.construction_witness_hits > 0);
}

TEST_CASE("ortho report: laws hold, irreducibility and the type structure do not") {
  const auto& f = fx();
  const auto rep = verify_ortho(f.wide, default_scan(f.gw));
  for (const char* n : {"O1", "O2", "O3", "O4", "orthocomplete type 2 is widecheck"}) {
    INFO(n);
    REQUIRE(rep.find(n));
    CHECK(rep.find(n)->pass());
  }
  CHECK_FALSE(rep.pass());

  const auto* irr = rep.find("irreducibility");
  REQUIRE(irr);
  CHECK(irr->checked == 1456);
  CHECK(irr->failures == 16);
  REQUIRE(irr->witness.size() == 2);
  // Re-derive the failure: no third consistent widecheck point completes the line.
  const Point a = irr->witness[0], b = irr->witness[1];
  CHECK(f.wide.consistent(a, b));
  for (Point k = 0; k < f.gw.size(); ++k) {
    if (k == a || k == b || !f.wide.consistent(k, a) || !f.wide.consistent(k, b)) continue;
    if (!f.wide.colinear(k, a, b)) continue;
    std::vector<Point> u{a, b, k};
    std::sort(u.begin(), u.end());
    CHECK_FALSE(f.wide.orthogonally_complete(u));
  }

  CHECK(rep.find("consistent types")->failures == 96);
  CHECK(rep.find("widecheck type 2 structure")->checked == 448);
  CHECK(rep.find("widecheck type 2 structure")->failures == 384);
}

TEST_CASE("sampled scan agrees with the exhaustive verdicts") {
  const auto& f = fx();
  ScanOptions opt;
  opt.exhaustive = false;
  opt.samples = 300;
  opt.seed = 77;
  const auto rep = verify_projective(f.check, opt);
  CHECK(rep.pass());
  const auto full = verify_projective(f.check, default_scan(f.gc));
  for (const char* n : {"sheaf", "VY1", "VY2", "colinearity symmetry"}) {
    INFO(n);
    CHECK(rep.find(n)->checked < full.find(n)->checked);
  }
  const auto again = verify_projective(f.check, opt);
  REQUIRE(again.checks.size() == rep.checks.size());
  for (std::size_t i = 0; i < rep.checks.size(); ++i) CHECK(again.checks[i].checked == rep.checks[i].checked);
}

TEST_CASE("three factors exceed the default caps") {
  const auto z = zprime(2);
  CHECK_THROWS_AS(build_geometry(make_ambient({z, z, z}), GeometryVariant::check), CapExceeded);
}
