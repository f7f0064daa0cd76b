// SPDX-License-Identifier: MIT
#include "qlattice/geometry.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "qlattice/error.hpp"

namespace qlattice {

Id Ambient::with_coord(Id nu, std::size_t j, Id a) const {
  auto c = coords(nu);
  c.at(j) = a;
  return pure_of_coords.at(c);
}

Id Ambient::delta(Id nu, std::size_t j, std::size_t k, Id a, Id b) const {
  auto c = coords(nu);
  c.at(j) = a;
  c.at(k) = b;
  return pure_of_coords.at(c);
}

bool Ambient::wr(Id a, Id b) const {
  const auto& ca = coords(a);
  const auto& cb = coords(b);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < ca.size(); ++i) diff += ca[i] != cb[i];
  return diff <= 2;
}

AmbientPtr make_ambient(const std::vector<RealSpacePtr>& factors, std::size_t cap) {
  auto amb = std::make_shared<Ambient>();
  amb->nfold = nfold_tensor(factors, cap);
  amb->completion = std::make_shared<Completion>(amb->nfold.space);
  for (Id p : amb->nfold.space->pures()) amb->pure_of_coords.emplace(amb->nfold.coords[p], p);
  return amb;
}

Id GeometrySet::pure(Point p) const {
  if (hidden(p)) throw Error(ErrorKind::input, "point " + std::to_string(p) + " is hidden");
  return ambient->base().pures()[p];
}

std::optional<Point> GeometrySet::find(Completion::Elem e) const {
  auto it = index.find(e);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::string GeometrySet::name(Point p) const { return ambient->completion->name(elems.at(p)); }

std::string variant_name(GeometryVariant v) { return v == GeometryVariant::check ? "check" : "widecheck"; }

GeometrySet build_geometry(const AmbientPtr& ambient, GeometryVariant variant, std::size_t cap) {
  const RealSpace& base = ambient->base();
  const StateSpace& s = base.space;
  const Completion& comp = *ambient->completion;
  const IdSet& pures = base.pures();

  // γ = ν ⊓ φ with γ ⋖ ν and γ ⋖ φ, first (ν, φ) kept per γ
  std::map<Id, std::pair<Id, Id>> gammas;
  for (std::size_t i = 0; i < pures.size(); ++i)
    for (std::size_t j = 0; j < pures.size(); ++j) {
      if (i == j) continue;
      const Id g = s.meet(pures[i], pures[j]);
      if (s.covers(g, pures[i]) && s.covers(g, pures[j])) gammas.try_emplace(g, pures[i], pures[j]);
    }

  std::map<Completion::Elem, std::array<Id, 3>> wide, wide_or_check;
  auto consider = [&](std::map<Completion::Elem, std::array<Id, 3>>& out, Id mu, Id gamma, std::array<Id, 3> org) {
    const Id ms = base.star_of(mu);
    if (s.leq(ms, gamma)) return;
    auto j = comp.join(comp.real(ms), comp.real(gamma));
    if (!j || comp.is_real(*j)) return;
    out.try_emplace(*j, org);
    if (out.size() > cap) throw CapExceeded("hidden geometry points", out.size());
  };
  for (Id mu : pures)
    for (Id phi : pures) {
      if (mu == phi) continue;
      const Id g = s.meet(mu, phi);
      if (s.covers(g, mu) && s.covers(g, phi)) consider(wide, mu, g, {mu, mu, phi});
    }
  if (variant == GeometryVariant::check) {
    for (const auto& [g, nf] : gammas)
      for (Id mu : pures) consider(wide_or_check, mu, g, {mu, nf.first, nf.second});
  } else {
    wide_or_check = wide;
  }

  GeometrySet gs;
  gs.ambient = ambient;
  gs.variant = variant;
  for (Id p : pures) {
    gs.elems.push_back(comp.real(p));
    gs.widecheck.push_back(true);
    gs.origin.push_back({p, p, p});
  }
  gs.pure_count = pures.size();
  std::vector<std::pair<IdSet, Completion::Elem>> hidden;
  for (const auto& [e, org] : wide_or_check) hidden.emplace_back(comp.theta(e), e);
  std::sort(hidden.begin(), hidden.end());
  for (const auto& [t, e] : hidden) {
    gs.elems.push_back(e);
    gs.widecheck.push_back(wide.count(e) > 0);
    gs.origin.push_back(wide.count(e) ? wide.at(e) : wide_or_check.at(e));
  }
  for (Point p = 0; p < gs.elems.size(); ++p) gs.index.emplace(gs.elems[p], p);
  return gs;
}

Geometry::Geometry(const GeometrySet& g) : g_(g) {
  const std::size_t n = g.size();
  const StateSpace& s = g.ambient->base().space;
  const Completion& comp = completion();
  std::vector<IdSet> theta(n);
  for (Point p = 0; p < n; ++p) theta[p] = comp.theta(g.elems[p]);

  cons_.assign(n, Bits(n));
  orth_.assign(n, Bits(n));
  for (Point a = 0; a < n; ++a) {
    cons_[a].set(a);
    for (Point b = a + 1; b < n; ++b) {
      bool c = false;
      if (!g.hidden(a) && !g.hidden(b)) {
        c = g.ambient->wr(g.pure(a), g.pure(b));
      } else if (!g.hidden(a) || !g.hidden(b)) {
        const Id sigma = g.hidden(a) ? g.pure(b) : g.pure(a);
        const IdSet& th = g.hidden(a) ? theta[a] : theta[b];
        c = std::any_of(th.begin(), th.end(), [&](Id e) { return s.covers(e, sigma); });
      } else {
        const auto m = comp.as_real(meet(a, b));
        c = m && std::binary_search(theta[a].begin(), theta[a].end(), *m) &&
            std::binary_search(theta[b].begin(), theta[b].end(), *m);
      }
      if (c) {
        cons_[a].set(b);
        cons_[b].set(a);
      }
    }
    for (Point b = 0; b < n; ++b)
      if (comp.orthogonal(g.elems[a], g.elems[b])) orth_[a].set(b);
  }
}

Completion::Elem Geometry::meet(Point a, Point b) const {
  if (a > b) std::swap(a, b);
  const std::uint64_t key = (std::uint64_t(a) << 32) | b;
  auto it = meets_.find(key);
  if (it != meets_.end()) return it->second;
  const auto m = completion().meet(g_.elems[a], g_.elems[b]);
  meets_.emplace(key, m);
  return m;
}

bool Geometry::covered_by(Completion::Elem m, Point a) const {
  auto it = covers_.find(m);
  if (it == covers_.end()) {
    Bits row(size());
    const Completion& comp = completion();
    for (Point p = 0; p < size(); ++p)
      if (comp.lt(m, g_.elems[p]) && comp.covers(m, g_.elems[p])) row.set(p);
    it = covers_.emplace(m, std::move(row)).first;
  }
  return it->second.test(a);
}

bool Geometry::colinear(Point a, Point b, Point c) const { return b == c || covered_by(meet(b, c), a); }

bool Geometry::colinear(const PointSet& u, Point a, Point b, Point c) const {
  for (Point x : {a, b, c})
    if (!std::binary_search(u.begin(), u.end(), x))
      throw Error(ErrorKind::input, "colinearity argument " + g_.name(x) + " is outside the consistent set");
  if (!is_consistent(u)) throw Error(ErrorKind::input, "colinearity on an inconsistent set");
  return colinear(a, b, c);
}

bool Geometry::is_consistent(const PointSet& u) const {
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (!consistent(u[i], u[j])) return false;
  return true;
}

namespace {

bool colinear_any_order(const Geometry& geo, Point a, Point b, Point c) {
  return geo.colinear(a, b, c) || geo.colinear(b, a, c) || geo.colinear(c, a, b);
}

// Calls fn(λ, s1, s2, s3, s4) for each λ ∈ u and unordered pairs {s1,s2},
// {s3,s4} of u with r(λ,s1,s2), r(λ,s3,s4), the four distinct and no three
// of them colinear. Returns false when fn asks to stop.
bool for_each_qualifying(const Geometry& geo, const PointSet& u,
                         const std::function<bool(Point, Point, Point, Point, Point)>& fn) {
  for (Point lam : u) {
    std::vector<std::pair<Point, Point>> pairs;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j)
        if (u[i] != lam && u[j] != lam && geo.colinear(lam, u[i], u[j])) pairs.emplace_back(u[i], u[j]);
    for (std::size_t x = 0; x < pairs.size(); ++x)
      for (std::size_t y = x + 1; y < pairs.size(); ++y) {
        const auto [s1, s2] = pairs[x];
        const auto [s3, s4] = pairs[y];
        if (s3 == s1 || s3 == s2 || s4 == s1 || s4 == s2) continue;
        if (colinear_any_order(geo, s1, s2, s3) || colinear_any_order(geo, s1, s2, s4) ||
            colinear_any_order(geo, s1, s3, s4) || colinear_any_order(geo, s2, s3, s4))
          continue;
        if (!fn(lam, s1, s2, s3, s4)) return false;
      }
  }
  return true;
}

}  // namespace

bool Geometry::orthogonally_complete(const PointSet& u) const {
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j)
      for (std::size_t k = j + 1; k < u.size(); ++k) {
        if (i == j || i == k) continue;
        const Point a = u[i], b = u[j], c = u[k];
        if (colinear(a, b, c) && !orthogonal(a, b) && !orthogonal(a, c) && !orthogonal(b, c)) return false;
      }
  return for_each_qualifying(*this, u, [&](Point, Point s1, Point s2, Point s3, Point s4) {
    const std::array<Point, 4> q{s1, s2, s3, s4};
    for (Point a : q) {
      int hits = 0;
      for (Point b : q)
        if (b != a && orthogonal(a, b)) ++hits;
      if (hits >= 2) return true;
    }
    return false;
  });
}

PointSet Geometry::line(Point a, Point b) const {
  PointSet out;
  const auto m = meet(a, b);
  for (Point c = 0; c < size(); ++c)
    if (c == a || c == b || covered_by(m, c)) out.push_back(c);
  return out;
}

std::optional<PointSet> Geometry::plane(Point a, Point b, Point c) const {
  if (a == b || b == c || a == c) return std::nullopt;
  const std::array<Point, 3> t{a, b, c};
  std::array<PointSet, 3> opposite;
  for (int i = 0; i < 3; ++i) {
    opposite[i] = line(t[(i + 1) % 3], t[(i + 2) % 3]);
    if (std::binary_search(opposite[i].begin(), opposite[i].end(), t[i])) return std::nullopt;
  }
  PointSet out;
  for (Point d = 0; d < size(); ++d) {
    bool in = false;
    for (int i = 0; i < 3 && !in; ++i) {
      const PointSet l = line(t[i], d);
      PointSet both;
      std::set_intersection(l.begin(), l.end(), opposite[i].begin(), opposite[i].end(), std::back_inserter(both));
      in = !both.empty();
    }
    if (in) out.push_back(d);
  }
  return out;
}

std::vector<PointSet> consistency_cover(const Geometry& geo, std::size_t cap) {
  const std::size_t n = geo.size();
  std::vector<Bits> adj(n);
  for (Point v = 0; v < n; ++v) {
    adj[v] = geo.consistent_with(v);
    adj[v].reset(v);
  }
  std::vector<PointSet> out;
  std::function<void(PointSet&, Bits, Bits)> bk = [&](PointSet& r, Bits p, Bits x) {
    if (p.none() && x.none()) {
      PointSet c = r;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      if (out.size() > cap) throw CapExceeded("consistency cover", out.size());
      return;
    }
    const Bits px = p | x;
    std::size_t best = Bits::npos, best_count = 0;
    for (auto u = px.find_first(); u != Bits::npos; u = px.find_next(u)) {
      const std::size_t c = (p & adj[u]).count();
      if (best == Bits::npos || c > best_count) {
        best = u;
        best_count = c;
      }
    }
    const Bits cand = p - adj[best];
    for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
      r.push_back(Point(v));
      bk(r, p & adj[v], x & adj[v]);
      r.pop_back();
      p.reset(v);
      x.set(v);
    }
  };
  PointSet r;
  Bits all(n);
  all.set();
  bk(r, all, Bits(n));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<StarredPlane> starred_planes(const Geometry& geo) {
  const GeometrySet& g = geo.set();
  const Ambient& amb = *g.ambient;
  const std::size_t n = amb.factors();
  std::vector<StarredPlane> out;
  std::set<PointSet> seen;
  for (Point p = 0; p < g.pure_count; ++p) {
    const Id s1 = g.pure(p);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto& c = amb.coords(s1);
        const Id s2 = amb.with_coord(s1, j, amb.nfold.factors[j]->star_of(c[j]));
        const Id s3 = amb.with_coord(s1, k, amb.nfold.factors[k]->star_of(c[k]));
        const Point p2 = *g.find(amb.completion->real(s2));
        const Point p3 = *g.find(amb.completion->real(s3));
        auto pl = geo.plane(p, p2, p3);
        if (!pl || !seen.insert(*pl).second) continue;
        out.push_back({{p, p2, p3}, std::move(*pl)});
      }
  }
  return out;
}

ScanOptions default_scan(const GeometrySet& g) {
  ScanOptions o;
  o.exhaustive = g.ambient->factors() <= 2;
  return o;
}

bool GeometryReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

const CheckResult* GeometryReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  for (const auto& c : flags)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

struct Budget {
  const ScanOptions& opt;
  bool spent(const CheckResult& c) const { return !opt.exhaustive && c.checked >= opt.samples; }
};

void fail(CheckResult& c, std::vector<Point> w) {
  if (c.failures++ == 0) c.witness = std::move(w);
}

std::vector<std::size_t> scan_order(std::size_t n, const ScanOptions& opt) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (!opt.exhaustive) {
    std::mt19937 rng(opt.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

Bits common_neighbours(const Geometry& geo, std::initializer_list<Point> pts) {
  Bits b(geo.size());
  b.set();
  for (Point p : pts) b &= geo.consistent_with(p);
  return b;
}

std::optional<Point> as_point(const GeometrySet& g, std::optional<Completion::Elem> e) {
  if (!e) return std::nullopt;
  return g.find(*e);
}

// m ⊔ m' first, then ξ* ⊔ m' over pures ξ above m* and not above m'*.
std::vector<Point> construction_candidates(const Geometry& geo, Completion::Elem m, Completion::Elem mp) {
  const GeometrySet& g = geo.set();
  const Completion& comp = geo.completion();
  const RealSpace& base = g.ambient->base();
  std::vector<Point> out;
  if (auto p = as_point(g, comp.join(m, mp))) out.push_back(*p);
  const auto rm = comp.as_real(m);
  const auto rmp = comp.as_real(mp);
  if (!rm || !rmp || *rm == base.bottom() || *rmp == base.bottom()) return out;
  const Id ms = base.star_of(*rm), mps = base.star_of(*rmp);
  for (Id xi : base.pures()) {
    if (!base.space.leq(ms, xi) || base.space.leq(mps, xi)) continue;
    if (auto p = as_point(g, comp.join(comp.real(base.star_of(xi)), mp))) out.push_back(*p);
  }
  return out;
}

struct Vy3Outcome {
  bool found = false;
  bool by_construction = false;
};

// Some μ with r(μ,a,c), r(μ,b,d), consistent with all four and accepted by
// `admit`.
Vy3Outcome find_cross(const Geometry& geo, Point a, Point b, Point c, Point d, const Bits* allowed,
                      const std::function<bool(Point)>& admit) {
  auto ok = [&](Point mu) {
    if (allowed && !allowed->test(mu)) return false;
    if (!geo.consistent(mu, a) || !geo.consistent(mu, b) || !geo.consistent(mu, c) || !geo.consistent(mu, d))
      return false;
    return geo.colinear(mu, a, c) && geo.colinear(mu, b, d) && admit(mu);
  };
  for (Point mu : construction_candidates(geo, geo.meet(a, c), geo.meet(b, d)))
    if (ok(mu)) return {true, true};
  const Bits cand = common_neighbours(geo, {a, b, c, d});
  for (auto mu = cand.find_first(); mu != Bits::npos; mu = cand.find_next(mu))
    if (ok(Point(mu))) return {true, false};
  return {};
}

PointSet sorted_set(std::initializer_list<Point> pts) {
  PointSet s(pts);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// The configuration lies in a starred plane when two of its pures are the
// single-coordinate star flips of one common pure, that is when they differ
// in exactly two coordinates and each differing pair is a state and its star.
bool has_starred_pair(const GeometrySet& g, const PointSet& pts) {
  const Ambient& amb = *g.ambient;
  for (std::size_t x = 0; x < pts.size(); ++x)
    for (std::size_t y = x + 1; y < pts.size(); ++y) {
      if (g.hidden(pts[x]) || g.hidden(pts[y])) continue;
      const auto& cx = amb.coords(g.pure(pts[x]));
      const auto& cy = amb.coords(g.pure(pts[y]));
      std::size_t flips = 0, other = 0;
      for (std::size_t i = 0; i < cx.size(); ++i) {
        if (cx[i] == cy[i]) continue;
        if (amb.nfold.factors[i]->star_of(cx[i]) == cy[i]) ++flips;
        else ++other;
      }
      if (flips == 2 && other == 0) return true;
    }
  return false;
}

bool agree_outside(const Ambient& amb, Id a, Id b, std::size_t j, std::size_t k) {
  const auto& ca = amb.coords(a);
  const auto& cb = amb.coords(b);
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (i != j && i != k && ca[i] != cb[i]) return false;
  return true;
}

std::size_t common_coords(const Ambient& amb, std::initializer_list<Id> pts) {
  std::size_t n = 0;
  const auto& first = amb.coords(*pts.begin());
  for (std::size_t i = 0; i < first.size(); ++i) {
    bool same = true;
    for (Id p : pts) same = same && amb.coords(p)[i] == first[i];
    n += same;
  }
  return n;
}

}  // namespace

GeometryReport verify_projective(const Geometry& geo, const ScanOptions& opt) {
  const GeometrySet& g = geo.set();
  const Ambient& amb = *g.ambient;
  const Completion& comp = geo.completion();
  const RealSpace& base = amb.base();
  const StateSpace& s = base.space;
  const std::size_t N = amb.factors();
  Budget budget{opt};

  GeometryReport rep;
  rep.points = g.size();
  rep.hidden = g.size() - g.pure_count;
  const auto cover = consistency_cover(geo, opt.cover_cap);
  rep.cover_size = cover.size();
  const auto order = scan_order(cover.size(), opt);

  CheckResult sym{"colinearity symmetry"}, sheaf{"sheaf"}, vy1{"VY1"}, vy2{"VY2"}, vy3{"VY3"},
      rvy3{"restricted VY3"}, nondeg{"nondegeneracy"};
  CheckResult starred{"starred planes excluded"};

  for (std::size_t oi : order) {
    const PointSet& u = cover[oi];
    for (Point a : u)
      for (Point b : u) {
        if (budget.spent(vy1)) break;
        ++vy1.checked;
        if (!geo.colinear(u, a, b, b)) fail(vy1, {a, b, b});
        for (Point c : u) {
          if (budget.spent(sym)) break;
          ++sym.checked;
          const bool r = geo.colinear(a, b, c);
          if (r != geo.colinear(b, a, c) || r != geo.colinear(a, c, b) || r != geo.colinear(c, b, a))
            fail(sym, {a, b, c});
        }
      }
  }

  // Shared triples of overlapping cover members.
  for (std::size_t x = 0; x < cover.size() && !budget.spent(sheaf); ++x)
    for (std::size_t y = x + 1; y < cover.size() && !budget.spent(sheaf); ++y) {
      PointSet both;
      std::set_intersection(cover[x].begin(), cover[x].end(), cover[y].begin(), cover[y].end(),
                            std::back_inserter(both));
      if (both.size() < 3) continue;
      for (Point a : both)
        for (std::size_t i = 0; i < both.size(); ++i)
          for (std::size_t j = i; j < both.size(); ++j) {
            ++sheaf.checked;
            if (geo.colinear(cover[x], a, both[i], both[j]) != geo.colinear(cover[y], a, both[i], both[j]))
              fail(sheaf, {a, both[i], both[j]});
          }
    }

  for (std::size_t oi : order) {
    const PointSet& u = cover[oi];
    for (Point c : u)
      for (Point d : u) {
        if (c == d || budget.spent(vy2)) continue;
        PointSet on;
        for (Point a : u)
          if (geo.colinear(a, c, d)) on.push_back(a);
        for (Point a : on)
          for (Point b : on) {
            ++vy2.checked;
            if (!geo.colinear(a, b, c)) fail(vy2, {a, b, c, d});
          }
      }
  }

  // VY3 over Š-style covers, restricted VY3 over orthogonally complete
  // subsets of the narrower family.
  const auto planes = starred_planes(geo);
  Bits wide(g.size());
  for (Point p = 0; p < g.size(); ++p)
    if (g.widecheck[p]) wide.set(p);
  std::set<std::array<Point, 5>> seen, seen_r;
  std::size_t r_construction = 0, r_search = 0;
  for (std::size_t oi : order) {
    const PointSet& u = cover[oi];
    for_each_qualifying(geo, u, [&](Point lam, Point s1, Point s2, Point s3, Point s4) {
      std::array<Point, 5> key{lam, std::min(s1, s2), std::max(s1, s2), std::min(s3, s4), std::max(s3, s4)};
      if (key[1] > key[3]) std::swap(key[1], key[3]), std::swap(key[2], key[4]);
      if (!seen.insert(key).second) return true;
      if (budget.spent(vy3)) return false;
      ++vy3.checked;
      const auto any = [](Point) { return true; };
      const auto m1 = find_cross(geo, s1, s2, s3, s4, nullptr, any);
      const auto m2 = find_cross(geo, s2, s1, s3, s4, nullptr, any);
      if (!m1.found || !m2.found) fail(vy3, {lam, s1, s2, s3, s4});
      for (const auto& m : {m1, m2})
        if (m.found) ++(m.by_construction ? rep.construction_witness_hits : rep.search_witness_hits);
      return true;
    });

    PointSet uw;
    for (Point p : u)
      if (wide.test(p)) uw.push_back(p);
    for_each_qualifying(geo, uw, [&](Point lam, Point s1, Point s2, Point s3, Point s4) {
      std::array<Point, 5> key{lam, std::min(s1, s2), std::max(s1, s2), std::min(s3, s4), std::max(s3, s4)};
      if (key[1] > key[3]) std::swap(key[1], key[3]), std::swap(key[2], key[4]);
      if (!seen_r.insert(key).second) return true;
      if (budget.spent(rvy3)) return false;
      if (!geo.orthogonally_complete(sorted_set({lam, s1, s2, s3, s4}))) return true;
      auto admit = [&](Point mu) { return geo.orthogonally_complete(sorted_set({s1, s2, s3, s4, mu})); };
      const auto m1 = find_cross(geo, s1, s2, s3, s4, &wide, admit);
      const auto m2 = find_cross(geo, s2, s1, s3, s4, &wide, admit);
      const bool ok = m1.found && m2.found;
      if (has_starred_pair(g, sorted_set({lam, s1, s2, s3, s4}))) {
        ++starred.checked;
        if (!ok) fail(starred, {lam, s1, s2, s3, s4});
        return true;
      }
      ++rvy3.checked;
      if (!ok) fail(rvy3, {lam, s1, s2, s3, s4});
      for (const auto& m : {m1, m2})
        if (m.found) ++(m.by_construction ? r_construction : r_search);
      return true;
    });

    // Appendix configuration: pairwise distinct meets, two of them covered by λ.
    for (Point lam : u) {
      if (budget.spent(nondeg)) break;
      std::vector<std::pair<Point, Point>> pairs;
      for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
          if (u[i] != lam && u[j] != lam && geo.covered_by(geo.meet(u[i], u[j]), lam)) pairs.emplace_back(u[i], u[j]);
      for (std::size_t x = 0; x < pairs.size(); ++x)
        for (std::size_t y = x + 1; y < pairs.size(); ++y) {
          const std::array<Point, 4> q{pairs[x].first, pairs[x].second, pairs[y].first, pairs[y].second};
          if (sorted_set({q[0], q[1], q[2], q[3]}).size() != 4) continue;
          std::set<Completion::Elem> meets;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) meets.insert(geo.meet(q[i], q[j]));
          if (meets.size() != 6) continue;
          ++nondeg.checked;
          if (std::any_of(q.begin(), q.end(), [&](Point p) { return g.hidden(p); }))
            fail(nondeg, {lam, q[0], q[1], q[2], q[3]});
        }
    }
  }
  rvy3.note = std::to_string(starred.checked) + " configurations lie in starred planes; witnesses " +
              std::to_string(r_construction) + " by construction, " + std::to_string(r_search) + " by search";
  starred.note = std::to_string(planes.size()) + " starred planes";

  // Invariants.
  CheckResult wr{"pure consistency is wr"}, rek1{"Rek1"}, rek2{"Rek2"}, theta3{"theta size"},
      zl{"zetalambda"}, lw{"lambdawr"};
  for (Point a = 0; a < g.pure_count; ++a)
    for (Point b = 0; b < g.pure_count; ++b) {
      std::size_t diff = 0;
      for (std::size_t i = 0; i < N; ++i) diff += amb.nfold.trace(g.pure(a), i) != amb.nfold.trace(g.pure(b), i);
      ++wr.checked;
      if (geo.consistent(a, b) != (diff <= 2)) fail(wr, {a, b});
    }
  for (Point a = Point(g.pure_count); a < g.size(); ++a) {
    const IdSet ta = comp.theta(g.elems[a]);
    if (N == 2) {
      ++theta3.checked;
      if (ta.size() != 3) fail(theta3, {a});
    }
    for (Point b = 0; b < g.size(); ++b) {
      if (a == b || !geo.consistent(a, b)) continue;
      if (g.hidden(b)) {
        const IdSet tb = comp.theta(g.elems[b]);
        IdSet both;
        std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(both));
        ++rek1.checked;
        if (both.size() != 1) fail(rek1, {a, b});
      } else {
        const std::size_t below =
            std::count_if(ta.begin(), ta.end(), [&](Id e) { return s.leq(e, g.pure(b)); });
        ++rek2.checked;
        if (below != 1) fail(rek2, {a, b});
      }
    }
  }
  if (N != 2) theta3.note = "checked on two factors only";

  {
    const IdSet& pures = base.pures();
    std::map<Id, std::vector<std::pair<Id, Id>>> by_meet;
    for (std::size_t i = 0; i < pures.size(); ++i)
      for (std::size_t j = i + 1; j < pures.size(); ++j) by_meet[s.meet(pures[i], pures[j])].emplace_back(pures[i], pures[j]);
    std::vector<Id> lam_order(pures.begin(), pures.end());
    if (!opt.exhaustive) std::shuffle(lam_order.begin(), lam_order.end(), std::mt19937(opt.seed));
    for (Id lam : lam_order) {
      std::vector<Id> ms;
      for (const auto& [m, _] : by_meet)
        if (s.covers(m, lam)) ms.push_back(m);
      for (std::size_t x = 0; x < ms.size(); ++x)
        for (std::size_t y = x + 1; y < ms.size(); ++y)
          for (const auto& [a, b] : by_meet[ms[x]])
            for (const auto& [c, d] : by_meet[ms[y]]) {
              if (budget.spent(zl)) break;
              const IdSet five = normalized({lam, a, b, c, d});
              if (five.size() != 5) continue;
              ++zl.checked;
              if (common_coords(amb, {lam, a, b, c, d}) + 2 < N)
                fail(zl, {*g.find(comp.real(lam)), *g.find(comp.real(a)), *g.find(comp.real(b)),
                          *g.find(comp.real(c)), *g.find(comp.real(d))});
            }
    }
  }

  {
    std::size_t unstarred_matches = 0;
    const IdSet& pures = base.pures();
    std::vector<std::array<Id, 3>> triples;
    for (Id nu : pures)
      for (Id phi : pures)
        if (nu != phi && amb.wr(nu, phi))
          for (Id mu : pures) triples.push_back({mu, nu, phi});
    if (!opt.exhaustive) std::shuffle(triples.begin(), triples.end(), std::mt19937(opt.seed));
    for (const auto& [mu, nu, phi] : triples) {
      if (budget.spent(lw)) break;
      const auto emu = comp.real(mu), enu = comp.real(nu), ephi = comp.real(phi);
      if (comp.orthogonal(emu, enu) || comp.orthogonal(emu, ephi)) continue;
      const Id gamma = s.meet(nu, phi);
      auto pattern_matches = [&](Completion::Elem lambda) {
        const IdSet th = comp.theta(lambda);
        for (std::size_t j = 0; j < N; ++j)
          for (std::size_t k = j + 1; k < N; ++k) {
            if (!agree_outside(amb, nu, phi, j, k)) continue;
            const auto& fj = *amb.nfold.factors[j];
            const auto& fk = *amb.nfold.factors[k];
            const Id a = amb.coords(mu)[j], b = amb.coords(mu)[k];
            const Id a1 = amb.coords(nu)[j], b1 = amb.coords(nu)[k];
            const Id a2 = amb.coords(phi)[j], b2 = amb.coords(phi)[k];
            auto D = [&](Id x, Id y) { return amb.delta(nu, j, k, x, y); };
            const IdSet expect = normalized({s.meet(D(a2, b2), D(a1, b1)), s.meet(D(a2, fk.star_of(b)), D(fj.star_of(a), b1)),
                                             s.meet(D(a1, fk.star_of(b)), D(fj.star_of(a), b2))});
            if (expect == th) return true;
          }
        return false;
      };
      const auto starred_join = comp.join(comp.real(base.star_of(mu)), comp.real(gamma));
      if (starred_join && !comp.is_real(*starred_join)) {
        ++lw.checked;
        if (!pattern_matches(*starred_join)) {
          auto p = g.find(*starred_join);
          fail(lw, {*g.find(emu), *g.find(enu), *g.find(ephi), p ? *p : Point(-1)});
        }
      }
      const auto plain_join = comp.join(emu, comp.real(gamma));
      if (plain_join && !comp.is_real(*plain_join) && pattern_matches(*plain_join)) ++unstarred_matches;
    }
    lw.note = "λ = μ* ⊔ (ν ⊓ φ); the unstarred join matched " + std::to_string(unstarred_matches) + " times";
  }

  for (auto* c : {&sym, &sheaf, &vy1, &vy2, &vy3, &rvy3, &nondeg, &wr, &rek1, &rek2, &theta3, &zl, &lw})
    rep.checks.push_back(std::move(*c));
  rep.flags.push_back(std::move(starred));
  return rep;
}

namespace {

enum class UType { one, two, neither };

UType consistent_type(const Geometry& geo, const PointSet& u, Point chi) {
  const GeometrySet& g = geo.set();
  const Completion& comp = geo.completion();
  const IdSet th = comp.theta(g.elems[chi]);
  std::set<Id> all, from_pures;
  bool inside = true;
  for (Point p : u) {
    if (p == chi) continue;
    const auto m = comp.as_real(geo.meet(p, chi));
    if (!m || !std::binary_search(th.begin(), th.end(), *m)) {
      inside = false;
      continue;
    }
    all.insert(*m);
    if (!g.hidden(p)) from_pures.insert(*m);
  }
  if (inside && all.size() == 1) return UType::one;
  if (from_pures.size() >= 2) return UType::two;
  return UType::neither;
}

}  // namespace

GeometryReport verify_ortho(const Geometry& geo, const ScanOptions& opt) {
  const GeometrySet& g = geo.set();
  const Completion& comp = geo.completion();
  const RealSpace& base = g.ambient->base();
  Budget budget{opt};

  GeometryReport rep;
  std::vector<Point> w;
  for (Point p = 0; p < g.size(); ++p)
    if (g.widecheck[p]) w.push_back(p);
  rep.points = w.size();
  rep.hidden = w.size() - g.pure_count;

  CheckResult o1{"O1"}, o2{"O2"}, o3{"O3"}, o4{"O4"}, irr{"irreducibility"}, typo{"consistent types"},
      nat{"orthocomplete type 2 is widecheck"}, shape{"widecheck type 2 structure"};

  for (Point a : w) {
    ++o1.checked;
    if (geo.orthogonal(a, a)) fail(o1, {a});
    for (Point b : w) {
      ++o2.checked;
      if (geo.orthogonal(a, b) && !geo.orthogonal(b, a)) fail(o2, {a, b});
    }
  }

  for (Point e : w) {
    std::vector<Point> perp;
    for (Point x : w)
      if (geo.orthogonal(x, e) && geo.consistent(x, e)) perp.push_back(x);
    for (std::size_t i = 0; i < perp.size(); ++i)
      for (std::size_t j = 0; j < perp.size(); ++j) {
        const Point a = perp[i], b = perp[j];
        if (a == b || !geo.consistent(a, b) || budget.spent(o3)) continue;
        for (Point d : w) {
          if (!geo.consistent(d, a) || !geo.consistent(d, b) || !geo.consistent(d, e)) continue;
          if (!geo.colinear(d, a, b)) continue;
          if (!geo.orthogonally_complete(sorted_set({a, b, e, d}))) continue;
          ++o3.checked;
          if (!geo.orthogonal(e, d)) fail(o3, {a, b, e, d});
        }
      }
  }

  for (Point a : w)
    for (Point b : w) {
      if (a == b || !geo.consistent(a, b)) continue;
      auto good = [&](Point e, bool need_perp) {
        if (!g.widecheck[e] || !geo.consistent(e, a) || !geo.consistent(e, b)) return false;
        if (!geo.colinear(e, a, b)) return false;
        if (need_perp && !geo.orthogonal(e, a)) return false;
        return geo.orthogonally_complete(sorted_set({a, b, e}));
      };
      if (!budget.spent(o4)) {
        ++o4.checked;
        bool found = false;
        if (!g.hidden(a)) {
          const auto eps = comp.join(comp.real(base.star_of(g.pure(a))), geo.meet(a, b));
          if (auto p = as_point(g, eps); p && good(*p, true)) {
            found = true;
            ++rep.construction_witness_hits;
          }
        }
        for (Point e : w)
          if (!found && good(e, true)) {
            found = true;
            ++rep.search_witness_hits;
          }
        if (!found) fail(o4, {a, b});
      }
      if (!budget.spent(irr)) {
        ++irr.checked;
        bool found = false;
        for (Point k : w)
          if (!found && k != a && k != b && good(k, false)) found = true;
        if (!found) fail(irr, {a, b});
      }
    }

  // Structural checks run on covers of the wider family.
  std::optional<GeometrySet> wider;
  std::optional<Geometry> wider_geo;
  const Geometry* full = &geo;
  if (g.variant == GeometryVariant::widecheck) {
    wider.emplace(build_geometry(g.ambient, GeometryVariant::check));
    wider_geo.emplace(*wider);
    full = &*wider_geo;
  }
  const GeometrySet& fg = full->set();
  const auto cover = consistency_cover(*full, opt.cover_cap);
  for (std::size_t oi : scan_order(cover.size(), opt)) {
    const PointSet& u = cover[oi];
    if (budget.spent(typo)) break;
    const bool complete = full->orthogonally_complete(u);
    for (Point chi : u) {
      if (!fg.hidden(chi)) continue;
      ++typo.checked;
      const UType t = consistent_type(*full, u, chi);
      if (t == UType::neither) fail(typo, {chi});
      if (t != UType::two) continue;
      ++nat.checked;
      if (complete && !fg.widecheck[chi]) fail(nat, {chi});
      if (!fg.widecheck[chi]) continue;
      ++shape.checked;
      const IdSet th = comp.theta(fg.elems[chi]);
      bool ok = u.size() == 1 + 2 * th.size() && complete;
      for (Id alpha : th) {
        std::size_t above = 0;
        for (Point p : u)
          if (p != chi && !fg.hidden(p) && base.space.covers(alpha, fg.pure(p))) ++above;
        ok = ok && above == 2;
      }
      for (Point p : u) ok = ok && (p == chi || !fg.hidden(p));
      if (!ok) fail(shape, {chi});
    }
  }

  for (auto* c : {&o1, &o2, &o3, &o4, &irr, &typo, &nat, &shape}) rep.checks.push_back(std::move(*c));
  rep.cover_size = cover.size();
  return rep;
}

}  // namespace qlattice
