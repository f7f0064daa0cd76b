// SPDX-License-Identifier: MIT
#include "qlattice/real.hpp"

#include <algorithm>
#include <bit>

#include "qlattice/chu.hpp"
#include "qlattice/error.hpp"

namespace qlattice {

Id RealSpace::star_of(Id a) const {
  space.check_id(a);
  if (!star[a]) throw Error(ErrorKind::input, "star of bottom is undefined");
  return *star[a];
}

RealSpace make_space(SpaceKind kind, int n) {
  switch (kind) {
    case SpaceKind::boolean: return make_bool();
    case SpaceKind::simplex: return make_simplex(n);
    case SpaceKind::zprime: return make_zprime(n);
    case SpaceKind::custom: break;
  }
  throw Error(ErrorKind::input, "custom spaces are read from JSON");
}

RealSpace with_simplex_star(StateSpace s, std::string name) {
  RealSpace rs;
  rs.star.assign(s.size(), std::nullopt);
  for (Id a = 0; a < s.size(); ++a) {
    if (a == s.bottom()) continue;
    IdSet others;
    for (Id p : s.maximal())
      if (!s.leq(a, p)) others.push_back(p);
    if (!others.empty()) rs.star[a] = s.meet_all(others);
  }
  rs.space = std::move(s);
  rs.name = std::move(name);
  return rs;
}

RealSpace make_simplex(int n) {
  if (n < 2) throw Error(ErrorKind::input, "simplex needs at least 2 pures");
  if (n > 16) throw Error(ErrorKind::input, "simplex limited to 16 pures");
  // Elements are nonempty pure subsets; bottom (all pures) gets id 0 and
  // singletons come last in pure order.
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m <= full; ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t x, std::uint32_t y) {
    const int cx = std::popcount(x), cy = std::popcount(y);
    if (cx != cy) return cx > cy;
    return x < y;
  });
  std::vector<std::string> labels;
  for (auto m : masks) {
    if (m == full) {
      labels.push_back("⊥");
      continue;
    }
    std::string l;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1u) l += (l.empty() ? "" : "⊓") + std::string("u") + std::to_string(i + 1);
    labels.push_back(l);
  }
  std::vector<std::pair<Id, Id>> leq;
  for (Id i = 0; i < masks.size(); ++i)
    for (Id j = 0; j < masks.size(); ++j)
      if (i != j && (masks[j] & ~masks[i]) == 0) leq.emplace_back(i, j);
  return with_simplex_star(StateSpace(std::move(labels), leq), "Z" + std::to_string(n));
}

RealSpace make_bool() {
  StateSpace s({"⊥", "Y", "N"}, {{0, 1}, {0, 2}});
  return with_simplex_star(std::move(s), "B");
}

RealSpace make_zprime(int n) {
  if (n < 2) throw Error(ErrorKind::input, "Z′_N needs N ≥ 2");
  std::vector<std::string> labels{"⊥"};
  for (int i = 0; i < n; ++i) {
    std::string base = i < 26 ? std::string(1, char('a' + i)) : "p" + std::to_string(i + 1);
    labels.push_back(base);
    labels.push_back(base + "*");
  }
  std::vector<std::pair<Id, Id>> leq;
  for (Id i = 1; i < labels.size(); ++i) leq.emplace_back(0, i);
  RealSpace rs;
  rs.space = StateSpace(std::move(labels), leq);
  rs.star.assign(rs.space.size(), std::nullopt);
  for (int i = 0; i < n; ++i) {
    rs.star[2 * i + 1] = Id(2 * i + 2);
    rs.star[2 * i + 2] = Id(2 * i + 1);
  }
  rs.name = "Z'" + std::to_string(n);
  return rs;
}

StateSpace make_counterexample_lattice() {
  std::vector<std::string> labels{"⊥", "u1", "u2", "u3", "v1", "v2", "w", "x", "y", "z"};
  std::vector<std::pair<Id, Id>> cover{
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5},  // atoms
      {1, 6}, {1, 8},                          // u1 < w, y
      {2, 8}, {2, 9},                          // u2 < y, z
      {3, 6}, {3, 9},                          // u3 < w, z
      {4, 6}, {4, 7},                          // v1 < w, x
      {5, 7}, {5, 9},                          // v2 < x, z
  };
  return StateSpace(std::move(labels), cover);
}

namespace {

void star_axioms(const StateSpace& s, const IdSet& carrier, const std::vector<std::optional<Id>>& star,
                 std::vector<Violation>& out) {
  auto in_carrier = [&](Id a) { return std::binary_search(carrier.begin(), carrier.end(), a); };
  for (Id a : carrier) {
    if (a == s.bottom()) continue;
    if (a >= star.size() || !star[a] || !in_carrier(*star[a])) {
      out.push_back({"star defined on non-bottom elements", a, std::nullopt});
      return;
    }
  }
  for (Id a : carrier)
    if (a != s.bottom() && star[*star[a]] != a) {
      out.push_back({"involutive", a, std::nullopt});
      break;
    }
  [&] {
    for (Id a : carrier)
      for (Id b : carrier)
        if (a != s.bottom() && b != s.bottom() && s.leq(a, b) && !s.leq(*star[b], *star[a])) {
          out.push_back({"order-reversing", a, b});
          return;
        }
  }();
  for (Id a : carrier)
    if (a != s.bottom() && s.bounded(a, *star[a])) {
      out.push_back({"no common upper bound", a, *star[a]});
      break;
    }
}

}  // namespace

std::vector<Violation> validate_real(const RealSpace& rs) {
  std::vector<Violation> out;
  const auto& s = rs.space;
  if (rs.star.size() != s.size()) {
    out.push_back({"star defined on non-bottom elements", s.bottom(), std::nullopt});
    return out;
  }
  IdSet all;
  for (Id i = 0; i < s.size(); ++i) all.push_back(i);
  star_axioms(s, all, rs.star, out);
  std::optional<Id> w;
  if (!generated_by_maximals(s, &w)) out.push_back({"generated by maximal elements", *w, std::nullopt});
  return out;
}

std::vector<Violation> validate_real(const RealStructureEmbedding& emb) {
  std::vector<Violation> out;
  const auto& s = *emb.ambient;
  const IdSet sub = normalized(emb.real_subset);
  auto in_sub = [&](Id a) { return std::binary_search(sub.begin(), sub.end(), a); };
  if (!in_sub(s.bottom())) out.push_back({"contains bottom", s.bottom(), std::nullopt});
  [&] {
    for (Id a : sub)
      for (Id b : sub)
        if (!in_sub(s.meet(a, b))) {
          out.push_back({"closed under meets", a, b});
          return;
        }
  }();
  // Maximal elements relative to the subset.
  IdSet sub_max;
  for (Id a : sub) {
    bool top = true;
    for (Id b : sub)
      if (s.lt(a, b)) top = false;
    if (top) sub_max.push_back(a);
  }
  for (Id a : sub) {
    IdSet above;
    for (Id m : sub_max)
      if (s.leq(a, m)) above.push_back(m);
    if (above.empty() || s.meet_all(above) != a) {
      out.push_back({"generated by maximal elements", a, std::nullopt});
      break;
    }
  }
  star_axioms(s, sub, emb.star, out);
  // Real effects separate ambient states.
  const auto effects = enumerate_effects(s, &sub);
  [&] {
    for (Id a = 0; a < s.size(); ++a)
      for (Id b = a + 1; b < s.size(); ++b) {
        bool separated = false;
        for (const auto& l : effects)
          if (evaluate(s, l, a) != evaluate(s, l, b)) {
            separated = true;
            break;
          }
        if (!separated) {
          out.push_back({"real effects separate states", a, b});
          return;
        }
      }
  }();
  return out;
}

bool is_simplex(const RealSpace& rs) {
  const auto& s = rs.space;
  for (Id p : rs.pures())
    for (Id q : rs.pures())
      if (!s.leq(p, q) && !s.leq(rs.star_of(p), q)) return false;
  return true;
}

std::string violation_text(const StateSpace& s, const Violation& v) {
  std::string t = v.axiom + " at " + s.label(v.a);
  if (v.b) t += ", " + s.label(*v.b);
  return t;
}

}  // namespace qlattice
