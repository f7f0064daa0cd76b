// SPDX-License-Identifier: MIT
#include "qlattice/quantum.hpp"

#include <algorithm>
#include <bit>
#include <memory>

#include "qlattice/chu.hpp"
#include "qlattice/context.hpp"
#include "qlattice/error.hpp"

namespace qlattice {

namespace {

constexpr Id kY = 1, kN = 2;  // make_bool ids

RealSpacePtr bool_space() {
  static const RealSpacePtr b = std::make_shared<RealSpace>(make_bool());
  return b;
}

// Masks of 𝔅⊗𝔅 with the given traces.
std::vector<Mask> with_traces(Id left, Id right) {
  const auto& bb = bool_pair();
  std::vector<Mask> out;
  for (Mask m = 1; m <= bb.full(); ++m)
    if ((m & ~bb.full()) == 0 && bb.trace(m, 1) == left && bb.trace(m, 2) == right) out.push_back(m);
  return out;
}

Id measure(const RealSpace& rs, Id p, Id x) {
  return measurement_map(rs.space, Effect{p, rs.star_of(p)}).at(x);
}

std::optional<bool> confirm_by_search(const RealSpacePtr& rs, Id p1, Id p2) {
  const std::vector<Effect> effects{Effect{p1, rs->star_of(p1)}, Effect{p2, rs->star_of(p2)}};
  try {
    return find_joint_morphism(view_of(rs), effects).has_value();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::unsupported) return std::nullopt;
    throw;
  }
}

}  // namespace

const TensorProduct& bool_pair() {
  static const TensorProduct bb(bool_space(), bool_space());
  return bb;
}

BroadcastResult broadcast_obstruction(const RealSpacePtr& rs, std::size_t search_limit) {
  BroadcastResult r;
  const StateSpace& s = rs->space;
  const IdSet& pures = rs->pures();
  r.simplex = is_simplex(*rs);

  if (r.simplex) {
    const TensorProduct t(rs, rs);
    r.diagonal.resize(s.size());
    for (Id x = 0; x < s.size(); ++x) {
      Mask m = 0;
      for (Id w : pures)
        if (s.leq(x, w)) m |= t.pure(w, w);
      r.diagonal[x] = m;
    }
    bool ok = true;
    for (Id x = 0; x < s.size() && ok; ++x) {
      ok = t.trace(r.diagonal[x], 1) == x && t.trace(r.diagonal[x], 2) == x;
      for (Id y = 0; y < s.size() && ok; ++y) ok = r.diagonal[s.meet(x, y)] == t.meet(r.diagonal[x], r.diagonal[y]);
    }
    r.traces_verified = ok;
    r.broadcasts = ok;
    r.witness = ok ? "diagonal broadcast verified on " + std::to_string(s.size()) + " states"
                   : "diagonal map fails a trace or meet identity";
    if (pures.size() >= 2 && s.size() <= search_limit) r.search_confirms = confirm_by_search(rs, pures[0], pures[1]);
    return r;
  }

  for (Id p1 : pures) {
    for (Id p2 : pures) {
      if (p2 == p1 || s.leq(rs->star_of(p1), p2)) continue;
      const Id p1s = rs->star_of(p1), p2s = rs->star_of(p2);
      if (s.meet(p1, p1s) != s.bottom() || s.meet(p1s, p2s) != s.bottom()) continue;
      const auto a = with_traces(measure(*rs, p1, p1), measure(*rs, p2, p1));
      const auto b = with_traces(measure(*rs, p1, p1s), measure(*rs, p2, p1s));
      const auto c = with_traces(measure(*rs, p1, p2s), measure(*rs, p2, p2s));
      if (a.size() != 1 || b.size() != 1 || c.size() != 1) continue;
      const auto& bb = bool_pair();
      r.pair = std::array<Id, 2>{p1, p2};
      r.forced = {a[0], b[0], c[0]};
      r.bottom_via_first = bb.meet(a[0], b[0]);
      r.bottom_via_second = bb.meet(b[0], c[0]);
      if (r.bottom_via_first == r.bottom_via_second) continue;
      r.broadcasts = false;
      r.witness = "Ψ(⊥) forced to both " + bb.name(r.bottom_via_first) + " and " + bb.name(r.bottom_via_second) +
                  " (σ₁ = " + s.label(p1) + ", σ₂ = " + s.label(p2) + ")";
      if (s.size() <= search_limit) {
        const auto found = confirm_by_search(rs, p1, p2);
        if (found) r.search_confirms = !*found;
      }
      return r;
    }
  }
  // No clash pattern among the pures: fall back to the general search.
  r.witness = "no forced-value clash found";
  if (pures.size() >= 2 && s.size() <= search_limit) {
    const auto found = confirm_by_search(rs, pures[0], pures[1]);
    r.broadcasts = found.value_or(false);
  }
  return r;
}

BellScenario make_bell(IndeterministicTensor tensor, Id s1, Id s2, Id t1, Id t2) {
  const RealSpace& a = tensor.reals.product->left();
  const RealSpace& b = tensor.reals.product->right();
  for (auto [rs, x] : {std::pair{&a, s1}, std::pair{&a, s2}, std::pair{&b, t1}, std::pair{&b, t2}})
    if (x >= rs->size() || !rs->space.is_maximal(x)) throw Error(ErrorKind::input, "Bell scenario needs pure states");
  if (s1 == s2 || s1 == a.star_of(s2)) throw Error(ErrorKind::input, "σ₁ must differ from σ₂ and σ₂*");
  if (t1 == t2 || t1 == b.star_of(t2)) throw Error(ErrorKind::input, "τ₁ must differ from τ₂ and τ₂*");

  BellScenario sc;
  sc.tensor = std::move(tensor);
  sc.s1 = s1, sc.s2 = s2, sc.t1 = t1, sc.t2 = t2;
  const TensorProduct& t = *sc.tensor.reals.product;
  const std::vector<Gen> entangled{{s1, t1}, {s2, t2}};
  const std::vector<Gen> stars{{a.star_of(s1), a.bottom()}, {b.bottom(), b.star_of(t1)}};
  const Completion& comp = *sc.tensor.completion;
  const auto x = comp.real(sc.tensor.reals.id(t.normalize(entangled)));
  const auto y = comp.real(sc.tensor.reals.id(t.normalize(stars)));
  const auto sigma = comp.join(x, y);
  if (!sigma || comp.is_real(*sigma)) throw Error(ErrorKind::input, "Σ is not a hidden state");
  sc.sigma = *sigma;
  for (int i = 0; i < 2; ++i) {
    const Id p = i == 0 ? s1 : s2;
    const Id q = i == 0 ? t1 : t2;
    sc.phi[i] = measurement_map(a.space, Effect{p, a.star_of(p)});
    sc.rho[i] = measurement_map(b.space, Effect{q, b.star_of(q)});
  }
  return sc;
}

BellScenario make_bell(const RealSpacePtr& a, const RealSpacePtr& b, Id s1, Id s2, Id t1, Id t2, std::size_t cap) {
  for (auto [rs, x] : {std::pair{a, s1}, std::pair{a, s2}, std::pair{b, t1}, std::pair{b, t2}})
    if (x >= rs->size() || !rs->space.is_maximal(x)) throw Error(ErrorKind::input, "Bell scenario needs pure states");
  return make_bell(indeterministic_tensor(a, b, cap), s1, s2, t1, t2);
}

BellScenario make_bell(const RealSpacePtr& a, const RealSpacePtr& b, std::size_t cap) {
  const IdSet& pa = a->pures();
  const IdSet& pb = b->pures();
  for (Id s1 : pa)
    for (Id s2 : pa) {
      if (s1 == s2 || s1 == a->star_of(s2)) continue;
      for (Id t1 : pb)
        for (Id t2 : pb) {
          if (t1 == t2 || t1 == b->star_of(t2)) continue;
          return make_bell(a, b, s1, s2, t1, t2, cap);
        }
    }
  throw Error(ErrorKind::input, "no admissible choice of measurement pures");
}

BellScenario with_state(BellScenario s, Id real_sigma) {
  s.sigma = s.tensor.completion->real(real_sigma);
  return s;
}

std::array<Marginal, 4> bell_marginals(const BellScenario& s) {
  const TensorProduct& src = *s.tensor.reals.product;
  std::vector<Mask> theta;
  for (Id x : s.tensor.completion->theta(s.sigma)) theta.push_back(s.tensor.reals.mask_of.at(x));
  std::array<Marginal, 4> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto m = tensor_morphism_indeterministic(src, bool_pair(), s.phi[i], s.rho[j], theta);
      std::sort(m.begin(), m.end());
      out[2 * i + j] = std::move(m);
    }
  return out;
}

std::string marginal_name(const Marginal& m) {
  const auto& bb = bool_pair();
  auto one = [&](Mask x) {
    std::uint32_t tuples = 0;
    for (std::size_t k = 0; k < bb.pure_count(); ++k)
      if (x >> k & 1) {
        const auto [p, q] = bb.pure_pair(k);
        tuples |= 1u << ((p == kN ? 1 : 0) | (q == kN ? 2 : 0));
      }
    return box_partition_name(tuples, 2);
  };
  if (m.size() == 1) return one(m[0]);
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? ", " : "") + one(m[i]);
  return out + "}";
}

std::string box_partition_name(std::uint32_t tuples, int k) {
  if (k < 1 || k > 5) throw Error(ErrorKind::input, "box names support 1 to 5 coordinates");
  const int n = 1 << k;
  int codes = 1;
  for (int i = 0; i < k; ++i) codes *= 3;
  struct Box {
    std::uint32_t tuples;
    std::vector<int> v;  // 0 Y, 1 N, 2 ⊥; compared lexicographically
  };
  std::vector<Box> boxes;
  for (int code = 0; code < codes; ++code) {
    Box b{0, std::vector<int>(k)};
    for (int i = 0, c = code; i < k; ++i, c /= 3) b.v[i] = c % 3;
    for (int t = 0; t < n; ++t) {
      bool in = true;
      for (int i = 0; i < k; ++i) in = in && (b.v[i] == 2 || b.v[i] == (t >> i & 1));
      if (in) b.tuples |= 1u << t;
    }
    boxes.push_back(std::move(b));
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& x, const Box& y) {
    const int cx = std::popcount(x.tuples), cy = std::popcount(y.tuples);
    return cx != cy ? cx > cy : x.v < y.v;
  });
  std::string out;
  std::uint32_t left = tuples;
  while (left) {
    const auto it = std::find_if(boxes.begin(), boxes.end(), [&](const Box& b) { return (b.tuples & ~left) == 0; });
    left &= ~it->tuples;
    if (!out.empty()) out += " ⊓ ";
    for (int i = 0; i < k; ++i) out += std::string(i ? "⊗" : "") + (it->v[i] == 0 ? "Y" : it->v[i] == 1 ? "N" : "⊥");
  }
  return out;
}

Mask pair_trace(Mask16 lambda, int i, int j) {
  if (i < 0 || j < 0 || i > 3 || j > 3 || i == j) throw Error(ErrorKind::input, "pair trace needs two distinct coordinates");
  const auto& bb = bool_pair();
  Mask out = 0;
  for (int t = 0; t < 16; ++t)
    if (lambda >> t & 1) out |= bb.pure((t >> i & 1) ? kN : kY, (t >> j & 1) ? kN : kY);
  return out;
}

std::string lambda_name(Mask16 lambda) { return box_partition_name(lambda, 4); }

LambdaSearch lambda_search(const std::array<Marginal, 4>& phi) {
  std::array<Mask, 4> target{};
  for (int k = 0; k < 4; ++k) {
    if (phi[k].size() != 1) throw Error(ErrorKind::input, "marginal is not a real element of 𝔅⊗𝔅");
    target[k] = phi[k][0];
  }
  // Coordinates: φ₁, φ₂, ρ₁, ρ₂. Marginals pair (1,3), (1,4), (2,3), (2,4).
  static constexpr std::array<std::pair<int, int>, 4> pairs{{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
  std::array<std::array<Mask, 16>, 4> single{};
  for (int k = 0; k < 4; ++k)
    for (int t = 0; t < 16; ++t) single[k][t] = pair_trace(Mask16(1u << t), pairs[k].first, pairs[k].second);

  LambdaSearch r;
  std::vector<std::array<Mask, 4>> proj(1u << 16);
  for (std::uint32_t m = 1; m < (1u << 16); ++m) {
    const int low = std::countr_zero(m);
    const std::uint32_t rest = m & (m - 1);
    bool ok = true;
    for (int k = 0; k < 4; ++k) {
      proj[m][k] = proj[rest][k] | single[k][low];
      ok = ok && proj[m][k] == target[k];
    }
    ++r.scanned;
    if (ok && !r.witness) r.witness = Mask16(m);
  }
  return r;
}

Mask16 constructive_lambda(const BellScenario& s) {
  const auto rid = s.tensor.completion->as_real(s.sigma);
  if (!rid) throw Error(ErrorKind::input, "constructive Λ needs a real state");
  const TensorProduct& t = *s.tensor.reals.product;
  const Mask x = s.tensor.reals.mask_of.at(*rid);
  Mask16 out = 0;
  for (std::size_t k = 0; k < t.pure_count(); ++k) {
    if (!(x >> k & 1)) continue;
    const auto [pa, pb] = t.pure_pair(k);
    const std::array<Id, 4> v{s.phi[0][pa], s.phi[1][pa], s.rho[0][pb], s.rho[1][pb]};
    for (int tup = 0; tup < 16; ++tup) {
      bool in = true;
      for (int i = 0; i < 4; ++i) in = in && (v[i] == 0 || v[i] == ((tup >> i & 1) ? kN : kY));
      if (in) out |= Mask16(1u << tup);
    }
  }
  return out;
}

bool bell_nonlocal(const BellScenario& s) {
  const auto phi = bell_marginals(s);
  if (std::any_of(phi.begin(), phi.end(), [](const Marginal& m) { return m.size() != 1; })) return true;
  return !lambda_search(phi).witness.has_value();
}

}  // namespace qlattice
