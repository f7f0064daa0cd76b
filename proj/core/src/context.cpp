// SPDX-License-Identifier: MIT
#include "qlattice/context.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "qlattice/error.hpp"

namespace qlattice {

Id RealView::star(Id x) const {
  const auto b = base_of.at(x);
  if (!b) throw Error(ErrorKind::input, "star of a hidden state: " + space->label(x));
  return of_base.at(base->star_of(*b));
}

RealView view_of(const RealSpacePtr& rs) {
  RealView v;
  v.base = rs;
  v.space = std::shared_ptr<const StateSpace>(rs, &rs->space);
  v.base_of.resize(rs->size());
  v.of_base.resize(rs->size());
  for (Id i = 0; i < rs->size(); ++i) {
    v.base_of[i] = i;
    v.of_base[i] = i;
    v.reals.push_back(i);
  }
  v.real_pures = rs->pures();
  return v;
}

RealView view_of(const Completion& c, const EnumeratedCompletion& ec) {
  RealView v;
  v.base = c.base_ptr();
  v.space = ec.space;
  v.base_of = ec.real;
  v.of_base = ec.of_real;
  v.reals = ec.reals;
  for (Id p : v.base->pures()) v.real_pures.push_back(ec.of_real[p]);
  v.real_pures = normalized(v.real_pures);
  return v;
}

bool is_real_effect(const RealView& v, const Effect& l) {
  const auto& s = v.s();
  if (l.yes && (*l.yes >= s.size() || !v.is_real(*l.yes))) return false;
  if (l.no && (*l.no >= s.size() || !v.is_real(*l.no))) return false;
  if (l.yes && l.no) {
    if (*l.yes == s.bottom() || *l.no == s.bottom()) return false;
    return s.leq(v.star(*l.yes), *l.no);
  }
  return true;
}

std::vector<Effect> real_effects(const RealView& v) {
  const auto& s = v.s();
  std::vector<Effect> out{Effect{}};
  for (Id r : v.reals) out.push_back(Effect{r, std::nullopt});
  for (Id r : v.reals) out.push_back(Effect{std::nullopt, r});
  for (Id r : v.reals) {
    if (r == s.bottom()) continue;
    for (Id q : v.reals)
      if (q != s.bottom() && s.leq(v.star(r), q)) out.push_back(Effect{r, q});
  }
  return out;
}

namespace {

Mask full_mask(std::size_t k) {
  const std::size_t t = std::size_t(1) << k;
  return t >= 64 ? ~Mask(0) : (Mask(1) << t) - 1;
}

// Tuples whose coordinate i reads N.
Mask coordinate_mask(std::size_t k, std::size_t i) {
  Mask m = 0;
  for (std::size_t t = 0; t < (std::size_t(1) << k); ++t)
    if (t >> i & 1u) m |= Mask(1) << t;
  return m;
}

// Tuples compatible with the given coordinate values; Bot leaves a coordinate free.
Mask consistent_tuples(std::size_t k, const std::vector<BoolVal>& vals) {
  Mask m = 0;
  for (std::size_t t = 0; t < (std::size_t(1) << k); ++t) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      const bool n = t >> i & 1u;
      if (vals[i] == BoolVal::Yes && n) ok = false;
      if (vals[i] == BoolVal::No && !n) ok = false;
    }
    if (ok) m |= Mask(1) << t;
  }
  return m;
}

bool marginals_match(Mask x, std::size_t k, const std::vector<BoolVal>& vals) {
  for (std::size_t i = 0; i < k; ++i)
    if (tuple_marginal(x, k, i) != vals[i]) return false;
  return true;
}

std::vector<std::vector<BoolVal>> value_table(const RealView& v, const std::vector<Effect>& effects) {
  const auto& s = v.s();
  std::vector<std::vector<BoolVal>> vals(s.size(), std::vector<BoolVal>(effects.size()));
  for (Id x = 0; x < s.size(); ++x)
    for (std::size_t i = 0; i < effects.size(); ++i) vals[x][i] = evaluate(s, effects[i], x);
  return vals;
}

bool is_constant(const StateSpace& s, const Effect& l) {
  return l == Effect{} || l == effect_unit(s) || l == effect_bar(effect_unit(s));
}

}  // namespace

BoolVal tuple_marginal(Mask x, std::size_t k, std::size_t i) {
  const Mask n = coordinate_mask(k, i);
  const bool has_n = (x & n) != 0;
  const bool has_y = (x & ~n & full_mask(k)) != 0;
  if (has_y && !has_n) return BoolVal::Yes;
  if (has_n && !has_y) return BoolVal::No;
  return BoolVal::Bot;
}

BoolVal JointMorphism::trace(Id sigma, std::size_t i) const { return tuple_marginal(image.at(sigma), factors, i); }

std::optional<std::string> verify_joint_morphism(const RealView& v, const std::vector<Effect>& effects,
                                                 const JointMorphism& psi) {
  const auto& s = v.s();
  const std::size_t k = effects.size();
  if (psi.factors != k || psi.image.size() != s.size()) return "shape does not match the effect list";
  const Mask full = full_mask(k);
  for (Id x = 0; x < s.size(); ++x)
    if (psi.image[x] == 0 || (psi.image[x] & ~full)) return "empty or out-of-range value at " + s.label(x);
  for (Id a = 0; a < s.size(); ++a)
    for (Id b = a + 1; b < s.size(); ++b)
      if (psi.image[s.meet(a, b)] != (psi.image[a] | psi.image[b]))
        return "meet of (" + s.label(a) + ", " + s.label(b) + ") is not preserved";
  const auto vals = value_table(v, effects);
  for (Id x = 0; x < s.size(); ++x)
    for (std::size_t i = 0; i < k; ++i)
      if (psi.trace(x, i) != vals[x][i])
        return "trace " + std::to_string(i) + " differs from " + effect_name(s, effects[i]) + " at " + s.label(x);
  // Every pulled-back part is the least state whose image lies inside the
  // target part, so it suffices to range over fixed points of that map.
  std::vector<Id> least(s.size());
  std::vector<Id> fixed;
  for (Id x = 0; x < s.size(); ++x) {
    std::optional<Id> acc;
    for (Id y = 0; y < s.size(); ++y)
      if ((psi.image[y] & ~psi.image[x]) == 0) acc = acc ? s.meet(*acc, y) : y;
    least[x] = *acc;
    if (!v.is_real(least[x])) return "pullback part " + s.label(least[x]) + " is not real";
    if (least[x] == x) fixed.push_back(x);
  }
  for (Id x : fixed)
    for (Id y : fixed)
      if ((psi.image[x] & psi.image[y]) == 0 && !is_real_effect(v, Effect{x, y}))
        return "pullback " + effect_name(s, Effect{x, y}) + " is not a real effect";
  return std::nullopt;
}

namespace {

std::optional<JointMorphism> constructive(const RealView& v, const std::vector<Effect>& effects) {
  const auto& s = v.s();
  const std::size_t k = effects.size();
  const auto vals = value_table(v, effects);
  JointMorphism psi{k, std::vector<Mask>(s.size(), 0), true};
  for (Id x = 0; x < s.size(); ++x)
    for (Id p : s.maximal_above(x)) psi.image[x] |= consistent_tuples(k, vals[p]);
  if (verify_joint_morphism(v, effects, psi)) return std::nullopt;
  return psi;
}

std::optional<JointMorphism> search(const RealView& v, const std::vector<Effect>& effects, const SearchLimits& lim) {
  const auto& s = v.s();
  const std::size_t k = effects.size();
  const auto vals = value_table(v, effects);
  const IdSet& maxs = s.maximal();
  const std::size_t nm = maxs.size();

  std::vector<std::vector<std::size_t>> above(s.size());
  std::vector<std::size_t> ready(s.size(), 0);
  for (Id x = 0; x < s.size(); ++x) {
    for (std::size_t j = 0; j < nm; ++j)
      if (s.leq(x, maxs[j])) above[x].push_back(j);
    ready[x] = above[x].back();
  }
  std::vector<std::vector<Id>> elems_at(nm);
  for (Id x = 0; x < s.size(); ++x)
    if (!s.is_maximal(x)) elems_at[ready[x]].push_back(x);
  std::vector<std::vector<std::pair<Id, Id>>> pairs_at(nm);
  for (Id a = 0; a < s.size(); ++a)
    for (Id b = a + 1; b < s.size(); ++b)
      if (!s.leq(a, b) && !s.leq(b, a)) pairs_at[ready[s.meet(a, b)]].emplace_back(a, b);

  // Candidates for a maximal element: subsets of the consistent tuples whose
  // marginals reproduce the values there, in increasing mask order.
  std::vector<std::vector<Mask>> cands(nm);
  std::size_t budget = lim.max_nodes;
  for (std::size_t j = 0; j < nm; ++j) {
    const Mask allowed = consistent_tuples(k, vals[maxs[j]]);
    std::vector<int> bits;
    for (int t = 0; t < 64; ++t)
      if (allowed >> t & 1u) bits.push_back(t);
    if (bits.size() > 24) throw CapExceeded("joint-morphism candidates", std::size_t(1) << 24);
    for (std::uint64_t sub = 1; sub < (std::uint64_t(1) << bits.size()); ++sub) {
      Mask x = 0;
      for (std::size_t b = 0; b < bits.size(); ++b)
        if (sub >> b & 1u) x |= Mask(1) << bits[b];
      if (marginals_match(x, k, vals[maxs[j]])) cands[j].push_back(x);
      if (budget-- == 0) throw CapExceeded("joint-morphism candidates", lim.max_nodes);
    }
    std::sort(cands[j].begin(), cands[j].end());
  }

  JointMorphism psi{k, std::vector<Mask>(s.size(), 0), false};
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> walk = [&](std::size_t j) -> bool {
    if (j == nm) return !verify_joint_morphism(v, effects, psi);
    for (Mask c : cands[j]) {
      if (++nodes > lim.max_nodes) throw CapExceeded("joint-morphism search", nodes);
      psi.image[maxs[j]] = c;
      bool ok = true;
      for (Id x : elems_at[j]) {
        Mask m = 0;
        for (std::size_t i : above[x]) m |= psi.image[maxs[i]];
        psi.image[x] = m;
        if (!marginals_match(m, k, vals[x])) {
          ok = false;
          break;
        }
      }
      if (ok)
        for (auto [a, b] : pairs_at[j])
          if (psi.image[s.meet(a, b)] != (psi.image[a] | psi.image[b])) {
            ok = false;
            break;
          }
      if (ok && walk(j + 1)) return true;
    }
    return false;
  };
  if (walk(0)) return psi;
  return std::nullopt;
}

}  // namespace

std::optional<JointMorphism> find_joint_morphism(const RealView& v, const std::vector<Effect>& effects,
                                                 const SearchLimits& lim) {
  for (const auto& l : effects)
    if (!is_real_effect(v, l)) throw Error(ErrorKind::input, "not a real effect: " + effect_name(v.s(), l));
  if (effects.size() > lim.max_factors)
    throw Error(ErrorKind::unsupported, "joint morphism limited to " + std::to_string(lim.max_factors) + " factors");
  std::optional<Id> w;
  if (!generated_by_maximals(v.s(), &w))
    throw Error(ErrorKind::unsupported, "state space is not generated by its maximal elements (at " +
                                            v.s().label(*w) + ")");
  if (effects.empty()) return JointMorphism{0, std::vector<Mask>(v.s().size(), 1), true};
  if (v.hidden_free() && is_simplex(*v.base)) return constructive(v, effects);
  return search(v, effects, lim);
}

std::vector<Id> to_nfold_ids(const JointMorphism& psi, const NFoldTensor& target) {
  const auto& t = target.space->space;
  if (target.factors.size() != psi.factors) throw Error(ErrorKind::input, "factor count mismatch");
  // The final pure with coordinates c corresponds to the tuple with N where c is N.
  std::vector<Id> pure_of_tuple(std::size_t(1) << psi.factors);
  for (Id p : target.space->pures()) {
    std::size_t tuple = 0;
    for (std::size_t i = 0; i < psi.factors; ++i)
      if (target.coords[p][i] == Id(BoolVal::No)) tuple |= std::size_t(1) << i;
    pure_of_tuple[tuple] = p;
  }
  std::vector<Id> out;
  for (Mask x : psi.image) {
    IdSet ps;
    for (std::size_t tuple = 0; tuple < pure_of_tuple.size(); ++tuple)
      if (x >> tuple & 1u) ps.push_back(pure_of_tuple[tuple]);
    out.push_back(t.meet_all(ps));
  }
  return out;
}

std::vector<Effect> close_effects(const RealView& v, const std::vector<Effect>& effects) {
  const auto& s = v.s();
  std::set<Effect> seen;
  std::vector<Effect> work{Effect{}, effect_unit(s), effect_bar(effect_unit(s))};
  for (const auto& l : effects) work.push_back(l);
  std::vector<Effect> all;
  while (!work.empty()) {
    Effect e = work.back();
    work.pop_back();
    if (!seen.insert(e).second) continue;
    all.push_back(e);
    work.push_back(effect_bar(e));
    for (const auto& f : all) work.push_back(effect_meet(s, e, f));
  }
  return {seen.begin(), seen.end()};
}

std::vector<Effect> reduce_effects(const RealView& v, const std::vector<Effect>& effects) {
  const auto& s = v.s();
  std::vector<Effect> kept;
  for (const auto& l : effects)
    if (!is_constant(s, l) && std::find(kept.begin(), kept.end(), l) == kept.end()) kept.push_back(l);
  // One-sided effects are tried first; they are usually meets of two-sided ones with a constant.
  std::vector<Effect> order = kept;
  std::stable_partition(order.begin(), order.end(), [](const Effect& l) { return !(l.yes && l.no); });
  for (const auto& e : order) {
    std::vector<Effect> rest;
    for (const auto& l : kept)
      if (!(l == e)) rest.push_back(l);
    const auto c = close_effects(v, rest);
    if (std::binary_search(c.begin(), c.end(), e)) kept = std::move(rest);
  }
  return kept;
}

bool jointly_compatible(const RealView& v, const std::vector<Effect>& effects, const SearchLimits& lim) {
  return find_joint_morphism(v, reduce_effects(v, effects), lim).has_value();
}

bool Context::contains(const Effect& l) const { return std::binary_search(effects.begin(), effects.end(), l); }

std::string context_kind_name(ContextKind k) {
  switch (k) {
    case ContextKind::type1: return "type1";
    case ContextKind::type2: return "type2";
    case ContextKind::other: break;
  }
  return "other";
}

namespace {

std::vector<Effect> with(std::vector<Effect> c, const Effect& e) {
  c.push_back(e);
  return c;
}

bool extends(const RealView& v, const std::vector<Effect>& c, const std::vector<Effect>& all, const SearchLimits& lim) {
  for (const auto& e : all)
    if (!std::binary_search(c.begin(), c.end(), e) && jointly_compatible(v, with(c, e), lim)) return true;
  return false;
}

// The one-sided non-constant parts of c fit in two bands [λ,ω] and [λ',ω']
// around the seed (γ,γ') with λ' ⊒ λ*.
bool fits_two_bands(const RealView& v, const std::vector<Effect>& c, Id g, Id gp) {
  const auto& s = v.s();
  IdSet parts;
  for (const auto& l : c) {
    if (is_constant(s, l) || (l.yes && l.no)) continue;
    parts.push_back(l.yes ? *l.yes : *l.no);
  }
  parts = normalized(parts);
  IdSet nz;
  for (Id r : v.reals)
    if (r != s.bottom()) nz.push_back(r);
  for (Id lam : nz) {
    if (!s.leq(lam, g)) continue;
    for (Id lamp : nz) {
      if (!s.leq(lamp, gp) || !s.leq(v.star(lam), lamp)) continue;
      for (Id om : nz) {
        if (!s.leq(g, om)) continue;
        for (Id omp : nz) {
          if (!s.leq(gp, omp)) continue;
          bool ok = true;
          for (Id p : parts)
            if (!(s.leq(lam, p) && s.leq(p, om)) && !(s.leq(lamp, p) && s.leq(p, omp))) {
              ok = false;
              break;
            }
          if (ok) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

Cover maximal_contexts(const RealView& v, const SearchLimits& lim) {
  const auto& s = v.s();
  Cover cov;
  cov.real_effects = real_effects(v);
  const auto& all = cov.real_effects;

  for (Id w : v.real_pures) {
    Context c;
    c.kind = ContextKind::type1;
    c.omega = w;
    c.effects.push_back(Effect{});
    for (Id r : v.reals)
      if (s.leq(r, w)) {
        c.effects.push_back(Effect{r, std::nullopt});
        c.effects.push_back(Effect{std::nullopt, r});
      }
    std::sort(c.effects.begin(), c.effects.end());
    c.validated = jointly_compatible(v, c.effects, lim);
    c.maximal = c.validated && !extends(v, c.effects, all, lim);
    if (close_effects(v, c.effects) != c.effects)
      cov.flags.push_back("type-1 context at " + s.label(w) + " is not closed under bar and meet");
    if (!c.validated) cov.flags.push_back("type-1 context at " + s.label(w) + " has no joint morphism");
    cov.contexts.push_back(std::move(c));
  }

  for (const auto& seed : all) {
    if (!(seed.yes && seed.no)) continue;
    bool covered = false;
    for (const auto& c : cov.contexts)
      if (c.kind == ContextKind::type2 && c.contains(seed)) covered = true;
    if (covered) continue;
    std::vector<Effect> cur = close_effects(v, {seed});
    if (!jointly_compatible(v, cur, lim)) {
      cov.flags.push_back("seed " + effect_name(s, seed) + " is not compatible with its own closure");
      continue;
    }
    // Incompatibility is inherited by supersets, so one greedy pass in id
    // order reaches a maximal context.
    for (const auto& e : all) {
      if (std::binary_search(cur.begin(), cur.end(), e)) continue;
      auto next = with(cur, e);
      if (jointly_compatible(v, next, lim)) cur = close_effects(v, next);
    }
    Context c;
    c.kind = ContextKind::type2;
    c.effects = std::move(cur);
    c.validated = true;
    c.maximal = true;
    for (const auto& l : c.effects)
      if (!is_real_effect(v, l)) {
        cov.flags.push_back("context grown from " + effect_name(s, seed) + " contains the non-real effect " +
                            effect_name(s, l));
        break;
      }
    if (!fits_two_bands(v, c.effects, *seed.yes, *seed.no))
      cov.flags.push_back("context grown from " + effect_name(s, seed) + " escapes the two-band bound");
    cov.contexts.push_back(std::move(c));
  }

  std::set<Effect> seen;
  for (const auto& c : cov.contexts) seen.insert(c.effects.begin(), c.effects.end());
  cov.complete = std::all_of(all.begin(), all.end(), [&](const Effect& l) { return seen.count(l) > 0; });
  return cov;
}

namespace {

std::optional<std::size_t> index_in(const Context& c, const Effect& l) {
  auto it = std::lower_bound(c.effects.begin(), c.effects.end(), l);
  if (it == c.effects.end() || !(*it == l)) return std::nullopt;
  return std::size_t(it - c.effects.begin());
}

// Constraints inside one context, each attached to its largest position so
// that a left-to-right assignment can test it as soon as it is complete.
struct LocalLaws {
  std::vector<std::size_t> unit;                                       // must be Yes
  std::vector<std::pair<std::size_t, std::size_t>> bars;               // (j, bar j)
  std::vector<std::array<std::size_t, 3>> meets;                       // (j1, j2, meet)
  std::vector<std::vector<std::size_t>> bars_at, meets_at;             // indices into bars/meets
};

LocalLaws local_laws(const StateSpace& s, const Context& c) {
  LocalLaws law;
  const std::size_t n = c.effects.size();
  law.bars_at.resize(n);
  law.meets_at.resize(n);
  if (auto u = index_in(c, effect_unit(s))) law.unit.push_back(*u);
  for (std::size_t j = 0; j < n; ++j) {
    if (auto b = index_in(c, effect_bar(c.effects[j]))) {
      law.bars_at[std::max(j, *b)].push_back(law.bars.size());
      law.bars.emplace_back(j, *b);
    }
    for (std::size_t i = j; i < n; ++i)
      if (auto m = index_in(c, effect_meet(s, c.effects[j], c.effects[i]))) {
        law.meets_at[std::max({i, j, *m})].push_back(law.meets.size());
        law.meets.push_back({j, i, *m});
      }
  }
  return law;
}

bool laws_hold_at(const LocalLaws& law, const std::vector<BoolVal>& d, std::size_t pos) {
  for (std::size_t u : law.unit)
    if (u == pos && d[u] != BoolVal::Yes) return false;
  for (std::size_t b : law.bars_at[pos]) {
    auto [j, jb] = law.bars[b];
    if (d[jb] != bool_bar(d[j])) return false;
  }
  for (std::size_t m : law.meets_at[pos]) {
    auto [j, i, jm] = law.meets[m];
    if (d[jm] != bool_meet(d[j], d[i])) return false;
  }
  return true;
}

const char* letter_name(BoolVal b) { return bool_name(b); }

}  // namespace

DescriptionCheck check_description(const RealView& v, const Cover& cover, const Description& d) {
  const auto& s = v.s();
  DescriptionCheck out;
  if (d.values.size() != cover.contexts.size()) {
    out.valid = false;
    out.reason = "description has the wrong number of contexts";
    return out;
  }
  for (std::size_t c = 0; c < cover.contexts.size(); ++c) {
    const auto& ctx = cover.contexts[c];
    if (d.values[c].size() != ctx.effects.size()) {
      out.valid = false;
      out.reason = "context " + std::to_string(c) + " has the wrong number of values";
      return out;
    }
    const auto law = local_laws(s, ctx);
    for (std::size_t p = 0; p < ctx.effects.size(); ++p)
      if (!laws_hold_at(law, d.values[c], p)) {
        out.valid = false;
        out.reason = "context " + std::to_string(c) + " violates a law at " + effect_name(s, ctx.effects[p]);
        return out;
      }
  }
  for (std::size_t a = 0; a < cover.contexts.size(); ++a)
    for (std::size_t b = a + 1; b < cover.contexts.size(); ++b)
      for (std::size_t j = 0; j < cover.contexts[a].effects.size(); ++j) {
        const auto& l = cover.contexts[a].effects[j];
        if (auto i = index_in(cover.contexts[b], l); i && d.values[b][*i] != d.values[a][j]) {
          out.coherent = false;
          out.reason = "contexts " + std::to_string(a) + " and " + std::to_string(b) + " disagree at " +
                       effect_name(s, l) + " (" + letter_name(d.values[a][j]) + " vs " +
                       letter_name(d.values[b][*i]) + ")";
          return out;
        }
      }
  return out;
}

Description induced_description(const RealView& v, const Cover& cover, Id sigma) {
  Description d;
  for (const auto& c : cover.contexts) {
    std::vector<BoolVal> row;
    for (const auto& l : c.effects) row.push_back(evaluate(v.s(), l, sigma));
    d.values.push_back(std::move(row));
  }
  return d;
}

namespace {

bool reproduces(const RealView& v, const Cover& cover, const Description& d, Id sigma) {
  for (std::size_t c = 0; c < cover.contexts.size(); ++c)
    for (std::size_t j = 0; j < cover.contexts[c].effects.size(); ++j)
      if (evaluate(v.s(), cover.contexts[c].effects[j], sigma) != d.values[c][j]) return false;
  return true;
}

}  // namespace

Resolution resolve_description(const RealView& v, const Cover& cover, const Description& d) {
  const auto& s = v.s();
  const auto chk = check_description(v, cover, d);
  if (!chk.valid) throw Error(ErrorKind::input, chk.reason);
  if (!chk.coherent) throw Error(ErrorKind::incoherent, chk.reason);
  Resolution r;
  r.coherent = true;
  for (std::size_t c = 0; c < cover.contexts.size(); ++c) {
    const auto& ctx = cover.contexts[c];
    Effect lc = effect_unit(s);
    for (std::size_t j = 0; j < ctx.effects.size(); ++j)
      if (d.values[c][j] == BoolVal::Yes) lc = effect_meet(s, lc, ctx.effects[j]);
    std::optional<Id> sc;
    for (Id x = 0; x < s.size(); ++x)
      if (evaluate(s, lc, x) == BoolVal::Yes) sc = sc ? s.meet(*sc, x) : x;
    if (!sc) throw Error(ErrorKind::input, "context " + std::to_string(c) + " has no state meeting its YES effects");
    r.per_context.push_back(*sc);
  }
  IdSet u, ub;
  bool all_real = true;
  for (std::size_t c = 0; c < cover.contexts.size(); ++c)
    if (cover.contexts[c].kind == ContextKind::type1) {
      u.push_back(r.per_context[c]);
      if (auto b = v.base_of[r.per_context[c]]) ub.push_back(*b);
      else all_real = false;
    }
  u = normalized(u);
  ub = normalized(ub);
  if (ub.size() > 1) std::erase(ub, v.base->bottom());
  r.admissible = all_real && !ub.empty() && is_admissible(*v.base, ub);
  r.global = s.join_all(u);
  if (!r.global) {
    r.reason = "Type-1 ontic family has no join";
    return r;
  }
  r.reproduces = reproduces(v, cover, d, *r.global);
  for (Id x : v.reals)
    if (reproduces(v, cover, d, x)) r.globally_defined = true;
  return r;
}

namespace {

// Every assignment of one context obeying its laws, in lexicographic order.
std::vector<std::vector<BoolVal>> local_sections(const StateSpace& s, const Context& c, std::size_t cap,
                                                 std::size_t& nodes) {
  const auto law = local_laws(s, c);
  std::vector<std::vector<BoolVal>> out;
  std::vector<BoolVal> d(c.effects.size(), BoolVal::Bot);
  std::function<void(std::size_t)> walk = [&](std::size_t p) {
    if (p == d.size()) {
      out.push_back(d);
      return;
    }
    for (BoolVal b : {BoolVal::Bot, BoolVal::Yes, BoolVal::No}) {
      if (++nodes > cap) throw CapExceeded("local section enumeration", nodes);
      d[p] = b;
      if (laws_hold_at(law, d, p)) walk(p + 1);
    }
  };
  walk(0);
  return out;
}

std::vector<Description> glue_sections(const RealView& v, const Cover& cover, std::size_t cap) {
  const auto& s = v.s();
  std::size_t nodes = 0;
  std::vector<std::vector<std::vector<BoolVal>>> sections;
  for (const auto& c : cover.contexts) sections.push_back(local_sections(s, c, cap, nodes));
  std::vector<Description> out;
  std::map<Effect, BoolVal> fixed;
  Description cur;
  std::function<void(std::size_t)> walk = [&](std::size_t c) {
    if (c == cover.contexts.size()) {
      out.push_back(cur);
      return;
    }
    const auto& effs = cover.contexts[c].effects;
    for (const auto& sec : sections[c]) {
      if (++nodes > cap) throw CapExceeded("section gluing", nodes);
      bool ok = true;
      for (std::size_t j = 0; j < effs.size() && ok; ++j)
        if (auto it = fixed.find(effs[j]); it != fixed.end() && it->second != sec[j]) ok = false;
      if (!ok) continue;
      std::vector<Effect> added;
      for (std::size_t j = 0; j < effs.size(); ++j)
        if (fixed.emplace(effs[j], sec[j]).second) added.push_back(effs[j]);
      cur.values.push_back(sec);
      walk(c + 1);
      cur.values.pop_back();
      for (const auto& e : added) fixed.erase(e);
    }
  };
  walk(0);
  return out;
}

// Families Σ^ω ⊑ ω of reals obeying ω ⊓ Σ^{ω'} ⊑ Σ^ω, turned into
// descriptions through one-sided values.
std::vector<Description> families_route(const RealView& v, const Cover& cover, std::size_t cap) {
  const auto& s = v.s();
  const auto& pures = v.real_pures;
  std::vector<IdSet> dom(pures.size());
  for (std::size_t i = 0; i < pures.size(); ++i)
    for (Id r : v.reals)
      if (s.leq(r, pures[i])) dom[i].push_back(r);
  std::vector<Id> fam(pures.size());
  std::vector<Description> out;
  std::size_t nodes = 0;

  auto one_sided = [&](const Effect& l) -> BoolVal {
    // l(α,·) or l(·,α) is read at Σ^ω for any pure ω above α.
    const Id part = l.yes ? *l.yes : *l.no;
    for (std::size_t i = 0; i < pures.size(); ++i)
      if (s.leq(part, pures[i])) return evaluate(s, l, fam[i]);
    return BoolVal::Bot;
  };

  auto build = [&]() -> std::optional<Description> {
    Description d;
    for (const auto& c : cover.contexts) {
      std::vector<BoolVal> row;
      for (const auto& l : c.effects) {
        if (!l.yes && !l.no) {
          row.push_back(BoolVal::Bot);
        } else if (!l.yes || !l.no) {
          row.push_back(one_sided(l));
        } else {
          const bool y = one_sided(Effect{l.yes, std::nullopt}) == BoolVal::Yes;
          const bool n = one_sided(Effect{std::nullopt, l.no}) == BoolVal::No;
          if (y && n) return std::nullopt;
          row.push_back(y ? BoolVal::Yes : n ? BoolVal::No : BoolVal::Bot);
        }
      }
      d.values.push_back(std::move(row));
    }
    return d;
  };

  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == pures.size()) {
      // No γ with γ and γ* both below members of the family.
      for (Id a : fam)
        for (Id g : v.reals) {
          if (g == s.bottom() || !s.leq(g, a)) continue;
          for (Id b : fam)
            if (s.leq(v.star(g), b)) return;
        }
      if (auto d = build()) {
        const auto chk = check_description(v, cover, *d);
        if (chk.valid && chk.coherent) out.push_back(std::move(*d));
      }
      return;
    }
    for (Id x : dom[i]) {
      if (++nodes > cap) throw CapExceeded("ontic family enumeration", nodes);
      fam[i] = x;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = s.leq(s.meet(pures[i], fam[j]), fam[i]) && s.leq(s.meet(pures[j], fam[i]), fam[j]);
      if (ok) walk(i + 1);
    }
  };
  walk(0);
  return out;
}

Description meet_of(const Description& a, const Description& b) {
  Description m = a;
  for (std::size_t c = 0; c < m.values.size(); ++c)
    for (std::size_t j = 0; j < m.values[c].size(); ++j) m.values[c][j] = bool_meet(a.values[c][j], b.values[c][j]);
  return m;
}

}  // namespace

ModelReport verify_model_iso(const RealView& v, const Cover& cover, std::size_t cap) {
  const auto& s = v.s();
  ModelReport rep;
  rep.states = s.size();
  auto glued = glue_sections(v, cover, cap);
  auto fams = families_route(v, cover, cap);
  rep.descriptions = glued.size();
  rep.families = fams.size();
  auto key = [](const Description& d) { return d.values; };
  std::set<std::vector<std::vector<BoolVal>>> ka, kb;
  for (const auto& d : glued) ka.insert(key(d));
  for (const auto& d : fams) kb.insert(key(d));
  rep.routes_agree = ka == kb;

  std::vector<Id> sigma;
  std::set<Id> hit;
  for (const auto& d : glued) {
    const auto r = resolve_description(v, cover, d);
    if (!r.global || !r.reproduces) {
      sigma.push_back(Id(-1));
      continue;
    }
    sigma.push_back(*r.global);
    hit.insert(*r.global);
    if (!r.globally_defined && !rep.contextual) {
      rep.contextual = true;
      rep.hidden_witness = *r.global;
    }
  }
  rep.bijective = hit.size() == glued.size() && hit.size() == s.size();
  rep.meet_homomorphism = rep.bijective;
  for (std::size_t a = 0; a < glued.size() && rep.meet_homomorphism; ++a)
    for (std::size_t b = a + 1; b < glued.size(); ++b) {
      const auto m = meet_of(glued[a], glued[b]);
      const auto chk = check_description(v, cover, m);
      if (!chk.valid || !chk.coherent) {
        rep.meet_homomorphism = false;
        break;
      }
      const auto r = resolve_description(v, cover, m);
      if (!r.global || *r.global != s.meet(sigma[a], sigma[b])) {
        rep.meet_homomorphism = false;
        break;
      }
    }
  return rep;
}

}  // namespace qlattice
