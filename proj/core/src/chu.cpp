// SPDX-License-Identifier: MIT
#include "qlattice/chu.hpp"

#include "qlattice/error.hpp"

namespace qlattice {

namespace {

// Join of two optional parts: absent if either is absent or they are unbounded.
std::optional<Id> part_join(const StateSpace& s, std::optional<Id> a, std::optional<Id> b) {
  if (!a || !b) return std::nullopt;
  return s.join(*a, *b);
}

bool part_leq(const StateSpace& s, std::optional<Id> part, Id sigma) { return part && s.leq(*part, sigma); }

}  // namespace

Effect effect_unit(const StateSpace& s) { return Effect{s.bottom(), std::nullopt}; }

bool is_valid_effect(const StateSpace& s, const Effect& l) {
  if (l.yes && *l.yes >= s.size()) return false;
  if (l.no && *l.no >= s.size()) return false;
  if (l.yes && l.no) return !s.bounded(*l.yes, *l.no);
  return true;
}

void check_effect(const StateSpace& s, const Effect& l) {
  if (!is_valid_effect(s, l)) throw Error(ErrorKind::input, "invalid effect " + effect_name(s, l));
}

std::string effect_name(const StateSpace& s, const Effect& l) {
  auto part = [&](std::optional<Id> p) -> std::string {
    if (!p) return "·";
    return *p < s.size() ? s.label(*p) : "#" + std::to_string(*p);
  };
  return "l(" + part(l.yes) + "," + part(l.no) + ")";
}

BoolVal evaluate(const StateSpace& s, const Effect& l, Id sigma) {
  s.check_id(sigma);
  if (part_leq(s, l.yes, sigma)) return BoolVal::Yes;
  if (part_leq(s, l.no, sigma)) return BoolVal::No;
  return BoolVal::Bot;
}

Effect effect_meet(const StateSpace& s, const Effect& l1, const Effect& l2) {
  return Effect{part_join(s, l1.yes, l2.yes), part_join(s, l1.no, l2.no)};
}

std::optional<Effect> effect_sup(const StateSpace& s, const Effect& l1, const Effect& l2) {
  // In the effect order an absent part sits above every state part, so the
  // componentwise meet treats "·" as a unit.
  auto part_meet = [&](std::optional<Id> a, std::optional<Id> b) -> std::optional<Id> {
    if (!a) return b;
    if (!b) return a;
    return s.meet(*a, *b);
  };
  Effect sup{part_meet(l1.yes, l2.yes), part_meet(l1.no, l2.no)};
  if (sup.yes && sup.no && s.bounded(*sup.yes, *sup.no)) return std::nullopt;
  return sup;
}

std::vector<Effect> enumerate_effects(const StateSpace& s, const IdSet* parts) {
  IdSet all;
  if (!parts) {
    for (Id i = 0; i < s.size(); ++i) all.push_back(i);
    parts = &all;
  }
  std::vector<Effect> out;
  out.push_back(Effect{});
  for (Id a : *parts) out.push_back(Effect{a, std::nullopt});
  for (Id a : *parts) out.push_back(Effect{std::nullopt, a});
  for (Id a : *parts)
    for (Id b : *parts)
      if (!s.bounded(a, b)) out.push_back(Effect{a, b});
  return out;
}

Effect ChuMorphism::pullback(const Effect& l) const {
  // The dual part is the meet of the preimage of the up-set of the target part;
  // it is absent when that preimage is empty.
  auto pull = [&](std::optional<Id> part) -> std::optional<Id> {
    if (!part) return std::nullopt;
    std::optional<Id> acc;
    for (Id s = 0; s < from->size(); ++s)
      if (to->leq(*part, forward[s])) acc = acc ? from->meet(*acc, s) : s;
    if (acc && !to->leq(*part, forward[*acc])) return std::nullopt;
    return acc;
  };
  return Effect{pull(l.yes), pull(l.no)};
}

MorphismVerdict check_morphism(const StateSpace& from, const StateSpace& to, const std::vector<Id>& forward) {
  if (forward.size() != from.size()) throw Error(ErrorKind::input, "forward map has wrong domain size");
  for (Id v : forward) to.check_id(v);
  for (Id a = 0; a < from.size(); ++a)
    for (Id b = a + 1; b < from.size(); ++b)
      if (forward[from.meet(a, b)] != to.meet(forward[a], forward[b])) return {false, std::pair{a, b}};
  return {};
}

ChuMorphism dualize(const StateSpace& from, const StateSpace& to, std::vector<Id> forward) {
  auto v = check_morphism(from, to, forward);
  if (!v.ok)
    throw Error(ErrorKind::morphism, "not a homomorphism: meet of (" + from.label(v.witness->first) + ", " +
                                         from.label(v.witness->second) + ") is not preserved");
  return ChuMorphism{&from, &to, std::move(forward)};
}

std::map<Effect, Effect> dual_table(const ChuMorphism& f, const std::vector<Effect>& target_effects) {
  std::map<Effect, Effect> out;
  for (const auto& l : target_effects) out.emplace(l, f.pullback(l));
  return out;
}

Id state_from_effect_map(const StateSpace& s, const std::vector<Effect>& effects,
                         const std::function<BoolVal(const Effect&)>& b) {
  // l_B is the meet of every effect sent to YES; its yes part is the state.
  std::optional<Effect> lb;
  for (const auto& l : effects)
    if (b(l) == BoolVal::Yes) lb = lb ? effect_meet(s, *lb, l) : l;
  if (!lb || !lb->yes) throw Error(ErrorKind::morphism, "not a homomorphism: YES-effects have no common state");
  const Id sigma = *lb->yes;
  for (const auto& l : effects)
    if (evaluate(s, l, sigma) != b(l))
      throw Error(ErrorKind::morphism, "not a homomorphism: value at " + effect_name(s, l) +
                                           " disagrees with the reconstructed state " + s.label(sigma));
  return sigma;
}

std::vector<Id> measurement_map(const StateSpace& s, const Effect& l) {
  check_effect(s, l);
  std::vector<Id> out(s.size());
  for (Id i = 0; i < s.size(); ++i) out[i] = Id(evaluate(s, l, i));
  return out;
}

ChuMorphism compose(const ChuMorphism& g, const ChuMorphism& f) {
  if (f.to != g.from) throw Error(ErrorKind::input, "composition of non-matching morphisms");
  std::vector<Id> fw(f.from->size());
  for (Id i = 0; i < fw.size(); ++i) fw[i] = g.forward[f.forward[i]];
  return ChuMorphism{f.from, g.to, std::move(fw)};
}

}  // namespace qlattice
