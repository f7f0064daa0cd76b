// SPDX-License-Identifier: MIT
#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlattice/order.hpp"

namespace qlattice {

// l(yes, no). An absent part is the "·" sentinel; it is distinct from a part
// equal to bottom.
struct Effect {
  std::optional<Id> yes;
  std::optional<Id> no;

  auto operator<=>(const Effect&) const = default;
};

Effect effect_unit(const StateSpace& s);  // l(⊥, ·), always YES
inline Effect effect_bottom() { return Effect{}; }  // l(·, ·), always BOT
inline Effect effect_bar(const Effect& l) { return Effect{l.no, l.yes}; }

bool is_valid_effect(const StateSpace& s, const Effect& l);
void check_effect(const StateSpace& s, const Effect& l);
std::string effect_name(const StateSpace& s, const Effect& l);

BoolVal evaluate(const StateSpace& s, const Effect& l, Id sigma);
Effect effect_meet(const StateSpace& s, const Effect& l1, const Effect& l2);
std::optional<Effect> effect_sup(const StateSpace& s, const Effect& l1, const Effect& l2);

// All effects with parts drawn from `parts` (default: the whole carrier).
std::vector<Effect> enumerate_effects(const StateSpace& s, const IdSet* parts = nullptr);

struct MorphismVerdict {
  bool ok = true;
  std::optional<std::pair<Id, Id>> witness;  // smallest pair whose meet is not preserved
};

// Forward state map between two spaces. The dual is derived, never supplied.
struct ChuMorphism {
  const StateSpace* from = nullptr;
  const StateSpace* to = nullptr;
  std::vector<Id> forward;

  Id operator()(Id sigma) const { return forward.at(sigma); }
  // Dual effect: ε_{pullback(l)}(σ) = ε_l(forward(σ)).
  Effect pullback(const Effect& l) const;
};

MorphismVerdict check_morphism(const StateSpace& from, const StateSpace& to, const std::vector<Id>& forward);

// Throws ErrorKind::morphism naming the smallest violating pair.
ChuMorphism dualize(const StateSpace& from, const StateSpace& to, std::vector<Id> forward);

// Full dual table over the effects of the target space.
std::map<Effect, Effect> dual_table(const ChuMorphism& f, const std::vector<Effect>& target_effects);

// σ with ε_l(σ) = b(l) for every listed effect. Throws ErrorKind::morphism when
// b is not induced by a state.
Id state_from_effect_map(const StateSpace& s, const std::vector<Effect>& effects,
                         const std::function<BoolVal(const Effect&)>& b);

// The measurement m_l : S → 𝔅, σ ↦ ε_l(σ). Target ids follow BoolVal values.
std::vector<Id> measurement_map(const StateSpace& s, const Effect& l);

ChuMorphism compose(const ChuMorphism& g, const ChuMorphism& f);  // g ∘ f

}  // namespace qlattice
