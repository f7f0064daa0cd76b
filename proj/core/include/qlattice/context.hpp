// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlattice/chu.hpp"
#include "qlattice/ontic.hpp"
#include "qlattice/real.hpp"
#include "qlattice/tensor.hpp"

namespace qlattice {

// A state space S together with its real part S̄ ⊆ S. Either S = S̄ (a plain
// real space) or S is an enumerated completion of S̄.
struct RealView {
  RealSpacePtr base;                            // S̄ with its star
  std::shared_ptr<const StateSpace> space;      // S
  std::vector<std::optional<Id>> base_of;       // S id -> S̄ id, absent on hidden states
  std::vector<Id> of_base;                      // S̄ id -> S id
  IdSet reals;                                  // S ids of real states, bottom included
  IdSet real_pures;                             // S ids of the pures of S̄

  const StateSpace& s() const { return *space; }
  bool is_real(Id x) const { return base_of.at(x).has_value(); }
  Id star(Id x) const;  // S id of the star of a non-bottom real
  bool hidden_free() const { return reals.size() == space->size(); }
};

RealView view_of(const RealSpacePtr& rs);
RealView view_of(const Completion& c, const EnumeratedCompletion& ec);

// l(·,·), then l(σ,·) and l(·,σ) for real σ, then l(σ,σ') for non-bottom
// reals with σ* ⊑ σ'.
std::vector<Effect> real_effects(const RealView& v);
bool is_real_effect(const RealView& v, const Effect& l);

// A map S → 𝔅^⊗k on underline masks: bit t stands for the pure tuple whose
// coordinate i is N when bit i of t is set and Y otherwise.
struct JointMorphism {
  std::size_t factors = 0;
  std::vector<Mask> image;  // by S id
  bool constructive = false;

  BoolVal trace(Id sigma, std::size_t i) const;
};

BoolVal tuple_marginal(Mask x, std::size_t k, std::size_t i);

// Empty on success, otherwise the first failed condition in words.
std::optional<std::string> verify_joint_morphism(const RealView& v, const std::vector<Effect>& effects,
                                                 const JointMorphism& psi);

struct SearchLimits {
  std::size_t max_nodes = 5000000;
  std::size_t max_factors = 6;
};

// Simplex spaces use the constructive case table; otherwise values on maximal
// elements are searched and extended by meets. Throws ErrorKind::unsupported
// when S is not generated by its maximal elements.
std::optional<JointMorphism> find_joint_morphism(const RealView& v, const std::vector<Effect>& effects,
                                                 const SearchLimits& lim = {});

// The ids of 𝔅^⊗k for the values of psi, obtained as meets of pure tuples.
std::vector<Id> to_nfold_ids(const JointMorphism& psi, const NFoldTensor& target);

// Drops constants and every effect recoverable from the rest by bars and
// effect-meets. The kept list is jointly compatible iff the input is.
std::vector<Effect> reduce_effects(const RealView& v, const std::vector<Effect>& effects);
std::vector<Effect> close_effects(const RealView& v, const std::vector<Effect>& effects);

bool jointly_compatible(const RealView& v, const std::vector<Effect>& effects, const SearchLimits& lim = {});

enum class ContextKind { type1, type2, other };

struct Context {
  std::vector<Effect> effects;  // sorted
  ContextKind kind = ContextKind::other;
  std::optional<Id> omega;      // the pure of a Type-1 context
  bool validated = false;       // joint morphism found for the reduced list
  bool maximal = false;         // no single real effect extends it

  bool contains(const Effect& l) const;
};

struct Cover {
  std::vector<Effect> real_effects;
  std::vector<Context> contexts;  // Type-1 first, in pure order, then Type-2
  bool complete = false;          // union of contexts is every real effect
  std::vector<std::string> flags; // disagreements between oracle and structure
};

Cover maximal_contexts(const RealView& v, const SearchLimits& lim = {});

// values[c][j] is d^C(l) for l = contexts[c].effects[j].
struct Description {
  std::vector<std::vector<BoolVal>> values;
};

struct DescriptionCheck {
  bool valid = true;      // unit, bar and meet laws inside every context
  bool coherent = true;   // agreement on overlaps
  std::string reason;
};

DescriptionCheck check_description(const RealView& v, const Cover& cover, const Description& d);
Description induced_description(const RealView& v, const Cover& cover, Id sigma);

struct Resolution {
  std::vector<Id> per_context;         // Σ^C
  std::optional<Id> global;            // Σ_𝔇
  bool coherent = false;
  bool admissible = false;
  bool reproduces = false;             // d^C(l) = ε_l(Σ_𝔇) everywhere
  bool globally_defined = false;       // induced by a real state
  std::string reason;
};

// Throws ErrorKind::incoherent naming the overlap when d is not coherent, and
// ErrorKind::input when a context law fails.
Resolution resolve_description(const RealView& v, const Cover& cover, const Description& d);

struct ModelReport {
  std::size_t descriptions = 0;        // coherent descriptions, local-section route
  std::size_t families = 0;            // coherent descriptions, Type-1 family route
  std::size_t states = 0;
  bool routes_agree = false;
  bool bijective = false;
  bool meet_homomorphism = false;
  bool contextual = false;
  std::optional<Id> hidden_witness;    // Σ_𝔇 of a description that is not global
};

ModelReport verify_model_iso(const RealView& v, const Cover& cover, std::size_t cap = 1000000);

std::string context_kind_name(ContextKind k);

}  // namespace qlattice
