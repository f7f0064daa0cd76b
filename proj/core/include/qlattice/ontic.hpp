// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qlattice/order.hpp"
#include "qlattice/real.hpp"

namespace qlattice {

enum class ClosureMode { pre, full };

// Operations on subsets of an enumerated space. Sets containing bottom
// together with other elements are rejected.
IdSet pre_closure(const StateSpace& s, const IdSet& u);
IdSet pre_closure_literal(const StateSpace& s, const IdSet& u, std::size_t cap = std::size_t(1) << 22);
IdSet closure(const StateSpace& s, const IdSet& u, ClosureMode mode);
std::vector<IdSet> closure_chain(const StateSpace& s, const IdSet& u);

IdSet max_elements(const StateSpace& s, const IdSet& u);
bool preorder_leq(const StateSpace& s, const IdSet& v, const IdSet& u);  // every v below some u

bool in_K(const RealSpace& rs, const IdSet& u);      // no x, y with x* ⊑ y
bool in_K_hat(const RealSpace& rs, const IdSet& u);  // pairwise: x* ⋢ y and x ≠ y ⇒ unbounded
bool is_admissible(const RealSpace& rs, const IdSet& u);

// Pure pairs σ₁, σ₂ with σ₁⊓σ₂ ≠ ⊥ and neither star below the other: each is
// in K̂, and the report lists how many have an inadmissible closure.
struct NonCompleteness {
  std::size_t pairs = 0;
  std::size_t inadmissible = 0;
  std::optional<std::array<Id, 2>> pair;   // first inadmissible pair
  std::optional<Id> sigma3;                // a pure of the closure above σ₁* or σ₂*
  std::optional<std::array<Id, 2>> clash;  // x, y in the closure with x* ⊑ y
  std::vector<IdSet> chain;                // 𝔠 iterates of {σ₁, σ₂}
  bool witnessed() const { return pair.has_value(); }
};

NonCompleteness non_completeness(const RealSpace& rs);

class Completion;

// A materialized completion: an ordinary StateSpace plus the map back to
// antichains and the real part.
struct EnumeratedCompletion {
  std::shared_ptr<const StateSpace> space;
  std::vector<IdSet> theta;             // by completion id
  std::vector<std::optional<Id>> real;  // completion id -> base id
  std::vector<Id> of_real;              // base id -> completion id
  IdSet reals;                          // completion ids of real elements
  std::size_t hidden_count() const { return theta.size() - reals.size(); }
};

// Lazily interned maximal ontic completion of a RealSpace. Elements are
// handles to canonical antichains; the bottom is the singleton {⊥}.
class Completion {
 public:
  using Elem = Id;

  explicit Completion(RealSpacePtr base);

  const RealSpace& base() const { return *base_; }
  RealSpacePtr base_ptr() const { return base_; }

  Elem bottom() const;
  Elem real(Id r) const;
  // cl_c(u), or nothing when u is not admissible.
  std::optional<Elem> from_set(const IdSet& u) const;
  IdSet theta(Elem e) const;
  std::optional<Id> as_real(Elem e) const;
  bool is_real(Elem e) const { return as_real(e).has_value(); }

  bool leq(Elem a, Elem b) const;
  bool lt(Elem a, Elem b) const { return a != b && leq(a, b); }
  Elem meet(Elem a, Elem b) const;
  std::optional<Elem> join(Elem a, Elem b) const;
  std::optional<Elem> join_all(const std::vector<Elem>& xs) const;
  bool covers(Elem a, Elem b) const;
  std::optional<Elem> star(Elem e) const;  // defined on non-bottom reals
  // Some non-bottom real ω ⊑ a with ω* ⊑ b.
  bool orthogonal(Elem a, Elem b) const;

  std::string name(Elem e) const;
  std::size_t interned() const;

  EnumeratedCompletion enumerate(std::size_t cap = 1000000) const;

 private:
  Elem intern(IdSet canonical) const;

  RealSpacePtr base_;
  mutable std::mutex mu_;
  mutable std::deque<IdSet> elems_;
  mutable std::map<IdSet, Elem> index_;
};

// Θ(F(ξ)) = cl_c{ f(ω) : ω ∈ Θ(ξ) } with bottom images dropped. Throws
// ErrorKind::lift when the image is not admissible.
using LiftedMorphism = std::function<Completion::Elem(Completion::Elem)>;
LiftedMorphism lift_morphism(const Completion& from, const Completion& to, std::vector<Id> f);

// Checks that f : base(A) → base(B) preserves meets before lifting.
IdSet lift_image(const Completion& to, const std::vector<Id>& f, const IdSet& theta);

}  // namespace qlattice
