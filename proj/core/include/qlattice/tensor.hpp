// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qlattice/ontic.hpp"
#include "qlattice/real.hpp"

namespace qlattice {

// Underline set of a tensor element: bit k stands for pure tensor k.
using Mask = std::uint64_t;
using Gen = std::pair<Id, Id>;  // a real pair (left, right)

// The minimal tensor product of two enumerated real spaces, handled through
// canonical underline masks. Order is reverse inclusion of masks.
class TensorProduct {
 public:
  TensorProduct(RealSpacePtr a, RealSpacePtr b);

  const RealSpace& left() const { return *a_; }
  const RealSpace& right() const { return *b_; }
  RealSpacePtr left_ptr() const { return a_; }
  RealSpacePtr right_ptr() const { return b_; }
  bool simplex_inputs() const { return simplex_; }

  std::size_t pure_count() const { return pa_.size() * pb_.size(); }
  Gen pure_pair(std::size_t k) const { return {pa_[k / pb_.size()], pb_[k % pb_.size()]}; }
  std::size_t pure_index(Id pa, Id pb) const;
  Mask full() const { return full_; }

  // Expansion formula. Both routes decide the same relation; the exhaustive
  // one walks every K ⊊ I and is kept for cross-checks.
  bool dominates(std::span<const Gen> gens, Gen target) const;
  bool dominates_exhaustive(std::span<const Gen> gens, Gen target) const;

  Mask normalize(std::span<const Gen> gens) const;
  Mask normalize_general(std::span<const Gen> gens) const;  // ignores the simplex fast path
  Mask elementary(Id a, Id b) const { return elementary_[std::size_t(a) * b_->size() + b]; }
  Mask pure(Id pa, Id pb) const { return Mask(1) << pure_index(pa, pb); }

  std::vector<Gen> gens(Mask x) const;
  Mask meet(Mask x, Mask y) const;
  std::optional<Mask> join(Mask x, Mask y) const;
  bool leq(Mask x, Mask y) const { return (y & ~x) == 0; }
  std::optional<Mask> star(Mask x) const;  // absent when the pure stars have no common upper bound
  Id trace(Mask x, int side) const;        // side 1 or 2

  std::string name(Mask x) const;
  std::vector<std::pair<std::string, std::string>> underline_names(Mask x) const;

 private:
  RealSpacePtr a_, b_;
  IdSet pa_, pb_;
  std::vector<Id> pa_index_, pb_index_;
  Mask full_ = 0;
  bool simplex_ = false;
  std::vector<Mask> elementary_;
};

using TensorProductPtr = std::shared_ptr<const TensorProduct>;

// Operations adapter so that closure templates run on symbolic tensor reals.
struct TensorOps {
  const TensorProduct& t;
  using elem = Mask;
  std::vector<Mask> pure_masks;
  explicit TensorOps(const TensorProduct& tp);
  const std::vector<Mask>& pures() const { return pure_masks; }
  Mask meet(Mask x, Mask y) const { return t.meet(x, y); }
  std::optional<Mask> join(Mask x, Mask y) const { return t.join(x, y); }
  bool leq(Mask x, Mask y) const { return t.leq(x, y); }
  bool is_bottom(Mask x) const { return x == t.full(); }
  Mask bottom() const { return t.full(); }
};

std::vector<Mask> tensor_closure(const TensorProduct& t, const std::vector<Mask>& u,
                                 std::vector<std::vector<Mask>>* chain = nullptr);
bool tensor_in_K(const TensorProduct& t, const std::vector<Mask>& u);

// Enumerated product: a RealSpace whose ids map to underline masks.
struct TensorSpace {
  TensorProductPtr product;
  RealSpacePtr space;
  std::vector<Mask> mask_of;
  std::unordered_map<Mask, Id> id_of;

  Id id(Mask m) const;
};

TensorSpace build_tensor(const RealSpacePtr& a, const RealSpacePtr& b, std::size_t cap = 100000);

// Left fold of binary products. coords[p] lists the factor pures of pure p of
// the final space; traces use them.
struct NFoldTensor {
  std::vector<RealSpacePtr> factors;
  std::vector<TensorSpace> stages;
  RealSpacePtr space;
  std::vector<std::vector<Id>> coords;  // indexed by final pure id

  Id trace(Id x, std::size_t factor) const;
};

NFoldTensor nfold_tensor(const std::vector<RealSpacePtr>& factors, std::size_t cap = 100000);

// The indeterministic product: the completion of the minimal product of reals.
struct IndeterministicTensor {
  TensorSpace reals;
  std::shared_ptr<Completion> completion;
};

IndeterministicTensor indeterministic_tensor(const RealSpacePtr& a, const RealSpacePtr& b,
                                             std::size_t cap = 100000);

// ν_{lA,lB}(u) over every real effect pair; true iff u1 and u2 are never
// distinguished.
bool congruence_oracle(const RealSpace& a, const RealSpace& b, std::span<const Gen> u1, std::span<const Gen> u2);

// (f⊗g) on generators: ⊓ f(a_i)⊗g(b_i), normalized in `target`.
Mask tensor_morphism_simplex(const TensorProduct& source, const TensorProduct& target, const std::vector<Id>& f,
                             const std::vector<Id>& g, Mask x);

// Indeterministic variant on an antichain of source reals: cl_c of the images.
// Throws ErrorKind::lift when the image is not admissible.
std::vector<Mask> tensor_morphism_indeterministic(const TensorProduct& source, const TensorProduct& target,
                                                  const std::vector<Id>& f, const std::vector<Id>& g,
                                                  const std::vector<Mask>& theta);

}  // namespace qlattice
