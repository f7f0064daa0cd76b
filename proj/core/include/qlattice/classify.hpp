// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlattice/ontic.hpp"
#include "qlattice/real.hpp"

namespace qlattice {

struct Classification {
  bool deterministic = false;
  bool completely_indeterministic = false;
  bool linear = false;
  std::vector<Id> deterministic_witness;    // (σ, ω) with ω outside both ↑σ and ↑σ*
  std::vector<Id> indeterministic_witness;  // (σ, λ) with no admissible κ
  std::vector<Id> linear_witness;           // (σ1, σ2) with no σ3
};

// Linearity quantifies σ3 over the completion, which is built lazily here.
Classification classify(const RealSpacePtr& rs);

struct Orthoclosure {
  IdSet orthogonal;
  IdSet double_orthogonal;
};

// S^⊥ on an enumerated completion, with σ ⊥ σ' iff some non-bottom real
// ω ⊑ σ has ω* ⊑ σ'.
Orthoclosure orthoclosure(const Completion& c, const EnumeratedCompletion& ec, const IdSet& s);
IdSet orthogonal_set(const Completion& c, const EnumeratedCompletion& ec, const IdSet& s);

}  // namespace qlattice
