// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlattice/real.hpp"
#include "qlattice/tensor.hpp"

namespace qlattice {

struct BroadcastResult {
  bool broadcasts = false;
  bool simplex = false;
  // Diagonal morphism S → S⊗S as product masks, by S id. Simplex spaces only.
  std::vector<Mask> diagonal;
  bool traces_verified = false;
  // Obstruction: the two pures, the forced images and the two values of Ψ(⊥).
  std::optional<std::array<Id, 2>> pair;
  std::array<Mask, 3> forced{};  // Ψ(σ₁), Ψ(σ₁*), Ψ(σ₂*) in 𝔅⊗𝔅
  Mask bottom_via_first = 0;     // Ψ(σ₁) ⊓ Ψ(σ₁*)
  Mask bottom_via_second = 0;    // Ψ(σ₁*) ⊓ Ψ(σ₂*)
  std::string witness;
  // Joint-morphism search for l(σ₁,σ₁*), l(σ₂,σ₂*) agrees with the verdict.
  std::optional<bool> search_confirms;
};

// `search_limit` bounds the size of spaces on which the general search runs.
BroadcastResult broadcast_obstruction(const RealSpacePtr& rs, std::size_t search_limit = 64);

// The two-outcome product 𝔅⊗𝔅 used for marginals.
const TensorProduct& bool_pair();

struct BellScenario {
  IndeterministicTensor tensor;
  Id s1 = 0, s2 = 0, t1 = 0, t2 = 0;  // pures of the left and right factors
  Completion::Elem sigma = 0;
  std::array<std::vector<Id>, 2> phi;  // m_{l(σᵢ,σᵢ*)} on the left factor
  std::array<std::vector<Id>, 2> rho;  // m_{l(τⱼ,τⱼ*)} on the right factor

  const RealSpace& left() const { return tensor.reals.product->left(); }
  const RealSpace& right() const { return tensor.reals.product->right(); }
};

// Throws ErrorKind::input unless s1 ∉ {s2, s2*}, t1 ∉ {t2, t2*} and Σ is hidden.
BellScenario make_bell(const RealSpacePtr& a, const RealSpacePtr& b, Id s1, Id s2, Id t1, Id t2,
                       std::size_t cap = 100000);
// Same checks on a product built once and shared between choices.
BellScenario make_bell(IndeterministicTensor tensor, Id s1, Id s2, Id t1, Id t2);
// First admissible choice in id order.
BellScenario make_bell(const RealSpacePtr& a, const RealSpacePtr& b, std::size_t cap = 100000);
// Same measurements, Σ replaced by a real element of the product.
BellScenario with_state(BellScenario s, Id real_sigma);

// Φ₁₃, Φ₁₄, Φ₂₃, Φ₂₄ as antichains of 𝔅⊗𝔅 masks (a single mask when real).
using Marginal = std::vector<Mask>;
std::array<Marginal, 4> bell_marginals(const BellScenario& s);
// Greedy partition of the tuple set into boxes x₁⊗…⊗x_k (xᵢ ∈ {Y, N, ⊥}),
// largest first, ties in coordinate order Y < N < ⊥. Equal sets get equal names.
std::string marginal_name(const Marginal& m);
std::string box_partition_name(std::uint32_t tuples, int k);

// 𝔅^⊗4 as subsets of the 16 pure tuples: bit t is the tuple whose coordinate
// i is N when bit i of t is set, Y otherwise. The full mask is the bottom.
using Mask16 = std::uint16_t;
Mask pair_trace(Mask16 lambda, int i, int j);  // into bool_pair(), 0-based coordinates
std::string lambda_name(Mask16 lambda);

struct LambdaSearch {
  std::optional<Mask16> witness;  // numerically smallest
  std::size_t scanned = 0;
};

// Throws ErrorKind::input when a marginal is not a single real element.
LambdaSearch lambda_search(const std::array<Marginal, 4>& phi);

// ⊓ᵢ φ₁(σᵢ)⊗φ₂(σᵢ)⊗ρ₁(τᵢ)⊗ρ₂(τᵢ) over the pure decomposition of a real Σ.
Mask16 constructive_lambda(const BellScenario& s);

bool bell_nonlocal(const BellScenario& s);

}  // namespace qlattice
