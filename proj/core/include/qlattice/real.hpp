// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlattice/order.hpp"

namespace qlattice {

// A space of states with a star involution on its non-bottom elements.
struct RealSpace {
  StateSpace space;
  std::vector<std::optional<Id>> star;  // empty at bottom
  std::string name;

  std::size_t size() const { return space.size(); }
  Id bottom() const { return space.bottom(); }
  const IdSet& pures() const { return space.maximal(); }
  Id star_of(Id a) const;  // throws on bottom
};

using RealSpacePtr = std::shared_ptr<const RealSpace>;

enum class SpaceKind { boolean, simplex, zprime, custom };

RealSpace make_space(SpaceKind kind, int n);
RealSpace make_bool();           // ids: ⊥ = 0, Y = 1, N = 2, matching BoolVal
RealSpace make_simplex(int n);   // Z_N
RealSpace make_zprime(int n);    // Z′_N
StateSpace make_counterexample_lattice();  // ten elements, generated by four maximals

// Every element is a nonempty set of pures; the star sends σ to the meet of
// the pures not above σ. Bottom has no star.
RealSpace with_simplex_star(StateSpace s, std::string name);

struct Violation {
  std::string axiom;
  Id a = 0;
  std::optional<Id> b;
};

std::vector<Violation> validate_real(const RealSpace& rs);

// A distinguished subset of an ambient space carrying the real structure.
struct RealStructureEmbedding {
  const StateSpace* ambient = nullptr;
  IdSet real_subset;
  std::vector<std::optional<Id>> star;  // indexed by ambient id; used only on the subset
};

std::vector<Violation> validate_real(const RealStructureEmbedding& emb);

// Deterministic spaces are exactly those with a unique pure decomposition.
bool is_simplex(const RealSpace& rs);

std::string violation_text(const StateSpace& s, const Violation& v);

}  // namespace qlattice
