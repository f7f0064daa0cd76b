// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace qlattice {

using Id = std::uint32_t;
using IdSet = std::vector<Id>;  // always sorted, no duplicates
using Bits = boost::dynamic_bitset<std::uint64_t>;

IdSet bits_to_ids(const Bits& b);
Bits ids_to_bits(std::size_t n, std::span<const Id> ids);
IdSet normalized(IdSet ids);

// Three-valued boolean domain. Bot sits below Yes and No, which are incomparable.
enum class BoolVal : std::uint8_t { Bot = 0, Yes = 1, No = 2 };

BoolVal bool_meet(BoolVal x, BoolVal y);
BoolVal bool_bullet(BoolVal x, BoolVal y);
BoolVal bool_bar(BoolVal x);
bool bool_leq(BoolVal x, BoolVal y);
const char* bool_name(BoolVal x);   // "YES", "NO", "BOT"
char bool_letter(BoolVal x);        // 'Y', 'N', 'B'

// Finite poset with bottom and total meets. Immutable once built.
class StateSpace {
 public:
  StateSpace() = default;

  // `leq_pairs` generates the order: the reflexive transitive closure is taken,
  // then antisymmetry, bottom and meet totality are checked.
  StateSpace(std::vector<std::string> labels, const std::vector<std::pair<Id, Id>>& leq_pairs);

  // Strict variant: rows[i] is the full up-set of i. No closure is taken, so
  // reflexivity and transitivity failures are reported with the offending pair.
  static StateSpace from_matrix(std::vector<std::string> labels, const std::vector<Bits>& up_rows);

  std::size_t size() const { return labels_.size(); }
  Id bottom() const { return bottom_; }
  bool leq(Id a, Id b) const { return up_[a].test(b); }
  bool lt(Id a, Id b) const { return a != b && leq(a, b); }
  const Bits& up(Id a) const { return up_[a]; }
  const Bits& down(Id a) const { return down_[a]; }

  Id meet(Id a, Id b) const { return meet_[std::size_t(a) * size() + b]; }
  Id meet_all(std::span<const Id> xs) const;
  std::optional<Id> join(Id a, Id b) const;
  std::optional<Id> join_all(std::span<const Id> xs) const;
  bool bounded(Id a, Id b) const { return up_[a].intersects(up_[b]); }
  bool bounded_all(std::span<const Id> xs) const;

  const IdSet& maximal() const { return maximal_; }
  bool is_maximal(Id a) const { return is_max_[a]; }
  IdSet maximal_above(Id a) const;

  // a ⋖ b: a strictly below b with nothing strictly between.
  bool covers(Id a, Id b) const;
  std::vector<std::pair<Id, Id>> covering_pairs() const;

  const std::string& label(Id a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Id> find(std::string_view name) const;
  Id at(std::string_view name) const;  // throws on unknown label
  void check_id(Id a) const;

  std::size_t rank_below(Id a) const { return down_count_[a]; }

 private:
  void finish();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, Id> index_;
  std::vector<Bits> up_, down_;
  std::vector<std::size_t> down_count_, up_count_;
  std::vector<Id> meet_;
  IdSet maximal_;
  std::vector<bool> is_max_;
  Id bottom_ = 0;
};

struct StructureReport {
  IdSet maximal;
  std::vector<std::pair<Id, Id>> covering;
  bool generated_by_maximals = false;
  std::optional<Id> generation_witness;
  bool distributive = false;
  std::optional<std::array<Id, 3>> distributivity_witness;  // (σ, σ1, σ2)
  bool finite_rank = false;
};

// Distributivity allows σ'1 or σ'2 to be the empty meet (a formal top).
StructureReport structure_report(const StateSpace& s);

bool is_distributive(const StateSpace& s, std::optional<std::array<Id, 3>>* witness = nullptr);
bool generated_by_maximals(const StateSpace& s, std::optional<Id>* witness = nullptr);
bool finite_rank_condition(const StateSpace& s);

struct CoveringCheck {
  std::size_t checked = 0;  // tuples meeting the hypothesis
  std::size_t failures = 0;
  std::vector<Id> witness;  // first failing tuple of pures
  bool pass() const { return failures == 0; }
};

// Distinct pures α, β: α⊓β ⋖ α and α⊓β ⋖ β.
CoveringCheck pure_meet_covering(const StateSpace& s);
// Distinct pures λ, α, β, γ, δ with α⊓β ≠ γ⊓δ and both ⋖ λ:
// α⊓β⊓γ⊓δ ⋖ α⊓β and α⊓β⊓γ⊓δ ⋖ γ⊓δ. Witness order is (λ, α, β, γ, δ).
CoveringCheck pure_meet_second_covering(const StateSpace& s);

}  // namespace qlattice
