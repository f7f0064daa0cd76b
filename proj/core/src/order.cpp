// SPDX-License-Identifier: MIT
#include "qlattice/order.hpp"

#include <algorithm>

#include "qlattice/error.hpp"

namespace qlattice {

IdSet bits_to_ids(const Bits& b) {
  IdSet out;
  out.reserve(b.count());
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(Id(i));
  return out;
}

Bits ids_to_bits(std::size_t n, std::span<const Id> ids) {
  Bits b(n);
  for (Id i : ids) b.set(i);
  return b;
}

IdSet normalized(IdSet ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

BoolVal bool_meet(BoolVal x, BoolVal y) { return x == y ? x : BoolVal::Bot; }

BoolVal bool_bullet(BoolVal x, BoolVal y) {
  if (x == BoolVal::No || y == BoolVal::No) return BoolVal::No;
  if (x == BoolVal::Yes) return y;
  if (y == BoolVal::Yes) return x;
  return BoolVal::Bot;
}

BoolVal bool_bar(BoolVal x) {
  switch (x) {
    case BoolVal::Yes: return BoolVal::No;
    case BoolVal::No: return BoolVal::Yes;
    default: return BoolVal::Bot;
  }
}

bool bool_leq(BoolVal x, BoolVal y) { return x == BoolVal::Bot || x == y; }

const char* bool_name(BoolVal x) {
  switch (x) {
    case BoolVal::Yes: return "YES";
    case BoolVal::No: return "NO";
    default: return "BOT";
  }
}

char bool_letter(BoolVal x) {
  switch (x) {
    case BoolVal::Yes: return 'Y';
    case BoolVal::No: return 'N';
    default: return 'B';
  }
}

namespace {

std::string pair_text(const std::vector<std::string>& labels, Id a, Id b) {
  return "(" + labels[a] + ", " + labels[b] + ")";
}

}  // namespace

StateSpace::StateSpace(std::vector<std::string> labels, const std::vector<std::pair<Id, Id>>& leq_pairs)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw Error(ErrorKind::input, "empty carrier");
  up_.assign(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) up_[i].set(i);
  for (auto [a, b] : leq_pairs) {
    if (a >= n || b >= n) throw Error(ErrorKind::input, "order pair refers to unknown id");
    up_[a].set(b);
  }
  // Warshall on rows: if k ∈ up(i) then up(k) ⊆ up(i).
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (up_[i].test(k)) up_[i] |= up_[k];
  finish();
}

StateSpace StateSpace::from_matrix(std::vector<std::string> labels, const std::vector<Bits>& up_rows) {
  StateSpace s;
  s.labels_ = std::move(labels);
  const std::size_t n = s.labels_.size();
  if (n == 0) throw Error(ErrorKind::input, "empty carrier");
  if (up_rows.size() != n) throw Error(ErrorKind::input, "order matrix has wrong row count");
  for (std::size_t i = 0; i < n; ++i) {
    if (up_rows[i].size() != n) throw Error(ErrorKind::input, "order matrix has wrong column count");
    if (!up_rows[i].test(i))
      throw Error(ErrorKind::input, "order is not reflexive at " + pair_text(s.labels_, Id(i), Id(i)));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (auto j = up_rows[i].find_first(); j != Bits::npos; j = up_rows[i].find_next(j))
      if (!up_rows[j].is_subset_of(up_rows[i])) {
        Bits miss = up_rows[j] - up_rows[i];
        throw Error(ErrorKind::input, "order is not transitive: " + pair_text(s.labels_, Id(i), Id(j)) +
                                          " then " + pair_text(s.labels_, Id(j), Id(miss.find_first())));
      }
  s.up_ = up_rows;
  s.finish();
  return s;
}

void StateSpace::finish() {
  const std::size_t n = labels_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(labels_[i], Id(i)).second)
      throw Error(ErrorKind::input, "duplicate label '" + labels_[i] + "'");
  }
  down_.assign(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i)
    for (auto j = up_[i].find_first(); j != Bits::npos; j = up_[i].find_next(j)) down_[j].set(i);
  for (std::size_t i = 0; i < n; ++i)
    for (auto j = up_[i].find_next(i); j != Bits::npos; j = up_[i].find_next(j))
      if (up_[j].test(i))
        throw Error(ErrorKind::input, "order is not antisymmetric at " + pair_text(labels_, Id(i), Id(j)));
  // Antisymmetry was only scanned for j > i; the symmetric case j < i is the same pair.
  down_count_.resize(n);
  up_count_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    down_count_[i] = down_[i].count();
    up_count_[i] = up_[i].count();
  }
  bool found_bottom = false;
  for (std::size_t i = 0; i < n; ++i)
    if (up_count_[i] == n) {
      bottom_ = Id(i);
      found_bottom = true;
    }
  if (!found_bottom) throw Error(ErrorKind::input, "no bottom element");

  meet_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    meet_[a * n + a] = Id(a);
    for (std::size_t b = a + 1; b < n; ++b) {
      Bits common = down_[a] & down_[b];
      const std::size_t want = common.count();
      std::optional<Id> m;
      for (auto c = common.find_first(); c != Bits::npos; c = common.find_next(c))
        if (down_count_[c] == want) {
          m = Id(c);
          break;
        }
      if (!m) throw Error(ErrorKind::input, "no greatest lower bound for " + pair_text(labels_, Id(a), Id(b)));
      meet_[a * n + b] = *m;
      meet_[b * n + a] = *m;
    }
  }
  is_max_.assign(n, false);
  maximal_.clear();
  for (std::size_t i = 0; i < n; ++i)
    if (up_count_[i] == 1) {
      is_max_[i] = true;
      maximal_.push_back(Id(i));
    }
}

void StateSpace::check_id(Id a) const {
  if (a >= size()) throw Error(ErrorKind::input, "invalid element id " + std::to_string(a));
}

Id StateSpace::meet_all(std::span<const Id> xs) const {
  if (xs.empty()) throw Error(ErrorKind::input, "meet of an empty family");
  for (Id x : xs) check_id(x);
  Id m = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) m = meet(m, xs[i]);
  return m;
}

std::optional<Id> StateSpace::join(Id a, Id b) const {
  Bits common = up_[a] & up_[b];
  const std::size_t want = common.count();
  if (want == 0) return std::nullopt;
  for (auto c = common.find_first(); c != Bits::npos; c = common.find_next(c))
    if (up_count_[c] == want) return Id(c);
  return std::nullopt;
}

std::optional<Id> StateSpace::join_all(std::span<const Id> xs) const {
  if (xs.empty()) return bottom_;
  Bits common = up_[xs[0]];
  for (Id x : xs) common &= up_[x];
  const std::size_t want = common.count();
  if (want == 0) return std::nullopt;
  for (auto c = common.find_first(); c != Bits::npos; c = common.find_next(c))
    if (up_count_[c] == want) return Id(c);
  return std::nullopt;
}

bool StateSpace::bounded_all(std::span<const Id> xs) const {
  if (xs.empty()) return true;
  Bits common = up_[xs[0]];
  for (Id x : xs) common &= up_[x];
  return common.any();
}

IdSet StateSpace::maximal_above(Id a) const {
  IdSet out;
  for (Id m : maximal_)
    if (leq(a, m)) out.push_back(m);
  return out;
}

bool StateSpace::covers(Id a, Id b) const {
  if (!lt(a, b)) return false;
  Bits between = up_[a] & down_[b];
  return between.count() == 2;
}

std::vector<std::pair<Id, Id>> StateSpace::covering_pairs() const {
  std::vector<std::pair<Id, Id>> out;
  for (Id a = 0; a < size(); ++a)
    for (auto b = up_[a].find_first(); b != Bits::npos; b = up_[a].find_next(b))
      if (covers(a, Id(b))) out.emplace_back(a, Id(b));
  return out;
}

std::optional<Id> StateSpace::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Id StateSpace::at(std::string_view name) const {
  auto id = find(name);
  if (!id) throw Error(ErrorKind::input, "unknown element '" + std::string(name) + "'");
  return *id;
}

bool generated_by_maximals(const StateSpace& s, std::optional<Id>* witness) {
  for (Id a = 0; a < s.size(); ++a) {
    IdSet above = s.maximal_above(a);
    if (above.empty() || s.meet_all(above) != a) {
      if (witness) *witness = a;
      return false;
    }
  }
  return true;
}

bool is_distributive(const StateSpace& s, std::optional<std::array<Id, 3>>* witness) {
  const std::size_t n = s.size();
  for (Id sg = 0; sg < n; ++sg) {
    for (Id s1 = 0; s1 < n; ++s1) {
      if (s1 == sg) continue;
      Bits c1 = s.up(s1) & s.up(sg);
      for (Id s2 = 0; s2 < n; ++s2) {
        if (s2 == sg || !s.leq(s.meet(s1, s2), sg)) continue;
        Bits c2 = s.up(s2) & s.up(sg);
        // With a formal top: ⊤ ⊓ x = x, so sg itself qualifies when sg lies above s1 or s2.
        bool ok = c1.test(sg) || c2.test(sg);
        for (auto a = c1.find_first(); !ok && a != Bits::npos; a = c1.find_next(a))
          for (auto b = c2.find_first(); b != Bits::npos; b = c2.find_next(b))
            if (s.meet(Id(a), Id(b)) == sg) {
              ok = true;
              break;
            }
        if (!ok) {
          if (witness) *witness = std::array<Id, 3>{sg, s1, s2};
          return false;
        }
      }
    }
  }
  return true;
}

bool finite_rank_condition(const StateSpace& s) {
  // For each bounded U, some finite V ⊑ U has the same join. A finite space
  // satisfies this with V = U; the check still evaluates both joins so that a
  // broken join table is caught. Small carriers are scanned over all subsets,
  // larger ones over pairs.
  const std::size_t n = s.size();
  if (n <= 14) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      IdSet u;
      for (Id i = 0; i < n; ++i)
        if (mask >> i & 1u) u.push_back(i);
      if (!s.bounded_all(u)) continue;
      auto whole = s.join_all(u);
      if (!whole) return false;
      Id folded = u[0];
      for (std::size_t k = 1; k < u.size(); ++k) {
        auto j = s.join(folded, u[k]);
        if (!j) return false;
        folded = *j;
      }
      if (folded != *whole) return false;
    }
    return true;
  }
  for (Id a = 0; a < n; ++a)
    for (Id b = a; b < n; ++b) {
      if (!s.bounded(a, b)) continue;
      auto j = s.join(a, b);
      if (!j) return false;
      const Id pair[2] = {a, b};
      auto jj = s.join_all(pair);
      if (!jj || *jj != *j) return false;
    }
  return true;
}

StructureReport structure_report(const StateSpace& s) {
  StructureReport r;
  r.maximal = s.maximal();
  r.covering = s.covering_pairs();
  r.generated_by_maximals = generated_by_maximals(s, &r.generation_witness);
  r.distributive = is_distributive(s, &r.distributivity_witness);
  r.finite_rank = finite_rank_condition(s);
  return r;
}

CoveringCheck pure_meet_covering(const StateSpace& s) {
  CoveringCheck out;
  const IdSet& p = s.maximal();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      ++out.checked;
      const Id m = s.meet(p[i], p[j]);
      if (s.covers(m, p[i]) && s.covers(m, p[j])) continue;
      if (out.failures++ == 0) out.witness = {p[i], p[j]};
    }
  return out;
}

CoveringCheck pure_meet_second_covering(const StateSpace& s) {
  CoveringCheck out;
  const IdSet& p = s.maximal();
  const std::size_t n = p.size();
  for (std::size_t l = 0; l < n; ++l) {
    // Unordered pairs {α, β} avoiding λ whose meet λ covers.
    std::vector<std::array<std::size_t, 2>> below;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (i != l && j != l && s.covers(s.meet(p[i], p[j]), p[l])) below.push_back({i, j});
    for (std::size_t x = 0; x < below.size(); ++x)
      for (std::size_t y = x + 1; y < below.size(); ++y) {
        const auto [a, b] = below[x];
        const auto [c, d] = below[y];
        if (a == c || a == d || b == c || b == d) continue;
        const Id ab = s.meet(p[a], p[b]);
        const Id cd = s.meet(p[c], p[d]);
        if (ab == cd) continue;
        ++out.checked;
        const Id all = s.meet(ab, cd);
        if (s.covers(all, ab) && s.covers(all, cd)) continue;
        if (out.failures++ == 0) out.witness = {p[l], p[a], p[b], p[c], p[d]};
      }
  }
  return out;
}

}  // namespace qlattice
