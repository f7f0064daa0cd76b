// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "qlattice/order.hpp"
#include "qlattice/real.hpp"

namespace qt {

using namespace qlattice;

inline RealSpacePtr zprime(int n) { return std::make_shared<const RealSpace>(make_zprime(n)); }
inline RealSpacePtr simplex(int n) { return std::make_shared<const RealSpace>(make_simplex(n)); }
inline RealSpacePtr boolean() { return std::make_shared<const RealSpace>(make_bool()); }

inline IdSet ids(const StateSpace& s, std::initializer_list<const char*> names) {
  IdSet out;
  for (const char* n : names) out.push_back(s.at(n));
  std::sort(out.begin(), out.end());
  return out;
}

// Greatest lower bound by scanning the whole carrier.
inline std::optional<Id> brute_meet(const StateSpace& s, Id a, Id b) {
  std::optional<Id> best;
  for (Id x = 0; x < s.size(); ++x)
    if (s.leq(x, a) && s.leq(x, b) && (!best || s.leq(*best, x))) best = x;
  for (Id x = 0; x < s.size(); ++x)
    if (s.leq(x, a) && s.leq(x, b) && !s.leq(x, *best)) return std::nullopt;
  return best;
}

inline bool brute_covers(const StateSpace& s, Id a, Id b) {
  if (a == b || !s.leq(a, b)) return false;
  for (Id x = 0; x < s.size(); ++x)
    if (x != a && x != b && s.leq(a, x) && s.leq(x, b)) return false;
  return true;
}

inline IdSet non_bottom(const StateSpace& s) {
  IdSet out;
  for (Id x = 0; x < s.size(); ++x)
    if (x != s.bottom()) out.push_back(x);
  return out;
}

// Nonempty sorted subset of `pool` with at most `max_size` members.
inline IdSet random_subset(std::mt19937& rng, const IdSet& pool, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size(1, std::min(max_size, pool.size()));
  IdSet p = pool;
  std::shuffle(p.begin(), p.end(), rng);
  p.resize(size(rng));
  std::sort(p.begin(), p.end());
  return p;
}

inline std::vector<IdSet> all_subsets(const IdSet& pool) {
  std::vector<IdSet> out;
  for (std::size_t m = 1; m < (std::size_t(1) << pool.size()); ++m) {
    IdSet u;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (m >> i & 1) u.push_back(pool[i]);
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace qt
