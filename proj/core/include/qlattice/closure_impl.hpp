// SPDX-License-Identifier: MIT
#pragma once

// Pre-closure and closure written once against a small set of lattice
// operations, so that enumerated spaces and symbolic tensor products share the
// same code. An Ops type provides:
//   using elem = ...;                       (regular, totally ordered)
//   const std::vector<elem>& pures() const;
//   elem meet(elem, elem) const;
//   std::optional<elem> join(elem, elem) const;
//   bool leq(elem, elem) const;
//   bool is_bottom(elem) const;
//   elem bottom() const;

#include <algorithm>
#include <optional>
#include <vector>

namespace qlattice::detail {

template <class Ops>
std::vector<typename Ops::elem> max_of(const Ops& ops, std::vector<typename Ops::elem> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<typename Ops::elem> out;
  for (const auto& x : xs) {
    bool dominated = false;
    for (const auto& y : xs)
      if (!(x == y) && ops.leq(x, y)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(x);
  }
  return out;
}

// 𝔠(U) = Max over pures π of ⊔{π ⊓ u : u ∈ U}. Every bounded family below U
// lies under some pure π, and its join is then below the π-term, so the
// maxima agree with the definition over all bounded families.
template <class Ops>
std::vector<typename Ops::elem> pre_closure(const Ops& ops, const std::vector<typename Ops::elem>& u) {
  using E = typename Ops::elem;
  std::vector<E> terms;
  for (const E& pi : ops.pures()) {
    std::optional<E> acc;
    for (const E& x : u) {
      const E m = ops.meet(pi, x);
      acc = acc ? ops.join(*acc, m) : std::optional<E>(m);
    }
    if (acc) terms.push_back(*acc);
  }
  auto out = max_of(ops, std::move(terms));
  if (out.size() > 1) std::erase_if(out, [&](const E& x) { return ops.is_bottom(x); });
  if (out.empty()) out.push_back(ops.bottom());
  return out;
}

// Iterates 𝔠 to its fixed point; `chain` receives every iterate including the input.
template <class Ops>
std::vector<typename Ops::elem> closure(const Ops& ops, std::vector<typename Ops::elem> u,
                                        std::vector<std::vector<typename Ops::elem>>* chain = nullptr,
                                        std::size_t bound = 1u << 20) {
  u = max_of(ops, std::move(u));
  if (u.size() > 1) std::erase_if(u, [&](const auto& x) { return ops.is_bottom(x); });
  if (chain) chain->push_back(u);
  for (std::size_t step = 0; step <= bound; ++step) {
    auto next = pre_closure(ops, u);
    if (next == u) return u;
    u = std::move(next);
    if (chain) chain->push_back(u);
  }
  return u;
}

}  // namespace qlattice::detail
