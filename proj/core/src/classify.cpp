// SPDX-License-Identifier: MIT
#include "qlattice/classify.hpp"

namespace qlattice {

Classification classify(const RealSpacePtr& rs) {
  Classification out;
  const auto& s = rs->space;
  const IdSet& pures = rs->pures();

  out.deterministic = true;
  for (Id p : pures) {
    const Id ps = rs->star_of(p);
    for (Id w : pures)
      if (!s.leq(p, w) && !s.leq(ps, w)) {
        out.deterministic = false;
        out.deterministic_witness = {p, w};
        break;
      }
    if (!out.deterministic) break;
  }

  out.completely_indeterministic = true;
  for (Id sg : pures) {
    for (Id lm : pures) {
      if (!s.leq(rs->star_of(lm), sg)) continue;
      bool found = false;
      for (Id k : pures)
        if (!s.leq(rs->star_of(sg), k) && !s.leq(rs->star_of(lm), k)) {
          found = true;
          break;
        }
      if (!found) {
        out.completely_indeterministic = false;
        out.indeterministic_witness = {sg, lm};
        break;
      }
    }
    if (!out.completely_indeterministic) break;
  }

  Completion c(rs);
  out.linear = true;
  for (std::size_t i = 0; i < pures.size() && out.linear; ++i)
    for (std::size_t j = i + 1; j < pures.size(); ++j) {
      const Id s1 = pures[i], s2 = pures[j];
      const Id m = s.meet(s1, s2);
      if (!s.covers(m, s1) || !s.covers(m, s2)) continue;
      // Every cover of m is m ⊔ ω for a real ω not below m.
      bool found = false;
      for (Id w = 0; w < s.size() && !found; ++w) {
        if (w == rs->bottom() || s.leq(w, m)) continue;
        auto j3 = c.join(c.real(m), c.real(w));
        if (!j3 || !c.covers(c.real(m), *j3)) continue;
        if (!c.leq(c.real(s1), *j3) && !c.leq(c.real(s2), *j3)) found = true;
      }
      if (!found) {
        out.linear = false;
        out.linear_witness = {s1, s2};
        break;
      }
    }
  return out;
}

IdSet orthogonal_set(const Completion& c, const EnumeratedCompletion& ec, const IdSet& s) {
  IdSet out;
  std::vector<Completion::Elem> handles;
  for (Id x : s) handles.push_back(*c.from_set(ec.theta[x]));
  for (Id y = 0; y < ec.theta.size(); ++y) {
    const auto hy = *c.from_set(ec.theta[y]);
    bool all = true;
    for (auto hx : handles)
      if (!c.orthogonal(hy, hx)) {
        all = false;
        break;
      }
    if (all) out.push_back(y);
  }
  return out;
}

Orthoclosure orthoclosure(const Completion& c, const EnumeratedCompletion& ec, const IdSet& s) {
  Orthoclosure o;
  o.orthogonal = orthogonal_set(c, ec, s);
  o.double_orthogonal = orthogonal_set(c, ec, o.orthogonal);
  return o;
}

}  // namespace qlattice
