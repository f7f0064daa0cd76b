// SPDX-License-Identifier: MIT
#include "qlattice/ontic.hpp"

#include <algorithm>

#include "qlattice/closure_impl.hpp"
#include "qlattice/error.hpp"

namespace qlattice {

namespace {

struct SpaceOps {
  const StateSpace& s;
  using elem = Id;
  const std::vector<Id>& pures() const { return s.maximal(); }
  Id meet(Id a, Id b) const { return s.meet(a, b); }
  std::optional<Id> join(Id a, Id b) const { return s.join(a, b); }
  bool leq(Id a, Id b) const { return s.leq(a, b); }
  bool is_bottom(Id a) const { return a == s.bottom(); }
  Id bottom() const { return s.bottom(); }
};

IdSet checked_input(const StateSpace& s, const IdSet& u) {
  if (u.empty()) throw Error(ErrorKind::input, "closure of an empty family");
  for (Id x : u) s.check_id(x);
  IdSet v = normalized(u);
  if (v.size() > 1 && std::binary_search(v.begin(), v.end(), s.bottom()))
    throw Error(ErrorKind::input, "bottom inside a family with other elements");
  return v;
}

}  // namespace

IdSet max_elements(const StateSpace& s, const IdSet& u) { return detail::max_of(SpaceOps{s}, u); }

bool preorder_leq(const StateSpace& s, const IdSet& v, const IdSet& u) {
  for (Id x : v) {
    bool below = false;
    for (Id y : u)
      if (s.leq(x, y)) {
        below = true;
        break;
      }
    if (!below) return false;
  }
  return true;
}

IdSet pre_closure(const StateSpace& s, const IdSet& u) {
  return detail::pre_closure(SpaceOps{s}, checked_input(s, u));
}

IdSet pre_closure_literal(const StateSpace& s, const IdSet& u, std::size_t cap) {
  const IdSet v = checked_input(s, u);
  Bits down(s.size());
  for (Id x : v) down |= s.down(x);
  const IdSet d = bits_to_ids(down);
  // Depth-first over subsets of ↓U, extended only while they stay bounded.
  IdSet joins;
  std::size_t visited = 0;
  IdSet chosen;
  std::function<void(std::size_t, const Bits&)> walk = [&](std::size_t from, const Bits& uppers) {
    if (++visited > cap) throw CapExceeded("literal pre-closure", visited);
    if (!chosen.empty()) joins.push_back(*s.join_all(chosen));
    for (std::size_t i = from; i < d.size(); ++i) {
      Bits next = uppers & s.up(d[i]);
      if (next.none()) continue;
      chosen.push_back(d[i]);
      walk(i + 1, next);
      chosen.pop_back();
    }
  };
  Bits all(s.size());
  all.set();
  walk(0, all);
  IdSet out = max_elements(s, joins);
  if (out.size() > 1) std::erase(out, s.bottom());
  return out;
}

IdSet closure(const StateSpace& s, const IdSet& u, ClosureMode mode) {
  if (mode == ClosureMode::pre) return pre_closure(s, u);
  return detail::closure(SpaceOps{s}, checked_input(s, u), nullptr, s.size());
}

std::vector<IdSet> closure_chain(const StateSpace& s, const IdSet& u) {
  std::vector<IdSet> chain;
  detail::closure(SpaceOps{s}, checked_input(s, u), &chain, s.size());
  return chain;
}

bool in_K(const RealSpace& rs, const IdSet& u) {
  for (Id x : u) {
    if (x == rs.bottom()) continue;
    const Id xs = rs.star_of(x);
    for (Id y : u)
      if (rs.space.leq(xs, y)) return false;
  }
  return true;
}

bool in_K_hat(const RealSpace& rs, const IdSet& u) {
  for (Id x : u) {
    if (x == rs.bottom()) return false;
    for (Id y : u) {
      if (rs.space.leq(rs.star_of(x), y)) return false;
      if (x != y && rs.space.bounded(x, y)) return false;
    }
  }
  return true;
}

bool is_admissible(const RealSpace& rs, const IdSet& u) { return in_K(rs, closure(rs.space, u, ClosureMode::full)); }

NonCompleteness non_completeness(const RealSpace& rs) {
  NonCompleteness out;
  const StateSpace& s = rs.space;
  const IdSet& p = rs.pures();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      const Id s1 = p[i], s2 = p[j];
      if (s.meet(s1, s2) == s.bottom()) continue;
      if (s.leq(rs.star_of(s1), s2) || s.leq(rs.star_of(s2), s1)) continue;
      const IdSet u{s1, s2};
      if (!in_K_hat(rs, u)) continue;
      ++out.pairs;
      auto chain = closure_chain(s, u);
      const IdSet& top = chain.back();
      if (in_K(rs, top)) continue;
      if (out.inadmissible++ > 0) continue;
      out.pair = {s1, s2};
      out.chain = std::move(chain);
      for (Id x : top) {
        if (x == s.bottom()) continue;
        for (Id y : top)
          if (!out.clash && s.leq(rs.star_of(x), y)) out.clash = {x, y};
        if (!out.sigma3 && s.is_maximal(x) && (s.leq(rs.star_of(s1), x) || s.leq(rs.star_of(s2), x)))
          out.sigma3 = x;
      }
    }
  return out;
}

Completion::Completion(RealSpacePtr base) : base_(std::move(base)) {
  if (!base_) throw Error(ErrorKind::input, "completion of a null space");
  intern(IdSet{base_->bottom()});
  for (Id r = 0; r < base_->size(); ++r)
    if (r != base_->bottom()) intern(IdSet{r});
}

Completion::Elem Completion::intern(IdSet canonical) const {
  std::lock_guard lock(mu_);
  auto [it, fresh] = index_.try_emplace(canonical, Elem(elems_.size()));
  if (fresh) elems_.push_back(std::move(canonical));
  return it->second;
}

Completion::Elem Completion::bottom() const { return 0; }

Completion::Elem Completion::real(Id r) const {
  base_->space.check_id(r);
  if (r == base_->bottom()) return 0;
  // Reals were interned in base order right after the bottom.
  return r < base_->bottom() ? r + 1 : r;
}

std::optional<Completion::Elem> Completion::from_set(const IdSet& u) const {
  IdSet c = closure(base_->space, u, ClosureMode::full);
  if (!in_K(*base_, c)) return std::nullopt;
  return intern(std::move(c));
}

IdSet Completion::theta(Elem e) const {
  std::lock_guard lock(mu_);
  return elems_.at(e);
}

std::optional<Id> Completion::as_real(Elem e) const {
  const IdSet t = theta(e);
  if (t.size() == 1) return t[0];
  return std::nullopt;
}

bool Completion::leq(Elem a, Elem b) const {
  if (a == b) return true;
  return preorder_leq(base_->space, theta(a), theta(b));
}

Completion::Elem Completion::meet(Elem a, Elem b) const {
  const IdSet ta = theta(a), tb = theta(b);
  IdSet m;
  for (Id x : ta)
    for (Id y : tb) m.push_back(base_->space.meet(x, y));
  m = max_elements(base_->space, m);
  if (m.size() > 1) std::erase(m, base_->bottom());
  return intern(std::move(m));
}

std::optional<Completion::Elem> Completion::join(Elem a, Elem b) const {
  IdSet u = theta(a);
  for (Id y : theta(b)) u.push_back(y);
  u = normalized(u);
  if (u.size() > 1) std::erase(u, base_->bottom());
  return from_set(u);
}

std::optional<Completion::Elem> Completion::join_all(const std::vector<Elem>& xs) const {
  IdSet u;
  for (Elem x : xs)
    for (Id y : theta(x)) u.push_back(y);
  if (u.empty()) return bottom();
  u = normalized(u);
  if (u.size() > 1) std::erase(u, base_->bottom());
  return from_set(u);
}

bool Completion::covers(Elem a, Elem b) const {
  if (!lt(a, b)) return false;
  // Any element strictly between contains a ⊔ ω for some real ω ⊑ b, ω ⋢ a.
  const auto& s = base_->space;
  Bits below(s.size());
  for (Id y : theta(b)) below |= s.down(y);
  const IdSet ta = theta(a);
  for (auto w = below.find_first(); w != Bits::npos; w = below.find_next(w)) {
    const Id omega = Id(w);
    if (omega == s.bottom()) continue;
    bool under_a = false;
    for (Id x : ta)
      if (s.leq(omega, x)) {
        under_a = true;
        break;
      }
    if (under_a) continue;
    auto j = join(a, real(omega));
    if (!j || *j != b) return false;
  }
  return true;
}

std::optional<Completion::Elem> Completion::star(Elem e) const {
  auto r = as_real(e);
  if (!r || *r == base_->bottom()) return std::nullopt;
  return real(base_->star_of(*r));
}

bool Completion::orthogonal(Elem a, Elem b) const {
  const auto& s = base_->space;
  Bits below(s.size());
  for (Id y : theta(a)) below |= s.down(y);
  const IdSet tb = theta(b);
  for (auto w = below.find_first(); w != Bits::npos; w = below.find_next(w)) {
    if (Id(w) == s.bottom()) continue;
    const Id ws = base_->star_of(Id(w));
    for (Id y : tb)
      if (s.leq(ws, y)) return true;
  }
  return false;
}

std::string Completion::name(Elem e) const {
  const IdSet t = theta(e);
  if (t.size() == 1) return base_->space.label(t[0]);
  std::string out = "{";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + base_->space.label(t[i]);
  return out + "}";
}

std::size_t Completion::interned() const {
  std::lock_guard lock(mu_);
  return elems_.size();
}

EnumeratedCompletion Completion::enumerate(std::size_t cap) const {
  const auto& s = base_->space;
  IdSet candidates;
  for (Id r = 0; r < s.size(); ++r)
    if (r != s.bottom()) candidates.push_back(r);
  std::vector<IdSet> hidden;
  std::size_t scanned = 0;
  IdSet chosen;
  // Members of a closed admissible set are pairwise unbounded and star-free;
  // both properties are inherited by subsets, so they prune the search.
  std::function<void(std::size_t)> walk = [&](std::size_t from) {
    for (std::size_t i = from; i < candidates.size(); ++i) {
      const Id r = candidates[i];
      bool ok = true;
      for (Id c : chosen)
        if (s.bounded(c, r) || s.leq(base_->star_of(c), r) || s.leq(base_->star_of(r), c)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (++scanned > cap) throw CapExceeded("antichain enumeration", scanned);
      chosen.push_back(r);
      if (chosen.size() >= 2 && pre_closure(s, chosen) == chosen) hidden.push_back(chosen);
      walk(i + 1);
      chosen.pop_back();
    }
  };
  walk(0);

  EnumeratedCompletion ec;
  std::vector<std::string> labels;
  auto add = [&](const IdSet& t) {
    const Elem e = intern(t);
    ec.theta.push_back(t);
    ec.real.push_back(t.size() == 1 ? std::optional<Id>(t[0]) : std::nullopt);
    labels.push_back(name(e));
  };
  add(IdSet{s.bottom()});
  for (Id r : candidates) add(IdSet{r});
  for (const auto& h : hidden) add(h);
  const std::size_t n = ec.theta.size();
  std::vector<std::pair<Id, Id>> leq;
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j)
      if (i != j && preorder_leq(s, ec.theta[i], ec.theta[j])) leq.emplace_back(i, j);
  ec.space = std::make_shared<StateSpace>(std::move(labels), leq);
  ec.of_real.assign(s.size(), 0);
  for (Id i = 0; i < n; ++i)
    if (ec.real[i]) {
      ec.of_real[*ec.real[i]] = i;
      ec.reals.push_back(i);
    }
  return ec;
}

IdSet lift_image(const Completion& to, const std::vector<Id>& f, const IdSet& theta) {
  IdSet img;
  for (Id w : theta) {
    const Id v = f.at(w);
    if (v != to.base().bottom()) img.push_back(v);
  }
  img = normalized(img);
  if (img.empty()) img.push_back(to.base().bottom());
  return img;
}

LiftedMorphism lift_morphism(const Completion& from, const Completion& to, std::vector<Id> f) {
  if (f.size() != from.base().size()) throw Error(ErrorKind::input, "morphism has wrong domain size");
  for (Id a = 0; a < f.size(); ++a)
    for (Id b = a + 1; b < f.size(); ++b)
      if (f[from.base().space.meet(a, b)] != to.base().space.meet(f[a], f[b]))
        throw Error(ErrorKind::morphism, "not a homomorphism: meet of (" + from.base().space.label(a) + ", " +
                                             from.base().space.label(b) + ") is not preserved");
  return [&from, &to, f = std::move(f)](Completion::Elem x) {
    const IdSet img = lift_image(to, f, from.theta(x));
    auto e = to.from_set(img);
    if (!e) throw Error(ErrorKind::lift, "lifted image of " + from.name(x) + " is not admissible");
    return *e;
  };
}

}  // namespace qlattice
