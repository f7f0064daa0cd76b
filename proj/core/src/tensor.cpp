// SPDX-License-Identifier: MIT
#include "qlattice/tensor.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

#include "qlattice/chu.hpp"
#include "qlattice/closure_impl.hpp"
#include "qlattice/error.hpp"

namespace qlattice {

namespace {

constexpr Id kTop = std::numeric_limits<Id>::max();

Id meet_or_top(const StateSpace& s, Id x, Id a) { return x == kTop ? a : s.meet(x, a); }
bool below(const StateSpace& s, Id x, Id p) { return x != kTop && s.leq(x, p); }

std::string wrap(const std::string& label) {
  return label.find(" ⊓ ") != std::string::npos ? "(" + label + ")" : label;
}

}  // namespace

TensorProduct::TensorProduct(RealSpacePtr a, RealSpacePtr b) : a_(std::move(a)), b_(std::move(b)) {
  if (!a_ || !b_) throw Error(ErrorKind::input, "tensor of a null space");
  pa_ = a_->pures();
  pb_ = b_->pures();
  if (pa_.size() * pb_.size() > 64)
    throw Error(ErrorKind::unsupported, "tensor products are limited to 64 pure tensors");
  pa_index_.assign(a_->size(), kTop);
  pb_index_.assign(b_->size(), kTop);
  for (Id i = 0; i < pa_.size(); ++i) pa_index_[pa_[i]] = i;
  for (Id i = 0; i < pb_.size(); ++i) pb_index_[pb_[i]] = i;
  const std::size_t k = pure_count();
  full_ = k == 64 ? ~Mask(0) : (Mask(1) << k) - 1;
  simplex_ = is_simplex(*a_) && is_simplex(*b_);
  elementary_.resize(a_->size() * b_->size());
  for (Id x = 0; x < a_->size(); ++x)
    for (Id y = 0; y < b_->size(); ++y) {
      const Gen g{x, y};
      elementary_[std::size_t(x) * b_->size() + y] = normalize_general(std::span<const Gen>(&g, 1));
    }
}

std::size_t TensorProduct::pure_index(Id pa, Id pb) const {
  if (pa >= pa_index_.size() || pb >= pb_index_.size() || pa_index_[pa] == kTop || pb_index_[pb] == kTop)
    throw Error(ErrorKind::input, "not a pure tensor");
  return std::size_t(pa_index_[pa]) * pb_.size() + pb_index_[pb];
}

bool TensorProduct::dominates_exhaustive(std::span<const Gen> gens, Gen target) const {
  const std::size_t n = gens.size();
  if (n == 0) throw Error(ErrorKind::input, "empty generator list");
  if (n > 24) throw Error(ErrorKind::resource, "exhaustive expansion limited to 24 generators");
  const auto& sa = a_->space;
  const auto& sb = b_->space;
  // K ranges over all subsets; K = ∅ and K = I give the two full-meet clauses.
  for (std::uint32_t k = 0; k < (1u << n); ++k) {
    Id x = kTop, y = kTop;
    for (std::size_t i = 0; i < n; ++i) {
      if (k >> i & 1u)
        x = meet_or_top(sa, x, gens[i].first);
      else
        y = meet_or_top(sb, y, gens[i].second);
    }
    if (!below(sa, x, target.first) && !below(sb, y, target.second)) return false;
  }
  return true;
}

namespace {

// All pairs (⊓_K left, ⊓_{I∖K} right) over K ⊆ I, kept as an antichain of
// maximal pairs; a target is dominated iff no pair escapes both components.
std::vector<std::pair<Id, Id>> reachable_pairs(const StateSpace& sa, const StateSpace& sb,
                                               std::span<const Gen> gens) {
  std::vector<std::pair<Id, Id>> cur{{kTop, kTop}};
  auto le = [](const StateSpace& s, Id x, Id y) { return y == kTop || (x != kTop && s.leq(x, y)); };
  for (const auto& [a, b] : gens) {
    std::vector<std::pair<Id, Id>> next;
    next.reserve(cur.size() * 2);
    for (auto [x, y] : cur) {
      next.emplace_back(meet_or_top(sa, x, a), y);
      next.emplace_back(x, meet_or_top(sb, y, b));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur.clear();
    for (std::size_t i = 0; i < next.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < next.size() && !dominated; ++j)
        if (i != j && le(sa, next[i].first, next[j].first) && le(sb, next[i].second, next[j].second))
          dominated = true;
      if (!dominated) cur.push_back(next[i]);
    }
  }
  return cur;
}

}  // namespace

bool TensorProduct::dominates(std::span<const Gen> gens, Gen target) const {
  if (gens.empty()) throw Error(ErrorKind::input, "empty generator list");
  for (auto [x, y] : reachable_pairs(a_->space, b_->space, gens))
    if (!below(a_->space, x, target.first) && !below(b_->space, y, target.second)) return false;
  return true;
}

Mask TensorProduct::normalize_general(std::span<const Gen> gens) const {
  if (gens.empty()) throw Error(ErrorKind::input, "empty generator list");
  for (auto [x, y] : gens) {
    a_->space.check_id(x);
    b_->space.check_id(y);
  }
  const auto pairs = reachable_pairs(a_->space, b_->space, gens);
  Mask m = 0;
  for (std::size_t k = 0; k < pure_count(); ++k) {
    const Gen t = pure_pair(k);
    bool ok = true;
    for (auto [x, y] : pairs)
      if (!below(a_->space, x, t.first) && !below(b_->space, y, t.second)) {
        ok = false;
        break;
      }
    if (ok) m |= Mask(1) << k;
  }
  return m;
}

Mask TensorProduct::normalize(std::span<const Gen> gens) const {
  if (!simplex_) return normalize_general(gens);
  // Simplex factors: a⊗b is the meet of the pure tensors of its pure
  // decompositions, and meets are unions.
  if (gens.empty()) throw Error(ErrorKind::input, "empty generator list");
  Mask m = 0;
  for (auto [x, y] : gens) m |= elementary(x, y);
  return m;
}

std::vector<Gen> TensorProduct::gens(Mask x) const {
  std::vector<Gen> out;
  for (std::size_t k = 0; k < pure_count(); ++k)
    if (x >> k & 1u) out.push_back(pure_pair(k));
  return out;
}

Mask TensorProduct::meet(Mask x, Mask y) const {
  if (simplex_) return x | y;
  const auto g = gens(x | y);
  return normalize(g);
}

std::optional<Mask> TensorProduct::join(Mask x, Mask y) const {
  const Mask i = x & y;
  if (i == 0) return std::nullopt;
  if (simplex_) return i;
  const auto g = gens(i);
  return normalize(g);
}

std::optional<Mask> TensorProduct::star(Mask x) const {
  if (x == full_) throw Error(ErrorKind::input, "star of bottom is undefined");
  if (x == 0) throw Error(ErrorKind::input, "empty underline");
  Mask acc = full_;
  for (std::size_t k = 0; k < pure_count(); ++k) {
    if (!(x >> k & 1u)) continue;
    const auto [p, q] = pure_pair(k);
    const Gen g[2] = {{a_->star_of(p), a_->bottom()}, {b_->bottom(), b_->star_of(q)}};
    acc &= normalize(g);
  }
  if (acc == 0) return std::nullopt;
  const auto g = gens(acc);
  return normalize(g);
}

Id TensorProduct::trace(Mask x, int side) const {
  if (x == 0) throw Error(ErrorKind::input, "empty underline");
  std::optional<Id> acc;
  for (const auto& [p, q] : gens(x)) {
    if (side == 1)
      acc = acc ? a_->space.meet(*acc, p) : p;
    else if (side == 2)
      acc = acc ? b_->space.meet(*acc, q) : q;
    else
      throw Error(ErrorKind::input, "trace side must be 1 or 2");
  }
  return *acc;
}

std::vector<std::pair<std::string, std::string>> TensorProduct::underline_names(Mask x) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [p, q] : gens(x)) out.emplace_back(a_->space.label(p), b_->space.label(q));
  return out;
}

std::string TensorProduct::name(Mask x) const {
  // Lowest elementary tensors above x; used when their meet gives back x.
  std::vector<std::pair<Mask, std::string>> cands;
  for (Id a = 0; a < a_->size(); ++a)
    for (Id b = 0; b < b_->size(); ++b) {
      const Mask e = elementary(a, b);
      if ((e & ~x) == 0)
        cands.emplace_back(e, wrap(a_->space.label(a)) + "⊗" + wrap(b_->space.label(b)));
    }
  std::vector<std::string> parts;
  Mask cover = 0;
  std::set<Mask> seen;
  for (const auto& [e, label] : cands) {
    bool minimal = true;
    for (const auto& [f, other] : cands)
      if (f != e && (e & ~f) == 0) {
        minimal = false;
        break;
      }
    if (minimal && seen.insert(e).second) {
      parts.push_back(label);
      cover |= e;
    }
  }
  const auto g = gens(cover);
  if (cover == 0 || normalize(g) != x) {
    parts.clear();
    for (const auto& [p, q] : gens(x)) parts.push_back(wrap(a_->space.label(p)) + "⊗" + wrap(b_->space.label(q)));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " ⊓ " : "") + parts[i];
  return out;
}

TensorOps::TensorOps(const TensorProduct& tp) : t(tp) {
  for (std::size_t k = 0; k < tp.pure_count(); ++k) pure_masks.push_back(Mask(1) << k);
}

std::vector<Mask> tensor_closure(const TensorProduct& t, const std::vector<Mask>& u,
                                 std::vector<std::vector<Mask>>* chain) {
  if (u.empty()) throw Error(ErrorKind::input, "closure of an empty family");
  std::vector<Mask> v = u;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.size() > 1 && std::find(v.begin(), v.end(), t.full()) != v.end())
    throw Error(ErrorKind::input, "bottom inside a family with other elements");
  return detail::closure(TensorOps(t), std::move(v), chain);
}

bool tensor_in_K(const TensorProduct& t, const std::vector<Mask>& u) {
  for (Mask x : u) {
    if (x == t.full()) continue;
    auto xs = t.star(x);
    if (!xs) throw Error(ErrorKind::input, "tensor star undefined at " + t.name(x));
    for (Mask y : u)
      if (t.leq(*xs, y)) return false;
  }
  return true;
}

Id TensorSpace::id(Mask m) const {
  auto it = id_of.find(m);
  if (it == id_of.end()) throw Error(ErrorKind::input, "mask is not an element of the product");
  return it->second;
}

TensorSpace build_tensor(const RealSpacePtr& a, const RealSpacePtr& b, std::size_t cap) {
  auto tp = std::make_shared<TensorProduct>(a, b);
  std::vector<Mask> elems;
  std::unordered_map<Mask, Id> seen;
  auto push = [&](Mask m) {
    if (seen.emplace(m, Id(elems.size())).second) {
      elems.push_back(m);
      if (elems.size() > cap) throw CapExceeded("tensor enumeration", elems.size());
    }
  };
  if (tp->simplex_inputs()) {
    // Every nonempty set of pure tensors is an element.
    if (tp->pure_count() > 20) throw Error(ErrorKind::resource, "simplex tensor too large to enumerate");
    for (Mask m = 1; m <= tp->full(); ++m) push(m);
  } else {
    for (std::size_t k = 0; k < tp->pure_count(); ++k) push(Mask(1) << k);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t k = 0; k < tp->pure_count(); ++k)
        if (!(elems[i] >> k & 1u)) push(tp->meet(elems[i], Mask(1) << k));
  }
  std::sort(elems.begin(), elems.end(), [](Mask x, Mask y) {
    const int cx = std::popcount(x), cy = std::popcount(y);
    if (cx != cy) return cx > cy;
    return x < y;
  });
  const std::size_t n = elems.size();
  TensorSpace ts;
  ts.product = tp;
  ts.mask_of = elems;
  for (Id i = 0; i < n; ++i) ts.id_of.emplace(elems[i], i);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (Mask m : elems) labels.push_back(tp->name(m));
  std::vector<Bits> up(n, Bits(n));
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j)
      if ((elems[j] & ~elems[i]) == 0) up[i].set(j);
  auto rs = std::make_shared<RealSpace>();
  rs->space = StateSpace::from_matrix(std::move(labels), up);
  rs->star.assign(n, std::nullopt);
  for (Id i = 0; i < n; ++i) {
    if (i == rs->space.bottom()) continue;
    auto st = tp->star(elems[i]);
    if (!st) throw Error(ErrorKind::input, "tensor star undefined at " + rs->space.label(i));
    rs->star[i] = ts.id(*st);
  }
  rs->name = a->name + "⊗" + b->name;
  ts.space = rs;
  return ts;
}

Id NFoldTensor::trace(Id x, std::size_t factor) const {
  const auto& s = space->space;
  const auto& fs = factors.at(factor)->space;
  std::optional<Id> acc;
  for (Id p : s.maximal())
    if (s.leq(x, p)) acc = acc ? fs.meet(*acc, coords[p][factor]) : coords[p][factor];
  return *acc;
}

NFoldTensor nfold_tensor(const std::vector<RealSpacePtr>& factors, std::size_t cap) {
  if (factors.size() < 2) throw Error(ErrorKind::input, "n-fold tensor needs at least two factors");
  NFoldTensor nf;
  nf.factors = factors;
  RealSpacePtr acc = factors[0];
  // coords for the running left factor, indexed by its pure ids
  std::vector<std::vector<Id>> coords(acc->size());
  for (Id p : acc->pures()) coords[p] = {p};
  for (std::size_t i = 1; i < factors.size(); ++i) {
    TensorSpace ts = build_tensor(acc, factors[i], cap);
    std::vector<std::vector<Id>> next(ts.space->size());
    for (Id p : ts.space->pures()) {
      const Mask m = ts.mask_of[p];
      const auto [l, r] = ts.product->pure_pair(std::size_t(std::countr_zero(m)));
      next[p] = coords[l];
      next[p].push_back(r);
    }
    coords = std::move(next);
    acc = ts.space;
    nf.stages.push_back(std::move(ts));
  }
  nf.space = acc;
  nf.coords = std::move(coords);
  return nf;
}

IndeterministicTensor indeterministic_tensor(const RealSpacePtr& a, const RealSpacePtr& b, std::size_t cap) {
  IndeterministicTensor it;
  it.reals = build_tensor(a, b, cap);
  it.completion = std::make_shared<Completion>(it.reals.space);
  return it;
}

bool congruence_oracle(const RealSpace& a, const RealSpace& b, std::span<const Gen> u1, std::span<const Gen> u2) {
  const auto ea = enumerate_effects(a.space);
  const auto eb = enumerate_effects(b.space);
  auto nu = [&](const Effect& la, const Effect& lb, std::span<const Gen> u) {
    std::optional<BoolVal> acc;
    for (const auto& [x, y] : u) {
      const BoolVal v = bool_bullet(evaluate(a.space, la, x), evaluate(b.space, lb, y));
      acc = acc ? bool_meet(*acc, v) : v;
    }
    return *acc;
  };
  for (const auto& la : ea)
    for (const auto& lb : eb)
      if (nu(la, lb, u1) != nu(la, lb, u2)) return false;
  return true;
}

Mask tensor_morphism_simplex(const TensorProduct& source, const TensorProduct& target, const std::vector<Id>& f,
                             const std::vector<Id>& g, Mask x) {
  std::vector<Gen> img;
  for (const auto& [p, q] : source.gens(x)) img.emplace_back(f.at(p), g.at(q));
  return target.normalize(img);
}

std::vector<Mask> tensor_morphism_indeterministic(const TensorProduct& source, const TensorProduct& target,
                                                  const std::vector<Id>& f, const std::vector<Id>& g,
                                                  const std::vector<Mask>& theta) {
  std::vector<Mask> img;
  for (Mask x : theta) {
    const Mask y = tensor_morphism_simplex(source, target, f, g, x);
    if (y != target.full()) img.push_back(y);
  }
  if (img.empty()) return {target.full()};
  auto cl = tensor_closure(target, img);
  if (!tensor_in_K(target, cl)) throw Error(ErrorKind::lift, "image of the tensored morphism is not admissible");
  return cl;
}

}  // namespace qlattice
