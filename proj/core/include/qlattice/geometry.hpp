// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qlattice/ontic.hpp"
#include "qlattice/tensor.hpp"

namespace qlattice {

// The completion of an n-fold product of qubit-like factors, with coordinate
// access on its pures.
struct Ambient {
  NFoldTensor nfold;
  std::shared_ptr<Completion> completion;
  std::map<std::vector<Id>, Id> pure_of_coords;

  std::size_t factors() const { return nfold.factors.size(); }
  const RealSpace& base() const { return *nfold.space; }
  const std::vector<Id>& coords(Id pure) const { return nfold.coords.at(pure); }
  // ν with coordinates j and k replaced by a and b.
  Id delta(Id nu, std::size_t j, std::size_t k, Id a, Id b) const;
  Id with_coord(Id nu, std::size_t j, Id a) const;
  // Pure coordinates agreeing at no fewer than N − 2 positions.
  bool wr(Id a, Id b) const;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

AmbientPtr make_ambient(const std::vector<RealSpacePtr>& factors, std::size_t cap = 100000);

enum class GeometryVariant { check, widecheck };

using Point = std::uint32_t;
using PointSet = std::vector<Point>;  // sorted

// Points are the pures of the real part followed by the hidden states of the
// chosen shape, sorted by their antichains.
struct GeometrySet {
  AmbientPtr ambient;
  GeometryVariant variant = GeometryVariant::check;
  std::vector<Completion::Elem> elems;
  std::size_t pure_count = 0;
  std::vector<bool> widecheck;                 // point lies in the narrower family
  std::vector<std::array<Id, 3>> origin;       // (μ, ν, φ) of the first hidden construction
  std::unordered_map<Completion::Elem, Point> index;

  std::size_t size() const { return elems.size(); }
  bool hidden(Point p) const { return p >= pure_count; }
  Id pure(Point p) const;  // base id of a pure point
  std::optional<Point> find(Completion::Elem e) const;
  std::string name(Point p) const;
};

GeometrySet build_geometry(const AmbientPtr& ambient, GeometryVariant variant, std::size_t cap = 100000);

// Cached consistency, meets, orthogonality and colinearity on one point set.
class Geometry {
 public:
  explicit Geometry(const GeometrySet& g);

  const GeometrySet& set() const { return g_; }
  std::size_t size() const { return g_.size(); }
  const Completion& completion() const { return *g_.ambient->completion; }

  bool consistent(Point a, Point b) const { return cons_[a].test(b); }
  const Bits& consistent_with(Point a) const { return cons_[a]; }
  bool orthogonal(Point a, Point b) const { return orth_[a].test(b); }
  Completion::Elem meet(Point a, Point b) const;
  bool covered_by(Completion::Elem m, Point a) const;  // m ⋖ a in the completion

  // b = c or b ⊓ c ⋖ a. No membership check.
  bool colinear(Point a, Point b, Point c) const;
  // Throws ErrorKind::input unless a, b, c lie in u and u is consistent.
  bool colinear(const PointSet& u, Point a, Point b, Point c) const;

  bool is_consistent(const PointSet& u) const;
  bool orthogonally_complete(const PointSet& u) const;

  PointSet line(Point a, Point b) const;
  std::optional<PointSet> plane(Point a, Point b, Point c) const;  // absent on colinear triples

 private:
  const GeometrySet& g_;
  std::vector<Bits> cons_, orth_;
  mutable std::unordered_map<std::uint64_t, Completion::Elem> meets_;
  mutable std::unordered_map<Completion::Elem, Bits> covers_;
};

// Maximal cliques of the consistency graph, Tomita pivoting, vertices in
// index order. Throws CapExceeded beyond `cap` cliques.
std::vector<PointSet> consistency_cover(const Geometry& geo, std::size_t cap = 1000000);

struct StarredPlane {
  std::array<Point, 3> triple;
  PointSet points;
};

std::vector<StarredPlane> starred_planes(const Geometry& geo);

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<Point> witness;  // first failure, or the flagged configuration
  std::string note;

  bool pass() const { return failures == 0; }
};

struct ScanOptions {
  bool exhaustive = true;
  std::size_t samples = 20000;  // per check when not exhaustive
  std::uint32_t seed = 12345;
  std::size_t cover_cap = 1000000;
};

ScanOptions default_scan(const GeometrySet& g);  // exhaustive on two factors

struct GeometryReport {
  std::size_t points = 0;
  std::size_t hidden = 0;
  std::size_t cover_size = 0;
  std::vector<CheckResult> checks;
  std::vector<CheckResult> flags;  // reported, not failures
  std::size_t construction_witness_hits = 0;
  std::size_t search_witness_hits = 0;

  bool pass() const;
  const CheckResult* find(const std::string& name) const;
};

GeometryReport verify_projective(const Geometry& geo, const ScanOptions& opt);
GeometryReport verify_ortho(const Geometry& geo, const ScanOptions& opt);

std::string variant_name(GeometryVariant v);

}  // namespace qlattice
