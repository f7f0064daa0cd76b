// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "qlattice/context.hpp"
#include "qlattice/geometry.hpp"
#include "qlattice/ontic.hpp"
#include "qlattice/quantum.hpp"
#include "qlattice/real.hpp"

// All functions return or accept JSON text; emission is id-ordered so equal
// inputs give byte-identical output.
namespace qlattice {

inline constexpr int kReportSchemaVersion = 1;

// {"elements": [...], "leq": [[i, j], ...] covering pairs, "bottom": name}
// plus "star": [[i, j], ...] for real spaces.
std::string space_to_json(const StateSpace& s);
std::string space_to_json(const RealSpace& rs);

// Accepts "leq" pairs as ids or names and any generating set of pairs. A
// missing "star" gives a space without star entries. Throws ErrorKind::input
// naming the offending field.
RealSpace space_from_json(const std::string& text);
StateSpace state_space_from_json(const std::string& text);

// Hasse diagram: one node per element, covering edges only. Real spaces carry
// a star attribute so that space_from_dot restores them.
std::string space_to_dot(const StateSpace& s, const std::string& graph_name = "space");
std::string space_to_dot(const RealSpace& rs);
RealSpace space_from_dot(const std::string& text);

// Sorted array of real names.
std::string element_to_json(const Completion& c, Completion::Elem e);

// {"context": id, "values": [[effect, "Y"|"N"|"B"], ...]} per context.
std::string description_to_json(const StateSpace& s, const Cover& cover, const Description& d);

std::string bell_report_json(const BellScenario& s);

// {"points": [...], "lines": [[...]...], "planes": [[...]...]}; planes only
// through the starred triples to stay small.
std::string incidence_to_json(const Geometry& geo);
std::string consistency_dot(const Geometry& geo);

std::string geometry_report_json(const GeometrySet& g, const GeometryReport& rep);

}  // namespace qlattice
