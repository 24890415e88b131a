// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "algc/hermitian.hpp"

namespace algc {

/// A bundled test geometry: an algebroid plus whatever structure it carries.
/// `lie` flags fixtures whose bracket satisfies the Jacobi identity.
/// `declared_connection` holds an explicit connection claimed by an input
/// file to be the Levi-Civita connection; when present, the torsion-free and
/// metricity suite checks run against it.
struct Fixture {
  std::string name;
  AlgebroidPtr alg;
  std::optional<Metric> metric;
  std::optional<AlmostComplex> complex_structure;
  std::optional<CoTensor> torsion_form;  // bundled alternating 3-form
  std::optional<Connection> declared_connection;
  std::map<std::string, Section> sections;
  bool lie = true;
};

/// The bundled fixtures:
///   euclid2      flat tangent plane, identity anchor, delta metric
///   hyperbolic   upper half-plane metric (1/y^2) delta
///   so3          rank-3 bundle with zero anchor and so(3) structure
///   kahler-flat  flat plane with the standard complex structure
///   twisted-j    4-dimensional chart with a position-dependent rotation
///                of the standard J (non-integrable)
///   tmj-twisted  the anchor-J algebroid of twisted-j (constructed, not
///                stored; genuinely skew-symmetric, non-Lie)
std::vector<Fixture> fixture_registry();

/// Lookup by name; throws Error for unknown names.
Fixture find_fixture(const std::string& name);

}  // namespace algc
