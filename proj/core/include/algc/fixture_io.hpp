// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "algc/fixtures.hpp"

namespace algc {

/// JSON interchange format for fixtures.
///
/// Document schema (expressions are strings over the declared coordinates;
/// all indices are 0-based):
///   name       string
///   base_dim   integer, rank integer
///   coords     array of base_dim names
///   domain     {"lower": [..], "upper": [..]}
///   anchor     base_dim × rank array of expressions (rho[a][i])
///   structure  dense rank^3 array c[k][i][j], or a sparse list of
///              {"k":K,"i":I,"j":J,"expr":E} entries; the skew partner
///              c[k][j][i] = -c[k][i][j] is completed automatically and a
///              second assignment to the same slot is a schema error
///   metric     optional rank × rank array of expressions
///   J          optional rank × rank array (J[k][i])
///   torsion3form  optional sparse list of {"i":I,"j":J,"k":K,"expr":E}
///              entries with distinct slots; alternating completion applied
///   connection optional dense rank^3 array gamma[k][i][j]; when present,
///              the torsion-free and metricity checks run against it
///   sections   optional map name -> array of rank expressions
Fixture load_fixture_text(const std::string& text);
Fixture load_fixture_file(const std::string& path);

/// Serialize back to the document format; loading the result reproduces the
/// same validated structures node for node.
std::string save_fixture_text(const Fixture& fx);

/// Structural equality of two loaded fixtures (used by round-trip tests).
bool fixture_equivalent(const Fixture& a, const Fixture& b);

}  // namespace algc
