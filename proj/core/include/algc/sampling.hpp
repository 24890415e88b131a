// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "algc/calculus.hpp"

namespace algc {

/// Stable 64-bit mix of a base seed and a label (FNV-1a); gives every
/// identity check its own deterministic stream independent of run order.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view label);

/// Random polynomial of degree <= 2 in n coordinates, coefficients uniform
/// in [-1, 1]. Degree-2 polynomials exercise every derivative term of the
/// operators while keeping residuals O(1) on the fixture boxes.
ScalarField random_polynomial(std::mt19937_64& rng, int n_coords, int degree = 2);

Section random_section(std::mt19937_64& rng, const AlgebroidPtr& alg, int degree = 2);
CoTensor random_cotensor(std::mt19937_64& rng, const AlgebroidPtr& alg, int tensor_degree,
                         int poly_degree = 2);
CoTensor random_alternating(std::mt19937_64& rng, const AlgebroidPtr& alg, int tensor_degree,
                            int poly_degree = 2);
CoTensor random_symmetric(std::mt19937_64& rng, const AlgebroidPtr& alg, int tensor_degree,
                          int poly_degree = 2);
SymBracket random_sym_bracket(std::mt19937_64& rng, const AlgebroidPtr& alg,
                              int poly_degree = 2);
Connection random_connection(std::mt19937_64& rng, const AlgebroidPtr& alg,
                             int poly_degree = 2);

}  // namespace algc
