// SPDX-License-Identifier: Apache-2.0
#include "algc/sampling.hpp"

namespace algc {

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

ScalarField random_polynomial(std::mt19937_64& rng, int n_coords, int degree) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  ScalarField f = ScalarField::constant(coeff(rng));
  if (degree >= 1)
    for (int a = 0; a < n_coords; ++a)
      f = f + ScalarField::constant(coeff(rng)) * ScalarField::coordinate(a);
  if (degree >= 2)
    for (int a = 0; a < n_coords; ++a)
      for (int b = a; b < n_coords; ++b)
        f = f + ScalarField::constant(coeff(rng)) * ScalarField::coordinate(a) *
                    ScalarField::coordinate(b);
  return f;
}

Section random_section(std::mt19937_64& rng, const AlgebroidPtr& alg, int degree) {
  std::vector<ScalarField> comps(alg->rank());
  for (auto& c : comps) c = random_polynomial(rng, alg->base_dim(), degree);
  return Section(alg, std::move(comps));
}

CoTensor random_cotensor(std::mt19937_64& rng, const AlgebroidPtr& alg, int tensor_degree,
                         int poly_degree) {
  std::size_t count = 1;
  for (int i = 0; i < tensor_degree; ++i) count *= static_cast<std::size_t>(alg->rank());
  std::vector<ScalarField> comps(count);
  for (auto& c : comps) c = random_polynomial(rng, alg->base_dim(), poly_degree);
  return CoTensor(alg, tensor_degree, std::move(comps));
}

CoTensor random_alternating(std::mt19937_64& rng, const AlgebroidPtr& alg, int tensor_degree,
                            int poly_degree) {
  return alternate(random_cotensor(rng, alg, tensor_degree, poly_degree));
}

CoTensor random_symmetric(std::mt19937_64& rng, const AlgebroidPtr& alg, int tensor_degree,
                          int poly_degree) {
  return symmetrize(random_cotensor(rng, alg, tensor_degree, poly_degree));
}

SymBracket random_sym_bracket(std::mt19937_64& rng, const AlgebroidPtr& alg,
                              int poly_degree) {
  const int r = alg->rank();
  std::vector<ScalarField> s(static_cast<std::size_t>(r) * r * r,
                             ScalarField::constant(0.0));
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = i; j < r; ++j) {
        ScalarField f = random_polynomial(rng, alg->base_dim(), poly_degree);
        s[(static_cast<std::size_t>(k) * r + i) * r + j] = f;
        s[(static_cast<std::size_t>(k) * r + j) * r + i] = f;
      }
  return SymBracket(alg, std::move(s));
}

Connection random_connection(std::mt19937_64& rng, const AlgebroidPtr& alg, int poly_degree) {
  const int r = alg->rank();
  std::vector<ScalarField> gamma(static_cast<std::size_t>(r) * r * r);
  for (auto& g : gamma) g = random_polynomial(rng, alg->base_dim(), poly_degree);
  return Connection(alg, std::move(gamma));
}

}  // namespace algc
