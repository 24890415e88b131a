// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>

#include "algc/calculus.hpp"

namespace algc {

/// Pseudo-Riemannian bundle metric on an algebroid. The constructor checks
/// symmetry at probe points (1e-12) and prepares the pointwise jet-ring
/// inverse, so that everything built through the sharp map stays
/// differentiable once more. Nondegeneracy is checked per evaluation point
/// (Gauss-Jordan pivot threshold 1e-10); a singular point aborts with a
/// diagnostic naming the point.
class Metric {
 public:
  explicit Metric(CoTensor tensor);

  const AlgebroidPtr& algebroid() const { return g_.algebroid(); }
  int rank() const { return g_.rank(); }
  const CoTensor& tensor() const { return g_; }

  const ScalarField& g(int i, int j) const {
    const int idx[2] = {i, j};
    return g_.comp(idx);
  }
  const ScalarField& ginv(int i, int j) const {
    return ginv_[static_cast<std::size_t>(i) * rank() + j];
  }

  /// Same metric components bound to another algebroid on the same bundle.
  Metric with_algebroid(AlgebroidPtr other) const { return Metric(g_.with_algebroid(std::move(other))); }

 private:
  CoTensor g_;
  std::vector<ScalarField> ginv_;
};

/// X^flat = i_X g.
CoTensor flat(const Metric& m, const Section& x);
/// g(sharp(omega), X) = omega(X); pointwise jet-ring inversion.
Section sharp(const Metric& m, const CoTensor& omega);

/// T^g(X,Y,Z) = g(T(X,Y), Z) for the torsion of the connection.
CoTensor torsion_3form(const Metric& m, const Connection& conn);

/// Sup-norm of T^g − Alt(T^g) over seeded sample points; zero exactly when
/// the torsion is totally skew-symmetric with respect to g.
double totally_skew_residual(const Metric& m, const Connection& conn, int points = 20,
                             std::uint64_t seed = 42);

/// Raise the last slot of an alternating 3-tensor: T(k,i,j) = ginv(k,l) H(i,j,l).
VecTensor sharp_last(const Metric& m, const CoTensor& h);

/// The metric symmetric bracket
///   <X:Y>^s = sharp(L^a_X Y^flat + L^a_Y X^flat − d^a(g(X,Y))),
/// whose symmetric Lie derivative satisfies L^s g = −L^a g.
SymBracket sym_bracket_s(const Metric& m);

/// Levi-Civita connection via nabla_X Y = 1/2([X,Y] + <X:Y>^s).
Connection levi_civita(const Metric& m);

/// Independent oracle: the unique torsion-free metric connection from the
/// Koszul formula
///   2 g(nabla_X Y, Z) = rho(X) g(Y,Z) + rho(Y) g(X,Z) − rho(Z) g(X,Y)
///                       + g([X,Y],Z) − g([X,Z],Y) − g([Y,Z],X).
Connection koszul_oracle(const Metric& m);

/// Metric connection with prescribed totally skew torsion:
///   nabla_X Y = 1/2([X,Y] + <X:Y>^s) + 1/2 T(X,Y), g(T(X,Y),Z) = H(X,Y,Z).
Connection skew_torsion_connection(const Metric& m, const CoTensor& h);

/// Connection assembled from an arbitrary symmetric bracket and an arbitrary
/// degree-2 vector tensor through the same decomposition formula.
Connection from_decomposition(const SymBracket& sb, const VecTensor& t);

/// {X,Y}^s = sharp(L^s_X Y^flat + L^s_Y X^flat + d^s(g(X,Y))), with L^s and
/// d^s induced by the given symmetric bracket.
SymBracket curly_bracket_s(const Metric& m, const SymBracket& sb);

/// Residuals at p of the two unconditional identities expressing
/// g(nabla_X X, Z) and g(<X:Y>, Z) through Lie derivatives, differentials,
/// torsion, nabla g and d^s g (the latter induced by the symmetric product
/// of the connection). Both vanish for every connection.
std::pair<double, double> thm4_residuals(const Metric& m, const Connection& conn,
                                         const Section& x, const Section& y,
                                         const Section& z, const std::vector<double>& p);

/// Residual at p of the reduced identity
///   nabla_X Y + nabla_Y X = sharp(L^a_X Y^flat + L^a_Y X^flat − d^a g(X,Y)),
/// valid for metric connections with totally skew-symmetric torsion.
double corollary4_residual(const Metric& m, const Connection& conn, const Section& x,
                           const Section& y, const std::vector<double>& p);

}  // namespace algc
