// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "algc/metric.hpp"

namespace algc {

/// Almost complex structure on a tangent-bundle algebroid, given as an
/// endomorphism field J with J∘J = −id (validated at probe points, 1e-10).
class AlmostComplex {
 public:
  explicit AlmostComplex(VecTensor j);

  const AlgebroidPtr& algebroid() const { return j_.algebroid(); }
  int rank() const { return j_.rank(); }
  const VecTensor& endo() const { return j_; }

  const ScalarField& comp(int k, int i) const {
    const int idx[1] = {i};
    return j_.comp(k, idx);
  }

  Section apply(const Section& x) const { return endo_apply(j_, x); }

 private:
  VecTensor j_;
};

/// Sup-norm of g(J·,J·) − g at the probe points; zero for orthogonal J.
double orthogonality_defect(const Metric& m, const AlmostComplex& ac);

/// Kähler form Omega(X,Y) = g(JX, Y); requires orthogonal J.
CoTensor kahler_form(const Metric& m, const AlmostComplex& ac);

/// N_J(X,Y) = J[JX,Y] + J[X,JY] + [X,Y] − [JX,JY]; skew-symmetric.
VecTensor nijenhuis(const AlmostComplex& ac);

/// The skew-symmetric algebroid with anchor J and bracket
/// [[X,Y]]^J = [JX,Y] + [X,JY] − J[X,Y], on the same chart and frame.
AlgebroidPtr tmj_algebroid(const AlmostComplex& ac);

/// Bundled data for computations that compare the base algebroid with its
/// anchor-J companion; builds the companion algebroid, the metric bound to
/// it, and both metric symmetric brackets once.
struct TmjContext {
  AlgebroidPtr alg_j;
  Metric metric_j;
  SymBracket sb_base;
  SymBracket sb_j;
};
TmjContext make_tmj_context(const Metric& m, const AlmostComplex& ac);

/// Residual at p of
///   <X:Y>^J = <JX:Y> + <X:JY> + sharp((<X:Y>)^flat ∘ J),
/// comparing the metric symmetric brackets of the base and anchor-J
/// algebroids.
double sym_bracket_J_relation(const Metric& m, const AlmostComplex& ac, const Section& x,
                              const Section& y, const std::vector<double>& p);
double sym_bracket_J_relation(const TmjContext& ctx, const Metric& m,
                              const AlmostComplex& ac, const Section& x, const Section& y,
                              const std::vector<double>& p);

/// Composition omega ∘ J of a covector field with the endomorphism.
CoTensor compose_endo(const CoTensor& omega, const AlmostComplex& ac);

using BilinearSectionMap = std::function<Section(const Section&, const Section&)>;

/// P(X,Y) = −J([X,JY] + [Y,JX]), brackets taken in the given algebroid.
BilinearSectionMap p_operator(AlgebroidPtr alg_rho, const AlmostComplex& ac);
/// Q(X,Y) = −J(<X:JY> + <Y:JX>) for a symmetric bracket on the algebroid.
BilinearSectionMap q_operator(const SymBracket& sb, const AlmostComplex& ac);
/// The symmetric bracket (P+Q)/2 in coefficient form.
SymBracket pq_bracket(AlgebroidPtr alg_rho, const SymBracket& sb, const AlmostComplex& ac);

/// nabla^J_X Y = −J nabla_X (JY) for the Levi-Civita connection.
Connection nabla_j(const Connection& lc, const AlmostComplex& ac);

/// First canonical Hermitian connection, the affine mean (nabla + nabla^J)/2.
Connection first_canonical(const Connection& lc, const Connection& nj);

/// Sup of |(d^s_nabla J)(k,i,j)| over the given points; zero characterizes
/// the nearly Kähler condition.
double nearly_kahler_residual(const Connection& lc, const AlmostComplex& ac,
                              std::span<const std::vector<double>> points);

/// Residual at p of the universal torsion identity
///   2 T^{nabla^J}(X,Y) = −N_J(X,Y) + (d^s_nabla J)(X,JY) − (d^s_nabla J)(JX,Y).
double torsion_identity_residual(const Connection& lc, const AlmostComplex& ac,
                                 const Section& x, const Section& y,
                                 const std::vector<double>& p);

}  // namespace algc
