// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "algc/algebroid.hpp"

namespace algc {

int flat_index(std::span<const int> idx, int rank);
void for_each_multi_index(int degree, int rank,
                          const std::function<void(const std::vector<int>&)>& fn);

/// Covariant k-tensor field on an algebroid, stored as r^k component fields
/// indexed row-major by multi-index. Degree 0 is a single scalar field.
class CoTensor {
 public:
  CoTensor(AlgebroidPtr alg, int degree, std::vector<ScalarField> comps);

  static CoTensor zero(AlgebroidPtr alg, int degree);
  static CoTensor scalar(AlgebroidPtr alg, ScalarField f);

  const AlgebroidPtr& algebroid() const { return alg_; }
  int degree() const { return degree_; }
  int rank() const { return alg_->rank(); }

  const ScalarField& comp(std::span<const int> idx) const;
  const ScalarField& comp_flat(int flat) const { return comps_[flat]; }
  const std::vector<ScalarField>& comps() const { return comps_; }

  /// T(X_1, ..., X_k) as a composite scalar field; valid because covariant
  /// tensors are function-linear in every slot.
  ScalarField operator()(std::span<const Section> args) const;

  CoTensor with_algebroid(AlgebroidPtr other) const;

 private:
  AlgebroidPtr alg_;
  int degree_;
  std::vector<ScalarField> comps_;
};

CoTensor operator+(const CoTensor& s, const CoTensor& t);
CoTensor operator-(const CoTensor& s, const CoTensor& t);
CoTensor operator*(double a, const CoTensor& t);
CoTensor operator*(const ScalarField& f, const CoTensor& t);

/// Vector-valued covariant k-tensor, components T(m, i_1..i_k) = frame
/// component m of T(e_{i_1},..,e_{i_k}). Degree 1 is an endomorphism field.
class VecTensor {
 public:
  VecTensor(AlgebroidPtr alg, int degree, std::vector<ScalarField> comps);

  static VecTensor zero(AlgebroidPtr alg, int degree);
  static VecTensor identity_endo(AlgebroidPtr alg);

  const AlgebroidPtr& algebroid() const { return alg_; }
  int degree() const { return degree_; }
  int rank() const { return alg_->rank(); }

  const ScalarField& comp(int m, std::span<const int> idx) const;
  const std::vector<ScalarField>& comps() const { return comps_; }

  VecTensor with_algebroid(AlgebroidPtr other) const;

 private:
  AlgebroidPtr alg_;
  int degree_;
  std::vector<ScalarField> comps_;  // size r^(degree+1), m-major
};

VecTensor operator+(const VecTensor& s, const VecTensor& t);
VecTensor operator-(const VecTensor& s, const VecTensor& t);
VecTensor operator*(double a, const VecTensor& t);

/// JX for an endomorphism field J (degree-1 VecTensor).
Section endo_apply(const VecTensor& j, const Section& x);
/// A∘B for endomorphism fields.
VecTensor endo_compose(const VecTensor& a, const VecTensor& b);
/// J∘T for a degree-2 vector tensor T: (J∘T)(X,Y) = J(T(X,Y)).
VecTensor endo_compose_vec2(const VecTensor& j, const VecTensor& t);
/// T(X,Y) for a degree-2 vector tensor.
Section vec2_apply(const VecTensor& t, const Section& x, const Section& y);

/// A-connection in local data: coefficient fields gamma(k,i,j) with
/// nabla_{e_i} e_j = gamma(k,i,j) e_k.
class Connection {
 public:
  Connection(AlgebroidPtr alg, std::vector<ScalarField> gamma);

  static Connection zero(AlgebroidPtr alg);

  const AlgebroidPtr& algebroid() const { return alg_; }
  int rank() const { return alg_->rank(); }
  const ScalarField& gamma(int k, int i, int j) const {
    return gamma_[(static_cast<std::size_t>(k) * rank() + i) * rank() + j];
  }

 private:
  AlgebroidPtr alg_;
  std::vector<ScalarField> gamma_;
};

/// Symmetric bracket in local data: coefficient fields s(k,i,j), symmetric
/// in (i,j). The constructor checks symmetry at probe points (1e-12) and
/// stores the coefficients in symmetry-completed form.
class SymBracket {
 public:
  SymBracket(AlgebroidPtr alg, std::vector<ScalarField> s);

  static SymBracket zero(AlgebroidPtr alg);

  const AlgebroidPtr& algebroid() const { return alg_; }
  int rank() const { return alg_->rank(); }
  const ScalarField& s(int k, int i, int j) const {
    return s_[(static_cast<std::size_t>(k) * rank() + i) * rank() + j];
  }

  /// <X:Y> by the Leibniz expansion
  /// <X:Y>^k = X^i Y^j s(k,i,j) + rho(X)(Y^k) + rho(Y)(X^k).
  Section apply(const Section& x, const Section& y) const;

 private:
  AlgebroidPtr alg_;
  std::vector<ScalarField> s_;
};

// --- substitution, alternation, symmetrization ----------------------------

/// (i_X T)(X_1..X_{k-1}) = T(X, X_1..X_{k-1}); degree must be >= 1.
CoTensor interior(const Section& x, const CoTensor& t);

/// Alternator with the 1/k! normalization; a projection onto forms.
CoTensor alternate(const CoTensor& t);
/// Symmetrizer with the 1/k! normalization; a projection.
CoTensor symmetrize(const CoTensor& t);

/// Sup-norm of (T - Alt T) at the algebroid's probe points.
double alternating_defect(const CoTensor& t);

// --- the four derivative operators -----------------------------------------

/// Exterior derivative d^a of an alternating tensor (degree check at probe
/// points, tolerance 1e-9).
CoTensor exterior_derivative(const CoTensor& eta);

/// Alternating Lie derivative L^a_X on any covariant tensor.
CoTensor lie_derivative(const Section& x, const CoTensor& t);

/// Symmetrized derivative d^s induced by a symmetric bracket, defined on the
/// whole tensor bundle, computed on constant frame sections (the bracket
/// term replaces slot j after slot i is removed). On symmetric input this
/// coincides with the invariant two-sum formula; on non-symmetric input that
/// formula is not function-linear in its slots, so contraction of this
/// component tensor with non-constant sections differs from
/// sym_derivative_on.
CoTensor sym_derivative(const SymBracket& sb, const CoTensor& t);

/// The invariant two-sum formula for d^s evaluated on degree+1 explicit
/// sections; the form the symmetric Cartan identities are stated in.
ScalarField sym_derivative_on(const SymBracket& sb, const CoTensor& t,
                              std::span<const Section> args);

/// Symmetric Lie derivative L^s_X induced by a symmetric bracket.
CoTensor sym_lie_derivative(const SymBracket& sb, const Section& x, const CoTensor& t);

// --- connections ------------------------------------------------------------

/// (nabla_X Y)^k = rho(X)(Y^k) + gamma(k,i,j) X^i Y^j.
Section covariant_derivative(const Connection& conn, const Section& x, const Section& y);

/// Tensor-bundle extension: (nabla_X T)(..) = rho(X)(T(..)) - sum over slots.
CoTensor covariant_derivative(const Connection& conn, const Section& x, const CoTensor& t);

/// (nabla T)(X_1,..,X_{k+1}) = (nabla_{X_1} T)(X_2,..,X_{k+1}).
CoTensor covariant_differential(const Connection& conn, const CoTensor& t);

/// nabla_{e_i} J for an endomorphism field (degree-1 VecTensor).
VecTensor endo_covariant_derivative(const Connection& conn, int i, const VecTensor& j);
/// nabla_X J for an endomorphism field.
VecTensor endo_covariant_derivative(const Connection& conn, const Section& x,
                                    const VecTensor& j);

/// s(k,i,j) = gamma(k,i,j) + gamma(k,j,i); realizes <X:Y> = nabla_X Y + nabla_Y X.
SymBracket symmetric_product(const Connection& conn);

/// T(k,i,j) = gamma(k,i,j) - gamma(k,j,i) - c(k,i,j); skew in (i,j).
VecTensor torsion(const Connection& conn);

/// (d^a_nabla T)(X,Y) = (nabla_X T)Y - (nabla_Y T)X on endomorphism fields.
VecTensor d_nabla_alt(const Connection& conn, const VecTensor& j);
/// (d^s_nabla T)(X,Y) = (nabla_X T)Y + (nabla_Y T)X on endomorphism fields.
VecTensor d_nabla_sym(const Connection& conn, const VecTensor& j);

}  // namespace algc
