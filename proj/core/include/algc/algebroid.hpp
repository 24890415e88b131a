// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "algc/expr.hpp"

namespace algc {

class Algebroid;
using AlgebroidPtr = std::shared_ptr<const Algebroid>;

/// Skew-symmetric algebroid in local structure data over a single chart:
/// base dimension n, rank r, anchor components rho(a,i) (the a-th tangent
/// component of the anchor image of the frame section e_i) and structure
/// functions c(k,i,j) with [e_i, e_j] = c(k,i,j) e_k.
///
/// The constructor validates skewness of the structure functions at probe
/// points (tolerance 1e-12) and then stores them in skew-completed form, so
/// c(k,j,i) is bit-exactly the negation of c(k,i,j).
class Algebroid : public std::enable_shared_from_this<Algebroid> {
 public:
  Algebroid(int base_dim, int rank, std::vector<std::string> coords,
            std::vector<ScalarField> anchor,     // n*r, row-major rho(a,i)
            std::vector<ScalarField> structure,  // r^3, index (k,i,j)
            DomainBox box);

  int base_dim() const { return n_; }
  int rank() const { return r_; }
  const std::vector<std::string>& coords() const { return coords_; }
  const DomainBox& box() const { return box_; }

  const ScalarField& rho(int a, int i) const {
    return anchor_[static_cast<std::size_t>(a) * r_ + i];
  }
  const ScalarField& c(int k, int i, int j) const {
    return structure_[(static_cast<std::size_t>(k) * r_ + i) * r_ + j];
  }

 private:
  int n_, r_;
  std::vector<std::string> coords_;
  std::vector<ScalarField> anchor_;
  std::vector<ScalarField> structure_;
  DomainBox box_;
};

AlgebroidPtr make_algebroid(int base_dim, int rank, std::vector<std::string> coords,
                            std::vector<ScalarField> anchor,
                            std::vector<ScalarField> structure, DomainBox box);

/// Section of the algebroid in the standard local frame, X = X^i e_i.
class Section {
 public:
  Section() = default;
  Section(AlgebroidPtr alg, std::vector<ScalarField> comps);

  const AlgebroidPtr& algebroid() const { return alg_; }
  int rank() const { return static_cast<int>(comps_.size()); }
  const ScalarField& comp(int i) const { return comps_[i]; }
  const std::vector<ScalarField>& comps() const { return comps_; }

  /// Same component fields viewed as a section of another algebroid on the
  /// same bundle and chart (used for the anchor-J algebroid, whose frame
  /// coincides with the base algebroid's).
  Section with_algebroid(AlgebroidPtr other) const;

 private:
  AlgebroidPtr alg_;
  std::vector<ScalarField> comps_;
};

Section basis_section(AlgebroidPtr alg, int i);
Section zero_section(AlgebroidPtr alg);

Section operator+(const Section& x, const Section& y);
Section operator-(const Section& x, const Section& y);
Section operator-(const Section& x);
Section operator*(const ScalarField& f, const Section& x);
Section operator*(double s, const Section& x);

/// The action (rho ∘ X)(f) = Σ rho(a,i) X^i ∂_a f as a composite field;
/// it can be differentiated once more.
ScalarField anchor_apply(const Section& x, const ScalarField& f);

/// a-th tangent component of the anchor image of X.
ScalarField anchored_component(const Section& x, int a);

/// [X,Y]^k = rho(X)(Y^k) − rho(Y)(X^k) + c(k,i,j) X^i Y^j.
Section bracket(const Section& x, const Section& y);

/// [[X,Y],Z] + [[Z,X],Y] + [[Y,Z],X]; vanishes exactly when the bracket
/// satisfies the Jacobi identity.
Section jacobiator(const Section& x, const Section& y, const Section& z);

/// Sup-norm at p of rho([X,Y]) − [rho X, rho Y], the second bracket taken as
/// a coordinate vector-field bracket; zero when the algebroid is almost Lie.
double almost_lie_residual(const Section& x, const Section& y, const std::vector<double>& p);

/// Sup-norm of the section's component values at p.
double sup_norm(const Section& x, const std::vector<double>& p);
double sup_norm(const Section& x, EvalCache& cache);

}  // namespace algc
