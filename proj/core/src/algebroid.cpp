// SPDX-License-Identifier: Apache-2.0
#include "algc/algebroid.hpp"

#include <cmath>
#include <utility>

namespace algc {

namespace {

void require_same_parent(const Section& x, const Section& y, const char* who) {
  if (!x.algebroid() || !y.algebroid() || x.algebroid() != y.algebroid())
    throw DimensionError(std::string(who) + ": sections of different algebroids");
}

}  // namespace

Algebroid::Algebroid(int base_dim, int rank, std::vector<std::string> coords,
                     std::vector<ScalarField> anchor, std::vector<ScalarField> structure,
                     DomainBox box)
    : n_(base_dim),
      r_(rank),
      coords_(std::move(coords)),
      anchor_(std::move(anchor)),
      structure_(std::move(structure)),
      box_(std::move(box)) {
  if (n_ <= 0 || r_ <= 0) throw DimensionError("Algebroid: dimensions must be positive");
  if (coords_.size() != static_cast<std::size_t>(n_))
    throw DimensionError("Algebroid: coordinate name count does not match base dimension");
  if (box_.dim() != n_ || box_.upper.size() != static_cast<std::size_t>(n_))
    throw DimensionError("Algebroid: domain box dimension mismatch");
  for (int a = 0; a < n_; ++a)
    if (box_.lower[a] >= box_.upper[a])
      throw DimensionError("Algebroid: empty domain box interval");
  if (anchor_.size() != static_cast<std::size_t>(n_) * r_)
    throw DimensionError("Algebroid: anchor shape mismatch");
  if (structure_.size() != static_cast<std::size_t>(r_) * r_ * r_)
    throw DimensionError("Algebroid: structure array shape mismatch");

  // Validate skewness at probe points, then store structure functions in
  // skew-completed form: c(k,j,i) := -c(k,i,j) for i<j, c(k,i,i) := 0.
  constexpr double kTol = 1e-12;
  const auto probes = probe_points(box_);
  for (const auto& p : probes) {
    EvalCache cache(p);
    for (int k = 0; k < r_; ++k)
      for (int i = 0; i < r_; ++i)
        for (int j = i; j < r_; ++j) {
          const double cij = cache.value(c(k, i, j));
          const double cji = cache.value(c(k, j, i));
          if (std::fabs(cij + cji) > kTol)
            throw Error("Algebroid: structure functions are not skew-symmetric (c[" +
                        std::to_string(k) + "][" + std::to_string(i) + "][" +
                        std::to_string(j) + "])");
        }
  }
  for (int k = 0; k < r_; ++k)
    for (int i = 0; i < r_; ++i) {
      structure_[(static_cast<std::size_t>(k) * r_ + i) * r_ + i] = ScalarField::constant(0.0);
      for (int j = i + 1; j < r_; ++j)
        structure_[(static_cast<std::size_t>(k) * r_ + j) * r_ + i] = -c(k, i, j);
    }
}

AlgebroidPtr make_algebroid(int base_dim, int rank, std::vector<std::string> coords,
                            std::vector<ScalarField> anchor,
                            std::vector<ScalarField> structure, DomainBox box) {
  return std::make_shared<const Algebroid>(base_dim, rank, std::move(coords),
                                           std::move(anchor), std::move(structure),
                                           std::move(box));
}

Section::Section(AlgebroidPtr alg, std::vector<ScalarField> comps)
    : alg_(std::move(alg)), comps_(std::move(comps)) {
  if (!alg_) throw Error("Section: null algebroid");
  if (comps_.size() != static_cast<std::size_t>(alg_->rank()))
    throw DimensionError("Section: component count does not match rank");
}

Section Section::with_algebroid(AlgebroidPtr other) const {
  if (!other || other->rank() != rank())
    throw DimensionError("Section::with_algebroid: rank mismatch");
  return Section(std::move(other), comps_);
}

Section basis_section(AlgebroidPtr alg, int i) {
  if (!alg || i < 0 || i >= alg->rank()) throw DimensionError("basis_section: bad index");
  std::vector<ScalarField> comps(alg->rank(), ScalarField::constant(0.0));
  comps[i] = ScalarField::constant(1.0);
  return Section(std::move(alg), std::move(comps));
}

Section zero_section(AlgebroidPtr alg) {
  if (!alg) throw Error("zero_section: null algebroid");
  std::vector<ScalarField> comps(alg->rank(), ScalarField::constant(0.0));
  return Section(std::move(alg), std::move(comps));
}

Section operator+(const Section& x, const Section& y) {
  require_same_parent(x, y, "Section operator+");
  std::vector<ScalarField> comps(x.rank());
  for (int i = 0; i < x.rank(); ++i) comps[i] = x.comp(i) + y.comp(i);
  return Section(x.algebroid(), std::move(comps));
}

Section operator-(const Section& x, const Section& y) {
  require_same_parent(x, y, "Section operator-");
  std::vector<ScalarField> comps(x.rank());
  for (int i = 0; i < x.rank(); ++i) comps[i] = x.comp(i) - y.comp(i);
  return Section(x.algebroid(), std::move(comps));
}

Section operator-(const Section& x) {
  std::vector<ScalarField> comps(x.rank());
  for (int i = 0; i < x.rank(); ++i) comps[i] = -x.comp(i);
  return Section(x.algebroid(), std::move(comps));
}

Section operator*(const ScalarField& f, const Section& x) {
  std::vector<ScalarField> comps(x.rank());
  for (int i = 0; i < x.rank(); ++i) comps[i] = f * x.comp(i);
  return Section(x.algebroid(), std::move(comps));
}

Section operator*(double s, const Section& x) {
  return ScalarField::constant(s) * x;
}

ScalarField anchored_component(const Section& x, int a) {
  const Algebroid& alg = *x.algebroid();
  ScalarField u = ScalarField::constant(0.0);
  for (int i = 0; i < alg.rank(); ++i) u = u + alg.rho(a, i) * x.comp(i);
  return u;
}

ScalarField anchor_apply(const Section& x, const ScalarField& f) {
  const Algebroid& alg = *x.algebroid();
  ScalarField out = ScalarField::constant(0.0);
  for (int a = 0; a < alg.base_dim(); ++a)
    out = out + anchored_component(x, a) * partial(f, a);
  return out;
}

Section bracket(const Section& x, const Section& y) {
  require_same_parent(x, y, "bracket");
  const Algebroid& alg = *x.algebroid();
  const int r = alg.rank();
  std::vector<ScalarField> comps(r);
  for (int k = 0; k < r; ++k) {
    ScalarField v = anchor_apply(x, y.comp(k)) - anchor_apply(y, x.comp(k));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) v = v + alg.c(k, i, j) * x.comp(i) * y.comp(j);
    comps[k] = v;
  }
  return Section(x.algebroid(), std::move(comps));
}

Section jacobiator(const Section& x, const Section& y, const Section& z) {
  return bracket(bracket(x, y), z) + bracket(bracket(z, x), y) + bracket(bracket(y, z), x);
}

double almost_lie_residual(const Section& x, const Section& y, const std::vector<double>& p) {
  require_same_parent(x, y, "almost_lie_residual");
  const Algebroid& alg = *x.algebroid();
  const Section xy = bracket(x, y);

  EvalCache cache(p);
  double residual = 0.0;
  for (int a = 0; a < alg.base_dim(); ++a) {
    // rho([X,Y])^a
    const double lhs = cache.value(anchored_component(xy, a));
    // [rho X, rho Y]^a as a coordinate vector-field bracket
    ScalarField rhs = ScalarField::constant(0.0);
    for (int b = 0; b < alg.base_dim(); ++b)
      rhs = rhs + anchored_component(x, b) * partial(anchored_component(y, a), b) -
            anchored_component(y, b) * partial(anchored_component(x, a), b);
    residual = std::max(residual, std::fabs(lhs - cache.value(rhs)));
  }
  return residual;
}

double sup_norm(const Section& x, EvalCache& cache) {
  double m = 0.0;
  for (int i = 0; i < x.rank(); ++i) m = std::max(m, std::fabs(cache.value(x.comp(i))));
  return m;
}

double sup_norm(const Section& x, const std::vector<double>& p) {
  EvalCache cache(p);
  return sup_norm(x, cache);
}

}  // namespace algc
