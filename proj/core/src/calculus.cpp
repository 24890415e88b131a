// SPDX-License-Identifier: Apache-2.0
#include "algc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace algc {

namespace {

std::size_t power(int base, int exponent) {
  std::size_t p = 1;
  for (int i = 0; i < exponent; ++i) p *= static_cast<std::size_t>(base);
  return p;
}

void require_same(const AlgebroidPtr& a, const AlgebroidPtr& b, const char* who) {
  if (!a || !b || a != b) throw DimensionError(std::string(who) + ": algebroid mismatch");
}

/// All permutations of {0..k-1} with their signs.
std::vector<std::pair<std::vector<int>, int>> permutations_with_sign(int k) {
  std::vector<std::pair<std::vector<int>, int>> out;
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) ++inversions;
    out.emplace_back(perm, inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

int flat_index(std::span<const int> idx, int rank) {
  int f = 0;
  for (int i : idx) f = f * rank + i;
  return f;
}

void for_each_multi_index(int degree, int rank,
                          const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(degree, 0);
  if (degree == 0) {
    fn(idx);
    return;
  }
  for (;;) {
    fn(idx);
    int pos = degree - 1;
    while (pos >= 0 && ++idx[pos] == rank) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

// ---------------------------------------------------------------------------
// CoTensor
// ---------------------------------------------------------------------------

CoTensor::CoTensor(AlgebroidPtr alg, int degree, std::vector<ScalarField> comps)
    : alg_(std::move(alg)), degree_(degree), comps_(std::move(comps)) {
  if (!alg_) throw Error("CoTensor: null algebroid");
  if (degree_ < 0) throw DimensionError("CoTensor: negative degree");
  if (comps_.size() != power(alg_->rank(), degree_))
    throw DimensionError("CoTensor: component count does not match degree");
}

CoTensor CoTensor::zero(AlgebroidPtr alg, int degree) {
  std::vector<ScalarField> comps(power(alg->rank(), degree), ScalarField::constant(0.0));
  return CoTensor(std::move(alg), degree, std::move(comps));
}

CoTensor CoTensor::scalar(AlgebroidPtr alg, ScalarField f) {
  return CoTensor(std::move(alg), 0, {std::move(f)});
}

const ScalarField& CoTensor::comp(std::span<const int> idx) const {
  return comps_[flat_index(idx, rank())];
}

ScalarField CoTensor::operator()(std::span<const Section> args) const {
  if (static_cast<int>(args.size()) != degree_)
    throw DimensionError("CoTensor(): wrong number of section arguments");
  for (const Section& s : args) require_same(alg_, s.algebroid(), "CoTensor()");
  ScalarField out = ScalarField::constant(0.0);
  for_each_multi_index(degree_, rank(), [&](const std::vector<int>& idx) {
    ScalarField term = comp(idx);
    for (int m = 0; m < degree_; ++m) term = term * args[m].comp(idx[m]);
    out = out + term;
  });
  return out;
}

CoTensor CoTensor::with_algebroid(AlgebroidPtr other) const {
  if (!other || other->rank() != rank())
    throw DimensionError("CoTensor::with_algebroid: rank mismatch");
  return CoTensor(std::move(other), degree_, comps_);
}

CoTensor operator+(const CoTensor& s, const CoTensor& t) {
  require_same(s.algebroid(), t.algebroid(), "CoTensor operator+");
  if (s.degree() != t.degree()) throw DimensionError("CoTensor operator+: degree mismatch");
  std::vector<ScalarField> comps(s.comps().size());
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = s.comps()[i] + t.comps()[i];
  return CoTensor(s.algebroid(), s.degree(), std::move(comps));
}

CoTensor operator-(const CoTensor& s, const CoTensor& t) {
  require_same(s.algebroid(), t.algebroid(), "CoTensor operator-");
  if (s.degree() != t.degree()) throw DimensionError("CoTensor operator-: degree mismatch");
  std::vector<ScalarField> comps(s.comps().size());
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = s.comps()[i] - t.comps()[i];
  return CoTensor(s.algebroid(), s.degree(), std::move(comps));
}

CoTensor operator*(double a, const CoTensor& t) {
  std::vector<ScalarField> comps(t.comps().size());
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = a * t.comps()[i];
  return CoTensor(t.algebroid(), t.degree(), std::move(comps));
}

CoTensor operator*(const ScalarField& f, const CoTensor& t) {
  std::vector<ScalarField> comps(t.comps().size());
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = f * t.comps()[i];
  return CoTensor(t.algebroid(), t.degree(), std::move(comps));
}

// ---------------------------------------------------------------------------
// VecTensor
// ---------------------------------------------------------------------------

VecTensor::VecTensor(AlgebroidPtr alg, int degree, std::vector<ScalarField> comps)
    : alg_(std::move(alg)), degree_(degree), comps_(std::move(comps)) {
  if (!alg_) throw Error("VecTensor: null algebroid");
  if (degree_ < 0) throw DimensionError("VecTensor: negative degree");
  if (comps_.size() != power(alg_->rank(), degree_ + 1))
    throw DimensionError("VecTensor: component count does not match degree");
}

VecTensor VecTensor::zero(AlgebroidPtr alg, int degree) {
  std::vector<ScalarField> comps(power(alg->rank(), degree + 1), ScalarField::constant(0.0));
  return VecTensor(std::move(alg), degree, std::move(comps));
}

VecTensor VecTensor::identity_endo(AlgebroidPtr alg) {
  const int r = alg->rank();
  std::vector<ScalarField> comps(static_cast<std::size_t>(r) * r, ScalarField::constant(0.0));
  for (int i = 0; i < r; ++i) comps[static_cast<std::size_t>(i) * r + i] = ScalarField::constant(1.0);
  return VecTensor(std::move(alg), 1, std::move(comps));
}

const ScalarField& VecTensor::comp(int m, std::span<const int> idx) const {
  const std::size_t block = power(rank(), degree_);
  return comps_[static_cast<std::size_t>(m) * block + flat_index(idx, rank())];
}

VecTensor VecTensor::with_algebroid(AlgebroidPtr other) const {
  if (!other || other->rank() != rank())
    throw DimensionError("VecTensor::with_algebroid: rank mismatch");
  return VecTensor(std::move(other), degree_, comps_);
}

VecTensor operator+(const VecTensor& s, const VecTensor& t) {
  require_same(s.algebroid(), t.algebroid(), "VecTensor operator+");
  if (s.degree() != t.degree()) throw DimensionError("VecTensor operator+: degree mismatch");
  std::vector<ScalarField> comps(s.comps().size());
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = s.comps()[i] + t.comps()[i];
  return VecTensor(s.algebroid(), s.degree(), std::move(comps));
}

VecTensor operator-(const VecTensor& s, const VecTensor& t) {
  require_same(s.algebroid(), t.algebroid(), "VecTensor operator-");
  if (s.degree() != t.degree()) throw DimensionError("VecTensor operator-: degree mismatch");
  std::vector<ScalarField> comps(s.comps().size());
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = s.comps()[i] - t.comps()[i];
  return VecTensor(s.algebroid(), s.degree(), std::move(comps));
}

VecTensor operator*(double a, const VecTensor& t) {
  std::vector<ScalarField> comps(t.comps().size());
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] = a * t.comps()[i];
  return VecTensor(t.algebroid(), t.degree(), std::move(comps));
}

Section endo_apply(const VecTensor& j, const Section& x) {
  if (j.degree() != 1) throw DimensionError("endo_apply: endomorphism expected");
  const int r = j.rank();
  std::vector<ScalarField> comps(r);
  for (int k = 0; k < r; ++k) {
    ScalarField v = ScalarField::constant(0.0);
    for (int m = 0; m < r; ++m) {
      const int idx[1] = {m};
      v = v + j.comp(k, idx) * x.comp(m);
    }
    comps[k] = v;
  }
  return Section(x.algebroid(), std::move(comps));
}

VecTensor endo_compose(const VecTensor& a, const VecTensor& b) {
  if (a.degree() != 1 || b.degree() != 1)
    throw DimensionError("endo_compose: endomorphisms expected");
  require_same(a.algebroid(), b.algebroid(), "endo_compose");
  const int r = a.rank();
  std::vector<ScalarField> comps(static_cast<std::size_t>(r) * r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i) {
      ScalarField v = ScalarField::constant(0.0);
      for (int m = 0; m < r; ++m) {
        const int im[1] = {m}, ii[1] = {i};
        v = v + a.comp(k, im) * b.comp(m, ii);
      }
      comps[static_cast<std::size_t>(k) * r + i] = v;
    }
  return VecTensor(a.algebroid(), 1, std::move(comps));
}

VecTensor endo_compose_vec2(const VecTensor& j, const VecTensor& t) {
  if (j.degree() != 1 || t.degree() != 2)
    throw DimensionError("endo_compose_vec2: degree mismatch");
  require_same(j.algebroid(), t.algebroid(), "endo_compose_vec2");
  const int r = j.rank();
  std::vector<ScalarField> comps(static_cast<std::size_t>(r) * r * r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int l = 0; l < r; ++l) {
        ScalarField v = ScalarField::constant(0.0);
        for (int m = 0; m < r; ++m) {
          const int jm[1] = {m};
          const int til[2] = {i, l};
          v = v + j.comp(k, jm) * t.comp(m, til);
        }
        comps[(static_cast<std::size_t>(k) * r + i) * r + l] = v;
      }
  return VecTensor(j.algebroid(), 2, std::move(comps));
}

Section vec2_apply(const VecTensor& t, const Section& x, const Section& y) {
  if (t.degree() != 2) throw DimensionError("vec2_apply: degree-2 tensor expected");
  require_same(t.algebroid(), x.algebroid(), "vec2_apply");
  require_same(t.algebroid(), y.algebroid(), "vec2_apply");
  const int r = t.rank();
  std::vector<ScalarField> comps(r);
  for (int k = 0; k < r; ++k) {
    ScalarField v = ScalarField::constant(0.0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const int idx[2] = {i, j};
        v = v + t.comp(k, idx) * x.comp(i) * y.comp(j);
      }
    comps[k] = v;
  }
  return Section(x.algebroid(), std::move(comps));
}

// ---------------------------------------------------------------------------
// Connection and SymBracket
// ---------------------------------------------------------------------------

Connection::Connection(AlgebroidPtr alg, std::vector<ScalarField> gamma)
    : alg_(std::move(alg)), gamma_(std::move(gamma)) {
  if (!alg_) throw Error("Connection: null algebroid");
  if (gamma_.size() != power(alg_->rank(), 3))
    throw DimensionError("Connection: coefficient count does not match rank");
}

Connection Connection::zero(AlgebroidPtr alg) {
  std::vector<ScalarField> gamma(power(alg->rank(), 3), ScalarField::constant(0.0));
  return Connection(std::move(alg), std::move(gamma));
}

SymBracket::SymBracket(AlgebroidPtr alg, std::vector<ScalarField> s)
    : alg_(std::move(alg)), s_(std::move(s)) {
  if (!alg_) throw Error("SymBracket: null algebroid");
  const int r = alg_->rank();
  if (s_.size() != power(r, 3))
    throw DimensionError("SymBracket: coefficient count does not match rank");

  constexpr double kTol = 1e-12;
  const auto probes = probe_points(alg_->box());
  for (const auto& p : probes) {
    EvalCache cache(p);
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          const double sij = cache.value(this->s(k, i, j));
          const double sji = cache.value(this->s(k, j, i));
          if (std::fabs(sij - sji) > kTol)
            throw Error("SymBracket: coefficients are not symmetric (s[" + std::to_string(k) +
                        "][" + std::to_string(i) + "][" + std::to_string(j) + "])");
        }
  }
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        s_[(static_cast<std::size_t>(k) * r + j) * r + i] = this->s(k, i, j);
}

SymBracket SymBracket::zero(AlgebroidPtr alg) {
  std::vector<ScalarField> s(power(alg->rank(), 3), ScalarField::constant(0.0));
  return SymBracket(std::move(alg), std::move(s));
}

Section SymBracket::apply(const Section& x, const Section& y) const {
  require_same(alg_, x.algebroid(), "SymBracket::apply");
  require_same(alg_, y.algebroid(), "SymBracket::apply");
  const int r = rank();
  std::vector<ScalarField> comps(r);
  for (int k = 0; k < r; ++k) {
    ScalarField v = anchor_apply(x, y.comp(k)) + anchor_apply(y, x.comp(k));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) v = v + s(k, i, j) * x.comp(i) * y.comp(j);
    comps[k] = v;
  }
  return Section(x.algebroid(), std::move(comps));
}

// ---------------------------------------------------------------------------
// Substitution, alternation, symmetrization
// ---------------------------------------------------------------------------

CoTensor interior(const Section& x, const CoTensor& t) {
  require_same(x.algebroid(), t.algebroid(), "interior");
  if (t.degree() < 1) throw DimensionError("interior: degree-0 tensor");
  const int r = t.rank();
  const int k = t.degree();
  std::vector<ScalarField> comps(power(r, k - 1));
  for_each_multi_index(k - 1, r, [&](const std::vector<int>& idx) {
    ScalarField v = ScalarField::constant(0.0);
    std::vector<int> full(k);
    std::copy(idx.begin(), idx.end(), full.begin() + 1);
    for (int i0 = 0; i0 < r; ++i0) {
      full[0] = i0;
      v = v + x.comp(i0) * t.comp(full);
    }
    comps[flat_index(idx, r)] = v;
  });
  return CoTensor(t.algebroid(), k - 1, std::move(comps));
}

namespace {

CoTensor permutation_average(const CoTensor& t, bool signed_sum) {
  const int k = t.degree();
  if (k <= 1) return t;
  const int r = t.rank();
  const auto perms = permutations_with_sign(k);
  const double norm = 1.0;
  std::vector<ScalarField> comps(t.comps().size());
  for_each_multi_index(k, r, [&](const std::vector<int>& idx) {
    ScalarField v = ScalarField::constant(0.0);
    std::vector<int> permuted(k);
    for (const auto& [perm, sign] : perms) {
      for (int m = 0; m < k; ++m) permuted[m] = idx[perm[m]];
      const double w = signed_sum ? static_cast<double>(sign) : 1.0;
      v = v + w * t.comp(permuted);
    }
    comps[flat_index(idx, r)] = (norm / static_cast<double>(perms.size())) * v;
  });
  return CoTensor(t.algebroid(), k, std::move(comps));
}

}  // namespace

CoTensor alternate(const CoTensor& t) { return permutation_average(t, true); }
CoTensor symmetrize(const CoTensor& t) { return permutation_average(t, false); }

double alternating_defect(const CoTensor& t) {
  if (t.degree() <= 1) return 0.0;
  const CoTensor d = t - alternate(t);
  double worst = 0.0;
  for (const auto& p : probe_points(t.algebroid()->box())) {
    EvalCache cache(p);
    for (const auto& comp : d.comps())
      worst = std::max(worst, std::fabs(cache.value(comp)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Derivative operators
// ---------------------------------------------------------------------------

namespace {

/// rho(e_i)(f), the anchor action of the i-th frame section.
ScalarField basis_anchor_apply(const Algebroid& alg, int i, const ScalarField& f) {
  ScalarField out = ScalarField::constant(0.0);
  for (int a = 0; a < alg.base_dim(); ++a) out = out + alg.rho(a, i) * partial(f, a);
  return out;
}

}  // namespace

CoTensor exterior_derivative(const CoTensor& eta) {
  const Algebroid& alg = *eta.algebroid();
  const int r = alg.rank();
  const int k = eta.degree();
  if (k >= 2 && alternating_defect(eta) > 1e-9)
    throw Error("exterior_derivative: input tensor is not alternating");

  std::vector<ScalarField> comps(power(r, k + 1));
  for_each_multi_index(k + 1, r, [&](const std::vector<int>& idx) {
    ScalarField v = ScalarField::constant(0.0);
    std::vector<int> sub(k);
    // anchor-derivative terms, slot m removed
    for (int m = 0; m <= k; ++m) {
      for (int t = 0, w = 0; t <= k; ++t)
        if (t != m) sub[w++] = idx[t];
      const double sign = m % 2 == 0 ? 1.0 : -1.0;
      v = v + sign * basis_anchor_apply(alg, idx[m], eta.comp(sub));
    }
    // structure terms: bracket argument moves to the front
    std::vector<int> head(k);
    for (int m = 0; m <= k; ++m)
      for (int l = m + 1; l <= k; ++l) {
        for (int t = 0, w = 1; t <= k; ++t)
          if (t != m && t != l) head[w++] = idx[t];
        const double sign = (m + l) % 2 == 0 ? 1.0 : -1.0;
        for (int p = 0; p < r; ++p) {
          head[0] = p;
          v = v + sign * alg.c(p, idx[m], idx[l]) * eta.comp(head);
        }
      }
    comps[flat_index(idx, r)] = v;
  });
  return CoTensor(eta.algebroid(), k + 1, std::move(comps));
}

CoTensor lie_derivative(const Section& x, const CoTensor& t) {
  require_same(x.algebroid(), t.algebroid(), "lie_derivative");
  const Algebroid& alg = *t.algebroid();
  const int r = alg.rank();
  const int k = t.degree();

  // [X, e_j] for each frame section, computed once
  std::vector<Section> xb;
  xb.reserve(r);
  for (int j = 0; j < r; ++j) xb.push_back(bracket(x, basis_section(t.algebroid(), j)));

  std::vector<ScalarField> comps(t.comps().size());
  for_each_multi_index(k, r, [&](const std::vector<int>& idx) {
    ScalarField v = anchor_apply(x, t.comp(idx));
    std::vector<int> sub = idx;
    for (int m = 0; m < k; ++m) {
      const int im = idx[m];
      for (int p = 0; p < r; ++p) {
        sub[m] = p;
        v = v - xb[im].comp(p) * t.comp(sub);
      }
      sub[m] = im;
    }
    comps[flat_index(idx, r)] = v;
  });
  return CoTensor(t.algebroid(), k, std::move(comps));
}

CoTensor sym_derivative(const SymBracket& sb, const CoTensor& t) {
  require_same(sb.algebroid(), t.algebroid(), "sym_derivative");
  const Algebroid& alg = *t.algebroid();
  const int r = alg.rank();
  const int k = t.degree();

  std::vector<ScalarField> comps(power(r, k + 1));
  for_each_multi_index(k + 1, r, [&](const std::vector<int>& idx) {
    ScalarField v = ScalarField::constant(0.0);
    std::vector<int> sub(k);
    for (int m = 0; m <= k; ++m) {
      for (int t2 = 0, w = 0; t2 <= k; ++t2)
        if (t2 != m) sub[w++] = idx[t2];
      v = v + basis_anchor_apply(alg, idx[m], t.comp(sub));
    }
    // bracket terms: slot m removed, the bracket replaces slot l
    for (int m = 0; m <= k; ++m)
      for (int l = m + 1; l <= k; ++l) {
        for (int t2 = 0, w = 0; t2 <= k; ++t2)
          if (t2 != m) sub[w++] = idx[t2];
        for (int p = 0; p < r; ++p) {
          sub[l - 1] = p;
          v = v - sb.s(p, idx[m], idx[l]) * t.comp(sub);
        }
      }
    comps[flat_index(idx, r)] = v;
  });
  return CoTensor(t.algebroid(), k + 1, std::move(comps));
}

ScalarField sym_derivative_on(const SymBracket& sb, const CoTensor& t,
                              std::span<const Section> args) {
  require_same(sb.algebroid(), t.algebroid(), "sym_derivative_on");
  const int k = t.degree();
  if (static_cast<int>(args.size()) != k + 1)
    throw DimensionError("sym_derivative_on: needs degree+1 section arguments");

  ScalarField v = ScalarField::constant(0.0);
  std::vector<Section> sub;
  sub.reserve(k);
  for (int m = 0; m <= k; ++m) {
    sub.clear();
    for (int t2 = 0; t2 <= k; ++t2)
      if (t2 != m) sub.push_back(args[t2]);
    v = v + anchor_apply(args[m], t(sub));
  }
  for (int m = 0; m <= k; ++m)
    for (int l = m + 1; l <= k; ++l) {
      sub.clear();
      for (int t2 = 0; t2 <= k; ++t2)
        if (t2 != m) sub.push_back(args[t2]);
      sub[l - 1] = sb.apply(args[m], args[l]);
      v = v - t(sub);
    }
  return v;
}

CoTensor sym_lie_derivative(const SymBracket& sb, const Section& x, const CoTensor& t) {
  require_same(sb.algebroid(), t.algebroid(), "sym_lie_derivative");
  require_same(x.algebroid(), t.algebroid(), "sym_lie_derivative");
  const Algebroid& alg = *t.algebroid();
  const int r = alg.rank();
  const int k = t.degree();

  std::vector<Section> xs;
  xs.reserve(r);
  for (int j = 0; j < r; ++j) xs.push_back(sb.apply(x, basis_section(t.algebroid(), j)));

  std::vector<ScalarField> comps(t.comps().size());
  for_each_multi_index(k, r, [&](const std::vector<int>& idx) {
    ScalarField v = anchor_apply(x, t.comp(idx));
    std::vector<int> sub = idx;
    for (int m = 0; m < k; ++m) {
      const int im = idx[m];
      for (int p = 0; p < r; ++p) {
        sub[m] = p;
        v = v - xs[im].comp(p) * t.comp(sub);
      }
      sub[m] = im;
    }
    comps[flat_index(idx, r)] = v;
  });
  return CoTensor(t.algebroid(), k, std::move(comps));
}

// ---------------------------------------------------------------------------
// Connection actions
// ---------------------------------------------------------------------------

Section covariant_derivative(const Connection& conn, const Section& x, const Section& y) {
  require_same(conn.algebroid(), x.algebroid(), "covariant_derivative");
  require_same(conn.algebroid(), y.algebroid(), "covariant_derivative");
  const int r = conn.rank();
  std::vector<ScalarField> comps(r);
  for (int k = 0; k < r; ++k) {
    ScalarField v = anchor_apply(x, y.comp(k));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) v = v + conn.gamma(k, i, j) * x.comp(i) * y.comp(j);
    comps[k] = v;
  }
  return Section(x.algebroid(), std::move(comps));
}

CoTensor covariant_derivative(const Connection& conn, const Section& x, const CoTensor& t) {
  require_same(conn.algebroid(), t.algebroid(), "covariant_derivative");
  require_same(x.algebroid(), t.algebroid(), "covariant_derivative");
  const int r = conn.rank();
  const int k = t.degree();

  // (nabla_X e_j)^p = X^i gamma(p,i,j)
  std::vector<ScalarField> nx(static_cast<std::size_t>(r) * r);
  for (int j = 0; j < r; ++j)
    for (int p = 0; p < r; ++p) {
      ScalarField v = ScalarField::constant(0.0);
      for (int i = 0; i < r; ++i) v = v + x.comp(i) * conn.gamma(p, i, j);
      nx[static_cast<std::size_t>(j) * r + p] = v;
    }

  std::vector<ScalarField> comps(t.comps().size());
  for_each_multi_index(k, r, [&](const std::vector<int>& idx) {
    ScalarField v = anchor_apply(x, t.comp(idx));
    std::vector<int> sub = idx;
    for (int m = 0; m < k; ++m) {
      const int im = idx[m];
      for (int p = 0; p < r; ++p) {
        sub[m] = p;
        v = v - nx[static_cast<std::size_t>(im) * r + p] * t.comp(sub);
      }
      sub[m] = im;
    }
    comps[flat_index(idx, r)] = v;
  });
  return CoTensor(t.algebroid(), k, std::move(comps));
}

CoTensor covariant_differential(const Connection& conn, const CoTensor& t) {
  require_same(conn.algebroid(), t.algebroid(), "covariant_differential");
  const Algebroid& alg = *t.algebroid();
  const int r = alg.rank();
  const int k = t.degree();

  std::vector<ScalarField> comps(power(r, k + 1));
  for_each_multi_index(k + 1, r, [&](const std::vector<int>& idx) {
    const int i0 = idx[0];
    std::vector<int> rest(idx.begin() + 1, idx.end());
    ScalarField v = basis_anchor_apply(alg, i0, t.comp(rest));
    std::vector<int> sub = rest;
    for (int m = 0; m < k; ++m) {
      const int im = rest[m];
      for (int p = 0; p < r; ++p) {
        sub[m] = p;
        v = v - conn.gamma(p, i0, im) * t.comp(sub);
      }
      sub[m] = im;
    }
    comps[flat_index(idx, r)] = v;
  });
  return CoTensor(t.algebroid(), k + 1, std::move(comps));
}

VecTensor endo_covariant_derivative(const Connection& conn, int i, const VecTensor& j) {
  require_same(conn.algebroid(), j.algebroid(), "endo_covariant_derivative");
  if (j.degree() != 1) throw DimensionError("endo_covariant_derivative: endomorphism expected");
  const Algebroid& alg = *j.algebroid();
  const int r = alg.rank();
  std::vector<ScalarField> comps(static_cast<std::size_t>(r) * r);
  for (int k = 0; k < r; ++k)
    for (int m = 0; m < r; ++m) {
      const int im[1] = {m};
      ScalarField v = basis_anchor_apply(alg, i, j.comp(k, im));
      for (int l = 0; l < r; ++l) {
        const int il[1] = {l}, imm[1] = {m};
        v = v + conn.gamma(k, i, l) * j.comp(l, imm) - j.comp(k, il) * conn.gamma(l, i, m);
      }
      comps[static_cast<std::size_t>(k) * r + m] = v;
    }
  return VecTensor(j.algebroid(), 1, std::move(comps));
}

VecTensor endo_covariant_derivative(const Connection& conn, const Section& x,
                                    const VecTensor& j) {
  const int r = conn.rank();
  VecTensor out = VecTensor::zero(j.algebroid(), 1);
  for (int i = 0; i < r; ++i) {
    VecTensor di = endo_covariant_derivative(conn, i, j);
    std::vector<ScalarField> comps(out.comps().size());
    for (std::size_t t = 0; t < comps.size(); ++t)
      comps[t] = out.comps()[t] + x.comp(i) * di.comps()[t];
    out = VecTensor(j.algebroid(), 1, std::move(comps));
  }
  return out;
}

SymBracket symmetric_product(const Connection& conn) {
  const int r = conn.rank();
  std::vector<ScalarField> s(static_cast<std::size_t>(r) * r * r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        s[(static_cast<std::size_t>(k) * r + i) * r + j] =
            conn.gamma(k, i, j) + conn.gamma(k, j, i);
  return SymBracket(conn.algebroid(), std::move(s));
}

VecTensor torsion(const Connection& conn) {
  const Algebroid& alg = *conn.algebroid();
  const int r = alg.rank();
  std::vector<ScalarField> comps(static_cast<std::size_t>(r) * r * r,
                                 ScalarField::constant(0.0));
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        ScalarField t = conn.gamma(k, i, j) - conn.gamma(k, j, i) - alg.c(k, i, j);
        comps[(static_cast<std::size_t>(k) * r + i) * r + j] = t;
        comps[(static_cast<std::size_t>(k) * r + j) * r + i] = -t;
      }
  return VecTensor(conn.algebroid(), 2, std::move(comps));
}

namespace {

VecTensor d_nabla_impl(const Connection& conn, const VecTensor& j, double second_sign) {
  if (j.degree() != 1) throw DimensionError("d_nabla: degree-1 vector tensor expected");
  require_same(conn.algebroid(), j.algebroid(), "d_nabla");
  const int r = conn.rank();
  std::vector<VecTensor> grad;
  grad.reserve(r);
  for (int i = 0; i < r; ++i) grad.push_back(endo_covariant_derivative(conn, i, j));

  std::vector<ScalarField> comps(static_cast<std::size_t>(r) * r * r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int l = 0; l < r; ++l) {
        const int il[1] = {l}, ii[1] = {i};
        comps[(static_cast<std::size_t>(k) * r + i) * r + l] =
            grad[i].comp(k, il) + second_sign * grad[l].comp(k, ii);
      }
  return VecTensor(j.algebroid(), 2, std::move(comps));
}

}  // namespace

VecTensor d_nabla_alt(const Connection& conn, const VecTensor& j) {
  return d_nabla_impl(conn, j, -1.0);
}

VecTensor d_nabla_sym(const Connection& conn, const VecTensor& j) {
  return d_nabla_impl(conn, j, 1.0);
}

}  // namespace algc
