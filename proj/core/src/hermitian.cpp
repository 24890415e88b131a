// SPDX-License-Identifier: Apache-2.0
#include "algc/hermitian.hpp"

#include <cmath>
#include <utility>

namespace algc {

namespace {

void require_same(const AlgebroidPtr& a, const AlgebroidPtr& b, const char* who) {
  if (!a || !b || a != b) throw DimensionError(std::string(who) + ": algebroid mismatch");
}

}  // namespace

AlmostComplex::AlmostComplex(VecTensor j) : j_(std::move(j)) {
  if (j_.degree() != 1) throw DimensionError("AlmostComplex: endomorphism field expected");
  const int r = rank();
  constexpr double kTol = 1e-10;
  for (const auto& p : probe_points(algebroid()->box())) {
    EvalCache cache(p);
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i) {
        double acc = 0.0;
        for (int m = 0; m < r; ++m) acc += cache.value(comp(k, m)) * cache.value(comp(m, i));
        const double want = k == i ? -1.0 : 0.0;
        if (std::fabs(acc - want) > kTol)
          throw Error("AlmostComplex: J∘J != -id at a probe point");
      }
  }
}

double orthogonality_defect(const Metric& m, const AlmostComplex& ac) {
  require_same(m.algebroid(), ac.algebroid(), "orthogonality_defect");
  const int r = m.rank();
  double worst = 0.0;
  for (const auto& p : probe_points(m.algebroid()->box())) {
    EvalCache cache(p);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        double acc = 0.0;
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b)
            acc += cache.value(ac.comp(a, i)) * cache.value(m.g(a, b)) *
                   cache.value(ac.comp(b, j));
        worst = std::max(worst, std::fabs(acc - cache.value(m.g(i, j))));
      }
  }
  return worst;
}

CoTensor kahler_form(const Metric& m, const AlmostComplex& ac) {
  require_same(m.algebroid(), ac.algebroid(), "kahler_form");
  if (orthogonality_defect(m, ac) > 1e-10)
    throw Error("kahler_form: J is not orthogonal with respect to g");
  const int r = m.rank();
  std::vector<ScalarField> comps(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      ScalarField v = ScalarField::constant(0.0);
      for (int mm = 0; mm < r; ++mm) v = v + ac.comp(mm, i) * m.g(mm, j);
      comps[static_cast<std::size_t>(i) * r + j] = v;
    }
  return CoTensor(m.algebroid(), 2, std::move(comps));
}

VecTensor nijenhuis(const AlmostComplex& ac) {
  const AlgebroidPtr& alg = ac.algebroid();
  const int r = ac.rank();
  std::vector<ScalarField> comps(static_cast<std::size_t>(r) * r * r,
                                 ScalarField::constant(0.0));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const Section ei = basis_section(alg, i), ej = basis_section(alg, j);
      const Section jei = ac.apply(ei), jej = ac.apply(ej);
      const Section nij = ac.apply(bracket(jei, ej)) + ac.apply(bracket(ei, jej)) +
                          bracket(ei, ej) - bracket(jei, jej);
      for (int k = 0; k < r; ++k) {
        comps[(static_cast<std::size_t>(k) * r + i) * r + j] = nij.comp(k);
        comps[(static_cast<std::size_t>(k) * r + j) * r + i] = -nij.comp(k);
      }
    }
  return VecTensor(alg, 2, std::move(comps));
}

AlgebroidPtr tmj_algebroid(const AlmostComplex& ac) {
  const AlgebroidPtr& alg = ac.algebroid();
  const int n = alg->base_dim();
  const int r = alg->rank();

  // anchor: rho_J(a,i) = rho(a,m) J(m,i)
  std::vector<ScalarField> anchor(static_cast<std::size_t>(n) * r);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < r; ++i) {
      ScalarField v = ScalarField::constant(0.0);
      for (int m = 0; m < r; ++m) v = v + alg->rho(a, m) * ac.comp(m, i);
      anchor[static_cast<std::size_t>(a) * r + i] = v;
    }

  // structure: [[e_i,e_j]]^J = [Je_i, e_j] + [e_i, Je_j] − J[e_i,e_j]
  std::vector<ScalarField> structure(static_cast<std::size_t>(r) * r * r,
                                     ScalarField::constant(0.0));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const Section ei = basis_section(alg, i), ej = basis_section(alg, j);
      const Section br = bracket(ac.apply(ei), ej) + bracket(ei, ac.apply(ej)) -
                         ac.apply(bracket(ei, ej));
      for (int k = 0; k < r; ++k) {
        structure[(static_cast<std::size_t>(k) * r + i) * r + j] = br.comp(k);
        structure[(static_cast<std::size_t>(k) * r + j) * r + i] = -br.comp(k);
      }
    }
  return make_algebroid(n, r, alg->coords(), std::move(anchor), std::move(structure),
                        alg->box());
}

TmjContext make_tmj_context(const Metric& m, const AlmostComplex& ac) {
  require_same(m.algebroid(), ac.algebroid(), "make_tmj_context");
  AlgebroidPtr alg_j = tmj_algebroid(ac);
  Metric metric_j = m.with_algebroid(alg_j);
  SymBracket sb_base = sym_bracket_s(m);
  SymBracket sb_j = sym_bracket_s(metric_j);
  return TmjContext{std::move(alg_j), std::move(metric_j), std::move(sb_base),
                    std::move(sb_j)};
}

CoTensor compose_endo(const CoTensor& omega, const AlmostComplex& ac) {
  if (omega.degree() != 1) throw DimensionError("compose_endo: covector expected");
  const int r = ac.rank();
  std::vector<ScalarField> comps(r);
  for (int i = 0; i < r; ++i) {
    ScalarField v = ScalarField::constant(0.0);
    for (int m = 0; m < r; ++m) {
      const int mm[1] = {m};
      v = v + ac.comp(m, i) * omega.comp_flat(flat_index(mm, r));
    }
    comps[i] = v;
  }
  return CoTensor(omega.algebroid(), 1, std::move(comps));
}

double sym_bracket_J_relation(const TmjContext& ctx, const Metric& m,
                              const AlmostComplex& ac, const Section& x, const Section& y,
                              const std::vector<double>& p) {
  // left side lives in the anchor-J algebroid
  const Section xj = x.with_algebroid(ctx.alg_j);
  const Section yj = y.with_algebroid(ctx.alg_j);
  const Section lhs_j = ctx.sb_j.apply(xj, yj);
  const Section lhs = lhs_j.with_algebroid(x.algebroid());

  const Section jx = ac.apply(x), jy = ac.apply(y);
  const Section sxy = ctx.sb_base.apply(x, y);
  const CoTensor twist = compose_endo(flat(m, sxy), ac);
  const Section rhs =
      ctx.sb_base.apply(jx, y) + ctx.sb_base.apply(x, jy) + sharp(m, twist);
  return sup_norm(lhs - rhs, p);
}

double sym_bracket_J_relation(const Metric& m, const AlmostComplex& ac, const Section& x,
                              const Section& y, const std::vector<double>& p) {
  return sym_bracket_J_relation(make_tmj_context(m, ac), m, ac, x, y, p);
}

BilinearSectionMap p_operator(AlgebroidPtr alg_rho, const AlmostComplex& ac) {
  if (!alg_rho || alg_rho->rank() != ac.rank())
    throw DimensionError("p_operator: rank mismatch");
  const VecTensor j = ac.endo().with_algebroid(alg_rho);
  return [j](const Section& x, const Section& y) {
    const Section t = bracket(x, endo_apply(j, y)) + bracket(y, endo_apply(j, x));
    return -endo_apply(j, t);
  };
}

BilinearSectionMap q_operator(const SymBracket& sb, const AlmostComplex& ac) {
  if (sb.rank() != ac.rank()) throw DimensionError("q_operator: rank mismatch");
  const VecTensor j = ac.endo().with_algebroid(sb.algebroid());
  return [sb, j](const Section& x, const Section& y) {
    const Section t = sb.apply(x, endo_apply(j, y)) + sb.apply(y, endo_apply(j, x));
    return -endo_apply(j, t);
  };
}

SymBracket pq_bracket(AlgebroidPtr alg_rho, const SymBracket& sb, const AlmostComplex& ac) {
  const int r = alg_rho->rank();
  auto p_op = p_operator(alg_rho, ac);
  auto q_op = q_operator(sb, ac);
  std::vector<ScalarField> s(static_cast<std::size_t>(r) * r * r,
                             ScalarField::constant(0.0));
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      const Section ei = basis_section(alg_rho, i), ej = basis_section(alg_rho, j);
      const Section sij = 0.5 * (p_op(ei, ej) + q_op(ei, ej));
      for (int k = 0; k < r; ++k) {
        s[(static_cast<std::size_t>(k) * r + i) * r + j] = sij.comp(k);
        s[(static_cast<std::size_t>(k) * r + j) * r + i] = sij.comp(k);
      }
    }
  return SymBracket(std::move(alg_rho), std::move(s));
}

Connection nabla_j(const Connection& lc, const AlmostComplex& ac) {
  require_same(lc.algebroid(), ac.algebroid(), "nabla_j");
  const AlgebroidPtr& alg = lc.algebroid();
  const int r = lc.rank();
  std::vector<ScalarField> gamma(static_cast<std::size_t>(r) * r * r);
  for (int i = 0; i < r; ++i) {
    const Section ei = basis_section(alg, i);
    for (int j = 0; j < r; ++j) {
      const Section jej = ac.apply(basis_section(alg, j));
      const Section v = -ac.apply(covariant_derivative(lc, ei, jej));
      for (int k = 0; k < r; ++k)
        gamma[(static_cast<std::size_t>(k) * r + i) * r + j] = v.comp(k);
    }
  }
  return Connection(alg, std::move(gamma));
}

Connection first_canonical(const Connection& lc, const Connection& nj) {
  require_same(lc.algebroid(), nj.algebroid(), "first_canonical");
  const int r = lc.rank();
  std::vector<ScalarField> gamma(static_cast<std::size_t>(r) * r * r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        gamma[(static_cast<std::size_t>(k) * r + i) * r + j] =
            0.5 * (lc.gamma(k, i, j) + nj.gamma(k, i, j));
  return Connection(lc.algebroid(), std::move(gamma));
}

double nearly_kahler_residual(const Connection& lc, const AlmostComplex& ac,
                              std::span<const std::vector<double>> points) {
  const VecTensor d = d_nabla_sym(lc, ac.endo());
  double worst = 0.0;
  for (const auto& p : points) {
    EvalCache cache(p);
    for (const auto& comp : d.comps())
      worst = std::max(worst, std::fabs(cache.value(comp)));
  }
  return worst;
}

double torsion_identity_residual(const Connection& lc, const AlmostComplex& ac,
                                 const Section& x, const Section& y,
                                 const std::vector<double>& p) {
  const VecTensor tj = torsion(nabla_j(lc, ac));
  const VecTensor nj = nijenhuis(ac);
  const VecTensor d = d_nabla_sym(lc, ac.endo());
  const Section jx = ac.apply(x), jy = ac.apply(y);
  const Section resid = 2.0 * vec2_apply(tj, x, y) + vec2_apply(nj, x, y) -
                        vec2_apply(d, x, jy) + vec2_apply(d, jx, y);
  return sup_norm(resid, p);
}

}  // namespace algc
