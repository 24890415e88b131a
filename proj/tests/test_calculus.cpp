// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algc/fixtures.hpp"
#include "algc/metric.hpp"
#include "algc/sampling.hpp"
#include "test_util.hpp"

using namespace algc;
using algc::testutil::sup_comps_sampled;
using algc::testutil::value_at;

namespace {

CoTensor d_a_scalar(const AlgebroidPtr& alg, const ScalarField& f) {
  return exterior_derivative(CoTensor::scalar(alg, f));
}

}  // namespace

TEST_CASE("interior product") {
  const Fixture f1 = find_fixture("euclid2");
  const Metric& m = *f1.metric;

  // i_X g with g = delta and X = e1 is the covector (1, 0)
  const CoTensor w = interior(basis_section(f1.alg, 0), m.tensor());
  CHECK(value_at(w.comp_flat(0), {0.3, 0.7}) == 1.0);
  CHECK(value_at(w.comp_flat(1), {0.3, 0.7}) == 0.0);

  // i_X of the zero tensor vanishes
  const CoTensor z = interior(basis_section(f1.alg, 0), CoTensor::zero(f1.alg, 2));
  CHECK(value_at(z.comp_flat(0), {0.0, 0.0}) == 0.0);

  // hyperbolic: i_{e_x} g at (0,2) is (1/4, 0)
  const Fixture f2 = find_fixture("hyperbolic");
  const CoTensor w2 = interior(basis_section(f2.alg, 0), f2.metric->tensor());
  CHECK(value_at(w2.comp_flat(0), {0.0, 2.0}) == doctest::Approx(0.25));
  CHECK(value_at(w2.comp_flat(1), {0.0, 2.0}) == doctest::Approx(0.0));

  CHECK_THROWS_AS(interior(basis_section(f1.alg, 0), CoTensor::scalar(f1.alg, parse("x", f1.alg->coords()))),
                  DimensionError);
}

TEST_CASE("alternator and symmetrizer normalization") {
  const Fixture f1 = find_fixture("euclid2");

  // Sym fixes a symmetric tensor
  const CoTensor g = f1.metric->tensor();
  CHECK(sup_comps_sampled((symmetrize(g) - g).comps(), f1.alg->box(), 5) == 0.0);

  // Alt kills it
  CHECK(sup_comps_sampled(alternate(g).comps(), f1.alg->box(), 5) == 0.0);

  // Alt(e1 ⊗ e2) = 1/2 (e1⊗e2 - e2⊗e1)
  std::vector<ScalarField> comps(4, ScalarField::constant(0.0));
  comps[1] = ScalarField::constant(1.0);  // (0,1) slot
  const CoTensor t(f1.alg, 2, comps);
  const CoTensor a = alternate(t);
  CHECK(value_at(a.comp_flat(1), {0.0, 0.0}) == 0.5);
  CHECK(value_at(a.comp_flat(2), {0.0, 0.0}) == -0.5);
  CHECK(value_at(a.comp_flat(0), {0.0, 0.0}) == 0.0);
}

TEST_CASE("exterior derivative") {
  const Fixture f1 = find_fixture("euclid2");
  const auto& coords = f1.alg->coords();

  // of a constant function
  const CoTensor dc = d_a_scalar(f1.alg, ScalarField::constant(4.0));
  CHECK(sup_comps_sampled(dc.comps(), f1.alg->box(), 5) == 0.0);

  // of f = x*y: the covector (y, x)
  const CoTensor df = d_a_scalar(f1.alg, parse("x*y", coords));
  CHECK(value_at(df.comp_flat(0), {1.5, -2.0}) == doctest::Approx(-2.0));
  CHECK(value_at(df.comp_flat(1), {1.5, -2.0}) == doctest::Approx(1.5));

  // zero anchor: d^a f = 0, and on the e3-dual covector
  // (d^a eta)(e1,e2) = -eta([e1,e2]) = -1
  const Fixture f3 = find_fixture("so3");
  const CoTensor dzero = d_a_scalar(f3.alg, parse("t^2", f3.alg->coords()));
  CHECK(sup_comps_sampled(dzero.comps(), f3.alg->box(), 5) == 0.0);
  std::vector<ScalarField> eta3(3, ScalarField::constant(0.0));
  eta3[2] = ScalarField::constant(1.0);
  const CoTensor deta = exterior_derivative(CoTensor(f3.alg, 1, eta3));
  const int idx01[2] = {0, 1};
  CHECK(value_at(deta.comp(idx01), {0.0}) == doctest::Approx(-1.0));

  // rejects non-alternating input
  std::mt19937_64 rng(21);
  const CoTensor notalt = random_cotensor(rng, f1.alg, 2);
  CHECK_THROWS_AS(exterior_derivative(notalt), Error);
}

TEST_CASE("alternating Lie derivative") {
  // L^a along the zero section vanishes
  const Fixture f3 = find_fixture("so3");
  std::mt19937_64 rng(22);
  const CoTensor t3 = random_cotensor(rng, f3.alg, 2);
  const CoTensor l0 = lie_derivative(zero_section(f3.alg), t3);
  CHECK(sup_comps_sampled(l0.comps(), f3.alg->box(), 5) < 1e-14);

  // translations are isometries of the flat and hyperbolic metrics
  const Fixture f1 = find_fixture("euclid2");
  const CoTensor lg = lie_derivative(basis_section(f1.alg, 0), f1.metric->tensor());
  CHECK(sup_comps_sampled(lg.comps(), f1.alg->box(), 5) == 0.0);

  const Fixture f2 = find_fixture("hyperbolic");
  const CoTensor lh = lie_derivative(basis_section(f2.alg, 0), f2.metric->tensor());
  CHECK(sup_comps_sampled(lh.comps(), f2.alg->box(), 10) < 1e-14);
}

TEST_CASE("symmetrized derivative") {
  const Fixture f1 = find_fixture("euclid2");
  std::mt19937_64 rng(23);

  // degree 0: d^s f = d^a f
  const ScalarField f = random_polynomial(rng, 2);
  const SymBracket sb = random_sym_bracket(rng, f1.alg);
  const CoTensor dsf = sym_derivative(sb, CoTensor::scalar(f1.alg, f));
  CHECK(sup_comps_sampled((dsf - d_a_scalar(f1.alg, f)).comps(), f1.alg->box()) < 1e-13);

  // flat metric with the zero bracket: d^s g = 0
  const CoTensor dsg = sym_derivative(SymBracket::zero(f1.alg), f1.metric->tensor());
  CHECK(sup_comps_sampled(dsg.comps(), f1.alg->box(), 5) == 0.0);

  // metricity: d^s g = 0 for the Levi-Civita symmetric product on hyperbolic
  const Fixture f2 = find_fixture("hyperbolic");
  const SymBracket lc_sp = symmetric_product(levi_civita(*f2.metric));
  const CoTensor dsg2 = sym_derivative(lc_sp, f2.metric->tensor());
  CHECK(sup_comps_sampled(dsg2.comps(), f2.alg->box()) < 1e-12);
}

TEST_CASE("symmetric Lie derivative") {
  const Fixture f1 = find_fixture("euclid2");
  std::mt19937_64 rng(24);
  const SymBracket sb = random_sym_bracket(rng, f1.alg);

  const CoTensor t = random_cotensor(rng, f1.alg, 2);
  const CoTensor l0 = sym_lie_derivative(sb, zero_section(f1.alg), t);
  CHECK(sup_comps_sampled(l0.comps(), f1.alg->box(), 5) < 1e-14);

  // flat data, constant section, zero bracket: everything is parallel
  const CoTensor lg = sym_lie_derivative(SymBracket::zero(f1.alg), basis_section(f1.alg, 0),
                                         f1.metric->tensor());
  CHECK(sup_comps_sampled(lg.comps(), f1.alg->box(), 5) == 0.0);

  // L^s g = -L^a g for the metric symmetric bracket on hyperbolic
  const Fixture f2 = find_fixture("hyperbolic");
  const SymBracket sbs = sym_bracket_s(*f2.metric);
  const Section x = random_section(rng, f2.alg);
  const CoTensor sum = sym_lie_derivative(sbs, x, f2.metric->tensor()) +
                       lie_derivative(x, f2.metric->tensor());
  CHECK(sup_comps_sampled(sum.comps(), f2.alg->box()) < 1e-10);
}

TEST_CASE("covariant derivative of sections") {
  const Fixture f1 = find_fixture("euclid2");
  std::mt19937_64 rng(25);

  // flat connection: plain directional derivative of components
  const Connection flat0 = Connection::zero(f1.alg);
  const Section y = f1.sections.at("Y");  // (0, x)
  const Section d = covariant_derivative(flat0, basis_section(f1.alg, 0), y);
  CHECK(value_at(d.comp(0), {1.0, 1.0}) == 0.0);
  CHECK(value_at(d.comp(1), {1.0, 1.0}) == doctest::Approx(1.0));

  // hyperbolic Levi-Civita: nabla_{e_x} e_x = (0, 1/y)
  const Fixture f2 = find_fixture("hyperbolic");
  const Connection lc = levi_civita(*f2.metric);
  const Section dxx = covariant_derivative(lc, basis_section(f2.alg, 0), basis_section(f2.alg, 0));
  CHECK(value_at(dxx.comp(0), {0.0, 2.0}) == doctest::Approx(0.0));
  CHECK(value_at(dxx.comp(1), {0.0, 2.0}) == doctest::Approx(0.5));

  // tensoriality in the direction
  const Connection conn = random_connection(rng, f1.alg);
  const Section a = random_section(rng, f1.alg), b = random_section(rng, f1.alg);
  const ScalarField f = random_polynomial(rng, 2);
  const Section lhs = covariant_derivative(conn, f * a, b);
  const Section rhs = f * covariant_derivative(conn, a, b);
  CHECK(sup_comps_sampled((lhs - rhs).comps(), f1.alg->box()) < 1e-12);
}

TEST_CASE("covariant derivative on tensors") {
  const Fixture f1 = find_fixture("euclid2");
  std::mt19937_64 rng(26);

  // parallel tensor: delta metric, zero connection
  const CoTensor par = covariant_derivative(Connection::zero(f1.alg),
                                            random_section(rng, f1.alg), f1.metric->tensor());
  CHECK(sup_comps_sampled(par.comps(), f1.alg->box(), 5) == 0.0);

  // degree 0: nabla_X f = rho(X)(f)
  const ScalarField f = random_polynomial(rng, 2);
  const Section x = random_section(rng, f1.alg);
  const Connection conn = random_connection(rng, f1.alg);
  const CoTensor nf = covariant_derivative(conn, x, CoTensor::scalar(f1.alg, f));
  CHECK(sup_comps_sampled({nf.comp_flat(0) - anchor_apply(x, f)}, f1.alg->box()) < 1e-13);

  // compatibility identity for a skew-torsion connection on hyperbolic
  const Fixture f2 = find_fixture("hyperbolic");
  const Connection lc = levi_civita(*f2.metric);
  const SymBracket sbs = sym_bracket_s(*f2.metric);
  const Section x2 = random_section(rng, f2.alg);
  const CoTensor lhs = interior(x2, covariant_differential(lc, f2.metric->tensor()));
  const CoTensor rhs = 0.5 * (lie_derivative(x2, f2.metric->tensor()) +
                              sym_lie_derivative(sbs, x2, f2.metric->tensor()));
  CHECK(sup_comps_sampled((lhs - rhs).comps(), f2.alg->box()) < 1e-10);
}

TEST_CASE("symmetric product of a connection") {
  const Fixture f1 = find_fixture("euclid2");
  std::mt19937_64 rng(27);

  CHECK(sup_comps_sampled(symmetric_product(Connection::zero(f1.alg)).apply(
                              basis_section(f1.alg, 0), basis_section(f1.alg, 1)).comps(),
                          f1.alg->box(), 3) == 0.0);

  // torsion-free: <X:Y> = 2 nabla_X Y - [X,Y]
  const SymBracket sp_random = random_sym_bracket(rng, f1.alg);
  const Connection tf = from_decomposition(sp_random, VecTensor::zero(f1.alg, 2));
  const SymBracket sp = symmetric_product(tf);
  const Section x = random_section(rng, f1.alg), y = random_section(rng, f1.alg);
  const Section lhs = sp.apply(x, y);
  const Section rhs = 2.0 * covariant_derivative(tf, x, y) - bracket(x, y);
  CHECK(sup_comps_sampled((lhs - rhs).comps(), f1.alg->box()) < 1e-11);

  // hyperbolic Levi-Civita: s^y_xx = 2/y
  const Fixture f2 = find_fixture("hyperbolic");
  const SymBracket sp2 = symmetric_product(levi_civita(*f2.metric));
  CHECK(value_at(sp2.s(1, 0, 0), {0.0, 2.0}) == doctest::Approx(1.0));
  CHECK(value_at(sp2.s(1, 0, 0), {0.0, 0.8}) == doctest::Approx(2.5));
}

TEST_CASE("torsion tensor") {
  // Levi-Civita is torsion-free on every metric fixture
  for (const char* name : {"euclid2", "hyperbolic", "so3", "twisted-j"}) {
    const Fixture fx = find_fixture(name);
    const VecTensor t = torsion(levi_civita(*fx.metric));
    CHECK_MESSAGE(sup_comps_sampled(t.comps(), fx.alg->box(), 10) < 1e-12, name);
  }

  // zero connection on so3: T^k_{ij} = -c^k_{ij}
  const Fixture f3 = find_fixture("so3");
  const VecTensor t3 = torsion(Connection::zero(f3.alg));
  const int idx01[2] = {0, 1};
  CHECK(value_at(t3.comp(2, idx01), {0.0}) == doctest::Approx(-1.0));

  // T(X,X) = 0 exactly
  std::mt19937_64 rng(28);
  const Fixture f1 = find_fixture("euclid2");
  const VecTensor tr = torsion(random_connection(rng, f1.alg));
  const Section x = random_section(rng, f1.alg);
  CHECK(sup_comps_sampled(vec2_apply(tr, x, x).comps(), f1.alg->box()) < 1e-12);
}

TEST_CASE("d_nabla operators on endomorphisms") {
  // constant J, flat connection: both vanish
  const Fixture f4 = find_fixture("kahler-flat");
  const Connection lc4 = levi_civita(*f4.metric);
  const VecTensor ds4 = d_nabla_sym(lc4, f4.complex_structure->endo());
  const VecTensor da4 = d_nabla_alt(lc4, f4.complex_structure->endo());
  CHECK(sup_comps_sampled(ds4.comps(), f4.alg->box(), 5) == 0.0);
  CHECK(sup_comps_sampled(da4.comps(), f4.alg->box(), 5) == 0.0);

  // twisted J: torsion of nabla^J equals -J ∘ (d^a_nabla J)
  const Fixture f5 = find_fixture("twisted-j");
  const Connection lc5 = levi_civita(*f5.metric);
  const AlmostComplex& ac = *f5.complex_structure;
  const Connection nj = nabla_j(lc5, ac);
  const VecTensor lhs = torsion(nj);
  const VecTensor rhs = endo_compose_vec2(ac.endo(), d_nabla_alt(lc5, ac.endo()));
  CHECK(sup_comps_sampled((lhs + rhs).comps(), f5.alg->box(), 10) < 1e-10);

  CHECK_THROWS_AS(d_nabla_sym(lc5, torsion(nj)), DimensionError);  // degree-2 input
}

TEST_CASE("cartan identities on seeded random data") {
  for (const char* name : {"euclid2", "so3", "hyperbolic"}) {
    const Fixture fx = find_fixture(name);
    std::mt19937_64 rng(mix_seed(29, name));
    for (int k = 1; k <= 3; ++k) {
      const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
      const CoTensor eta = random_alternating(rng, fx.alg, k);
      const CoTensor c1 = lie_derivative(x, eta) -
                          interior(x, exterior_derivative(eta)) -
                          exterior_derivative(interior(x, eta));
      CHECK_MESSAGE(sup_comps_sampled(c1.comps(), fx.alg->box()) < 1e-8, name << " k=" << k);

      const CoTensor ten = random_cotensor(rng, fx.alg, k);
      const CoTensor c2 = lie_derivative(x, interior(y, ten)) -
                          interior(y, lie_derivative(x, ten)) -
                          interior(bracket(x, y), ten);
      CHECK_MESSAGE(sup_comps_sampled(c2.comps(), fx.alg->box()) < 1e-8, name << " k=" << k);

      // symmetric Cartan, evaluated on explicit section tuples
      const SymBracket sb = random_sym_bracket(rng, fx.alg);
      std::vector<Section> args;
      for (int i = 0; i < k; ++i) args.push_back(random_section(rng, fx.alg));
      std::vector<Section> x_args = args;
      x_args.insert(x_args.begin(), x);
      const ScalarField s1 = sym_lie_derivative(sb, x, ten)(args) -
                             sym_derivative_on(sb, ten, x_args) +
                             sym_derivative_on(sb, interior(x, ten), args);
      CHECK_MESSAGE(sup_comps_sampled({s1}, fx.alg->box()) < 1e-8, name << " k=" << k);

      const CoTensor s2 = sym_lie_derivative(sb, x, interior(y, ten)) -
                          interior(y, sym_lie_derivative(sb, x, ten)) -
                          interior(sb.apply(x, y), ten);
      CHECK_MESSAGE(sup_comps_sampled(s2.comps(), fx.alg->box()) < 1e-8, name << " k=" << k);
    }
  }
}

TEST_CASE("derivative operators against the covariant differential") {
  const Fixture f2 = find_fixture("hyperbolic");
  std::mt19937_64 rng(30);
  for (int k = 1; k <= 2; ++k) {
    // torsion-free connection
    const SymBracket sym_part = random_sym_bracket(rng, f2.alg);
    const Connection tf = from_decomposition(sym_part, VecTensor::zero(f2.alg, 2));
    const CoTensor eta = random_alternating(rng, f2.alg, k);
    const CoTensor lhs = exterior_derivative(eta);
    const CoTensor rhs =
        static_cast<double>(k + 1) * alternate(covariant_differential(tf, eta));
    CHECK(sup_comps_sampled((lhs - rhs).comps(), f2.alg->box()) < 1e-8);

    const Connection any = random_connection(rng, f2.alg);
    const CoTensor sym_eta = random_symmetric(rng, f2.alg, k);
    const CoTensor lhs2 = sym_derivative(symmetric_product(any), sym_eta);
    const CoTensor rhs2 =
        static_cast<double>(k + 1) * symmetrize(covariant_differential(any, sym_eta));
    CHECK(sup_comps_sampled((lhs2 - rhs2).comps(), f2.alg->box()) < 1e-8);
  }
}
