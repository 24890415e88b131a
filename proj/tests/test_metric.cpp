// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algc/fixtures.hpp"
#include "algc/sampling.hpp"
#include "test_util.hpp"

using namespace algc;
using algc::testutil::sup_comps_sampled;
using algc::testutil::value_at;

namespace {

std::vector<ScalarField> gamma_diff(const Connection& a, const Connection& b) {
  std::vector<ScalarField> out;
  const int r = a.rank();
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) out.push_back(a.gamma(k, i, j) - b.gamma(k, i, j));
  return out;
}

}  // namespace

TEST_CASE("musical isomorphisms") {
  const Fixture f1 = find_fixture("euclid2");
  const Metric& m = *f1.metric;

  // delta metric: flat and sharp are the component identity
  const Section e0 = basis_section(f1.alg, 0);
  const CoTensor w = flat(m, e0);
  CHECK(value_at(w.comp_flat(0), {0.1, 0.2}) == 1.0);
  const Section back = sharp(m, w);
  CHECK(value_at(back.comp(0), {0.1, 0.2}) == doctest::Approx(1.0));

  // hyperbolic: sharp of (1,0) at (0,2) is (4,0)
  const Fixture f2 = find_fixture("hyperbolic");
  std::vector<ScalarField> comps = {ScalarField::constant(1.0), ScalarField::constant(0.0)};
  const Section s = sharp(*f2.metric, CoTensor(f2.alg, 1, comps));
  CHECK(value_at(s.comp(0), {0.0, 2.0}) == doctest::Approx(4.0));
  CHECK(value_at(s.comp(1), {0.0, 2.0}) == doctest::Approx(0.0));

  // round trip on random sections
  std::mt19937_64 rng(31);
  for (const char* name : {"hyperbolic", "twisted-j"}) {
    const Fixture fx = find_fixture(name);
    const Section x = random_section(rng, fx.alg);
    const Section rt = sharp(*fx.metric, flat(*fx.metric, x));
    CHECK(sup_comps_sampled((rt - x).comps(), fx.alg->box()) < 1e-10);
  }
}

TEST_CASE("metric constructor rejects asymmetric input") {
  const Fixture f1 = find_fixture("euclid2");
  std::vector<ScalarField> comps(4, ScalarField::constant(0.0));
  comps[0] = ScalarField::constant(1.0);
  comps[1] = ScalarField::constant(0.5);  // g(0,1) != g(1,0)
  comps[3] = ScalarField::constant(1.0);
  CHECK_THROWS_AS(Metric(CoTensor(f1.alg, 2, comps)), Error);
}

TEST_CASE("singular metric aborts with a diagnostic naming the point") {
  const std::vector<std::string> coords = {"x"};
  auto alg = make_algebroid(1, 1, coords, {ScalarField::constant(1.0)},
                            {ScalarField::constant(0.0)}, DomainBox{{-1.0}, {1.0}});
  // g = x^2 is singular at x = 0 but fine at the probe points... the probe
  // points include the box center 0, so construction itself must throw.
  CHECK_THROWS_AS(Metric(CoTensor(alg, 2, {parse("x^2", coords)})), SingularMatrixError);

  // g = 1 + x is fine at the probes but singular at x = -1 + eps
  const Metric m(CoTensor(alg, 2, {parse("1 + x", coords)}));
  const Section e0 = basis_section(alg, 0);
  CHECK_THROWS_AS(
      value_at(sharp(m, flat(m, e0)).comp(0), std::vector<double>{-1.0 + 1e-12}),
      SingularMatrixError);
}

TEST_CASE("torsion 3-form") {
  const Fixture f2 = find_fixture("hyperbolic");
  const Metric& m = *f2.metric;

  // Levi-Civita: identically zero
  const CoTensor t0 = torsion_3form(m, levi_civita(m));
  CHECK(sup_comps_sampled(t0.comps(), f2.alg->box(), 10) < 1e-12);
  CHECK(totally_skew_residual(m, levi_civita(m)) < 1e-12);

  // construction round trip on so3's volume form
  const Fixture f3 = find_fixture("so3");
  const Connection conn = skew_torsion_connection(*f3.metric, *f3.torsion_form);
  const CoTensor tg = torsion_3form(*f3.metric, conn);
  CHECK(sup_comps_sampled((tg - *f3.torsion_form).comps(), f3.alg->box(), 5) < 1e-12);
  CHECK(totally_skew_residual(*f3.metric, conn) < 1e-12);

  // a generic connection has a non-skew torsion 3-form
  std::mt19937_64 rng(32);
  const Connection generic = random_connection(rng, f3.alg);
  CHECK(totally_skew_residual(*f3.metric, generic) > 1e-3);
}

TEST_CASE("metric symmetric bracket coefficients") {
  // delta metric on the flat plane: identically zero
  const Fixture f1 = find_fixture("euclid2");
  const SymBracket s1 = sym_bracket_s(*f1.metric);
  double worst = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        worst = std::max(worst, sup_comps_sampled({s1.s(k, i, j)}, f1.alg->box(), 5));
  CHECK(worst == 0.0);

  // bi-invariant metric on so3: s = 0, so Levi-Civita is half the bracket
  const Fixture f3 = find_fixture("so3");
  const SymBracket s3 = sym_bracket_s(*f3.metric);
  worst = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        worst = std::max(worst, sup_comps_sampled({s3.s(k, i, j)}, f3.alg->box(), 3));
  CHECK(worst < 1e-13);
  const Connection lc3 = levi_civita(*f3.metric);
  CHECK(value_at(lc3.gamma(2, 0, 1), {0.0}) == doctest::Approx(0.5));

  // hyperbolic: s^y_xx = 2/y
  const Fixture f2 = find_fixture("hyperbolic");
  const SymBracket s2 = sym_bracket_s(*f2.metric);
  CHECK(value_at(s2.s(1, 0, 0), {0.3, 2.0}) == doctest::Approx(1.0));
  CHECK(value_at(s2.s(1, 0, 0), {0.3, 0.5}) == doctest::Approx(4.0));
}

TEST_CASE("levi_civita matches the Koszul oracle") {
  for (const char* name : {"euclid2", "hyperbolic", "so3", "twisted-j", "tmj-twisted"}) {
    const Fixture fx = find_fixture(name);
    const Connection lc = levi_civita(*fx.metric);
    const Connection oracle = koszul_oracle(*fx.metric);
    CHECK_MESSAGE(sup_comps_sampled(gamma_diff(lc, oracle), fx.alg->box()) < 1e-9, name);
    CHECK_MESSAGE(sup_comps_sampled(torsion(oracle).comps(), fx.alg->box(), 10) < 1e-10, name);
    CHECK_MESSAGE(sup_comps_sampled(covariant_differential(lc, fx.metric->tensor()).comps(),
                                    fx.alg->box(), 10) < 1e-9,
                  name);
  }

  // hyperbolic coefficients in closed form
  const Fixture f2 = find_fixture("hyperbolic");
  const Connection lc = levi_civita(*f2.metric);
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; ++t) {
    const auto p = f2.alg->box().sample(rng);
    const double y = p[1];
    EvalCache cache(p);
    CHECK(cache.value(lc.gamma(1, 0, 0)) == doctest::Approx(1.0 / y).epsilon(1e-8));
    CHECK(cache.value(lc.gamma(0, 0, 1)) == doctest::Approx(-1.0 / y).epsilon(1e-8));
    CHECK(cache.value(lc.gamma(1, 1, 1)) == doctest::Approx(-1.0 / y).epsilon(1e-8));
    CHECK(std::fabs(cache.value(lc.gamma(0, 0, 0))) < 1e-12);
  }
}

TEST_CASE("skew-torsion connection") {
  // H = 0 reproduces Levi-Civita
  const Fixture f2 = find_fixture("hyperbolic");
  const Connection with_zero = skew_torsion_connection(*f2.metric, CoTensor::zero(f2.alg, 3));
  CHECK(sup_comps_sampled(gamma_diff(with_zero, levi_civita(*f2.metric)), f2.alg->box()) <
        1e-13);

  // so3 with the volume form: gamma^k_{ij} = epsilon_{ijk}
  const Fixture f3 = find_fixture("so3");
  const Connection c3 = skew_torsion_connection(*f3.metric, *f3.torsion_form);
  CHECK(value_at(c3.gamma(2, 0, 1), {0.0}) == doctest::Approx(1.0));
  CHECK(value_at(c3.gamma(2, 1, 0), {0.0}) == doctest::Approx(-1.0));

  // metric for any admissible H, here the bundled twisted-j 3-form
  const Fixture f5 = find_fixture("twisted-j");
  const Connection c5 = skew_torsion_connection(*f5.metric, *f5.torsion_form);
  CHECK(sup_comps_sampled(covariant_differential(c5, f5.metric->tensor()).comps(),
                          f5.alg->box(), 10) < 1e-9);

  // rejects a non-alternating 3-tensor
  std::mt19937_64 rng(34);
  CHECK_THROWS_AS(skew_torsion_connection(*f3.metric, random_cotensor(rng, f3.alg, 3)),
                  Error);
}

TEST_CASE("curly bracket") {
  // flat fixture with the zero bracket: {.,.}^s = 0
  const Fixture f1 = find_fixture("euclid2");
  const SymBracket curly0 = curly_bracket_s(*f1.metric, SymBracket::zero(f1.alg));
  std::mt19937_64 rng(35);
  const Section x0 = random_section(rng, f1.alg), y0 = random_section(rng, f1.alg);
  // with the zero bracket, L^s has no bracket term and d^s f is the anchored
  // gradient; for the flat delta metric the formula collapses to zero
  // coefficients, so the bracket reduces to its Leibniz expansion terms
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(sup_comps_sampled({curly0.s(k, i, j)}, f1.alg->box(), 3) == 0.0);

  // hyperbolic: {X,Y}^s = <X:Y>^s and the affine relation holds
  const Fixture f2 = find_fixture("hyperbolic");
  const SymBracket sbs = sym_bracket_s(*f2.metric);
  const SymBracket curly = curly_bracket_s(*f2.metric, sbs);
  const SymBracket lc_sp = symmetric_product(levi_civita(*f2.metric));
  for (int t = 0; t < 5; ++t) {
    const Section x = random_section(rng, f2.alg), y = random_section(rng, f2.alg);
    const Section lhs = curly.apply(x, y);
    const Section relation = 2.0 * lc_sp.apply(x, y) - sbs.apply(x, y);
    CHECK(sup_comps_sampled((lhs - relation).comps(), f2.alg->box()) < 1e-8);
    CHECK(sup_comps_sampled((lhs - sbs.apply(x, y)).comps(), f2.alg->box()) < 1e-8);
  }
}

TEST_CASE("identity residuals for arbitrary connections") {
  std::mt19937_64 rng(36);

  // Levi-Civita on hyperbolic
  const Fixture f2 = find_fixture("hyperbolic");
  {
    const Connection lc = levi_civita(*f2.metric);
    const Section x = random_section(rng, f2.alg), y = random_section(rng, f2.alg),
                  z = random_section(rng, f2.alg);
    for (int t = 0; t < 5; ++t) {
      const auto p = f2.alg->box().sample(rng);
      const auto [r1, r2] = thm4_residuals(*f2.metric, lc, x, y, z, p);
      CHECK(r1 < 1e-8);
      CHECK(r2 < 1e-8);
    }
  }

  // random connections on the flat plane
  const Fixture f1 = find_fixture("euclid2");
  for (int t = 0; t < 3; ++t) {
    const Connection conn = random_connection(rng, f1.alg);
    const Section x = random_section(rng, f1.alg), y = random_section(rng, f1.alg),
                  z = random_section(rng, f1.alg);
    const auto p = f1.alg->box().sample(rng);
    const auto [r1, r2] = thm4_residuals(*f1.metric, conn, x, y, z, p);
    CHECK(r1 < 1e-7);
    CHECK(r2 < 1e-7);
  }

  // reduced form for a metric skew-torsion connection on so3
  const Fixture f3 = find_fixture("so3");
  const Connection skew = skew_torsion_connection(*f3.metric, *f3.torsion_form);
  for (int t = 0; t < 3; ++t) {
    const Section x = random_section(rng, f3.alg), y = random_section(rng, f3.alg);
    const auto p = f3.alg->box().sample(rng);
    CHECK(corollary4_residual(*f3.metric, skew, x, y, p) < 1e-8);
  }
}

TEST_CASE("compatibility criterion is two-sided") {
  const Fixture f2 = find_fixture("hyperbolic");
  const Metric& m = *f2.metric;
  std::mt19937_64 rng(37);

  // positive side: the metric symmetric bracket satisfies L^a g = -L^s g
  const SymBracket sbs = sym_bracket_s(m);
  for (int t = 0; t < 10; ++t) {
    const Section x = random_section(rng, f2.alg);
    const CoTensor sum =
        lie_derivative(x, m.tensor()) + sym_lie_derivative(sbs, x, m.tensor());
    CHECK(sup_comps_sampled(sum.comps(), f2.alg->box()) < 1e-8);
  }

  // negative side: perturbing one coefficient by 1e-2 breaks it
  const int r = f2.alg->rank();
  std::vector<ScalarField> s(static_cast<std::size_t>(r) * r * r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        s[(static_cast<std::size_t>(k) * r + i) * r + j] = sbs.s(k, i, j);
  s[0] = s[0] + ScalarField::constant(1e-2);  // s(0,0,0)
  const SymBracket perturbed(f2.alg, std::move(s));
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Section x = random_section(rng, f2.alg);
    const CoTensor sum =
        lie_derivative(x, m.tensor()) + sym_lie_derivative(perturbed, x, m.tensor());
    worst = std::max(worst, sup_comps_sampled(sum.comps(), f2.alg->box()));
  }
  CHECK(worst > 1e-3);
}

TEST_CASE("decomposition connections satisfy the compatibility identity") {
  const Fixture f5 = find_fixture("twisted-j");
  const Metric& m = *f5.metric;
  std::mt19937_64 rng(38);
  for (int t = 0; t < 3; ++t) {
    const SymBracket sb = random_sym_bracket(rng, f5.alg);
    const VecTensor tors = sharp_last(m, random_alternating(rng, f5.alg, 3));
    const Connection conn = from_decomposition(sb, tors);
    const Section x = random_section(rng, f5.alg);
    const CoTensor lhs = interior(x, covariant_differential(conn, m.tensor()));
    const CoTensor rhs =
        0.5 * (lie_derivative(x, m.tensor()) + sym_lie_derivative(sb, x, m.tensor()));
    CHECK(sup_comps_sampled((lhs - rhs).comps(), f5.alg->box(), 10) < 1e-8);
  }
}
