// SPDX-License-Identifier: Apache-2.0
#include "algc/fixtures.hpp"

namespace algc {

namespace {

std::vector<ScalarField> parse_all(const std::vector<std::string>& exprs,
                                   const std::vector<std::string>& coords) {
  std::vector<ScalarField> out;
  out.reserve(exprs.size());
  for (const auto& e : exprs) out.push_back(parse(e, coords));
  return out;
}

std::vector<ScalarField> identity_anchor(int n) {
  std::vector<ScalarField> a(static_cast<std::size_t>(n) * n, ScalarField::constant(0.0));
  for (int i = 0; i < n; ++i)
    a[static_cast<std::size_t>(i) * n + i] = ScalarField::constant(1.0);
  return a;
}

std::vector<ScalarField> zero_structure(int r) {
  return std::vector<ScalarField>(static_cast<std::size_t>(r) * r * r,
                                  ScalarField::constant(0.0));
}

Metric delta_metric(const AlgebroidPtr& alg) {
  const int r = alg->rank();
  std::vector<ScalarField> g(static_cast<std::size_t>(r) * r, ScalarField::constant(0.0));
  for (int i = 0; i < r; ++i)
    g[static_cast<std::size_t>(i) * r + i] = ScalarField::constant(1.0);
  return Metric(CoTensor(alg, 2, std::move(g)));
}

Fixture make_euclid2() {
  Fixture fx;
  fx.name = "euclid2";
  const std::vector<std::string> coords = {"x", "y"};
  fx.alg = make_algebroid(2, 2, coords, identity_anchor(2), zero_structure(2),
                          DomainBox{{-2.0, -2.0}, {2.0, 2.0}});
  fx.metric = delta_metric(fx.alg);
  fx.sections.emplace("X", Section(fx.alg, parse_all({"y", "0"}, coords)));
  fx.sections.emplace("Y", Section(fx.alg, parse_all({"0", "x"}, coords)));
  return fx;
}

Fixture make_hyperbolic() {
  Fixture fx;
  fx.name = "hyperbolic";
  const std::vector<std::string> coords = {"x", "y"};
  fx.alg = make_algebroid(2, 2, coords, identity_anchor(2), zero_structure(2),
                          DomainBox{{-2.0, 0.5}, {2.0, 3.0}});
  fx.metric = Metric(CoTensor(
      fx.alg, 2, parse_all({"1/(y^2)", "0", "0", "1/(y^2)"}, coords)));
  fx.sections.emplace("X", Section(fx.alg, parse_all({"1", "0"}, coords)));
  fx.sections.emplace("Y", Section(fx.alg, parse_all({"x", "y"}, coords)));
  return fx;
}

Fixture make_so3() {
  Fixture fx;
  fx.name = "so3";
  const std::vector<std::string> coords = {"t"};
  std::vector<ScalarField> structure = zero_structure(3);
  auto set = [&](int k, int i, int j, double v) {
    structure[(static_cast<std::size_t>(k) * 3 + i) * 3 + j] = ScalarField::constant(v);
    structure[(static_cast<std::size_t>(k) * 3 + j) * 3 + i] = ScalarField::constant(-v);
  };
  set(2, 0, 1, 1.0);  // [e1,e2] = e3
  set(0, 1, 2, 1.0);  // [e2,e3] = e1
  set(1, 2, 0, 1.0);  // [e3,e1] = e2
  std::vector<ScalarField> anchor(3, ScalarField::constant(0.0));  // 1x3 zeros
  fx.alg = make_algebroid(1, 3, coords, std::move(anchor), std::move(structure),
                          DomainBox{{-1.0}, {1.0}});
  fx.metric = delta_metric(fx.alg);

  // volume form H(e1,e2,e3) = 1
  std::vector<ScalarField> h(27, ScalarField::constant(0.0));
  const int perms[6][4] = {{0, 1, 2, +1}, {1, 2, 0, +1}, {2, 0, 1, +1},
                           {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
  for (const auto& p : perms)
    h[(static_cast<std::size_t>(p[0]) * 3 + p[1]) * 3 + p[2]] =
        ScalarField::constant(static_cast<double>(p[3]));
  fx.torsion_form = CoTensor(fx.alg, 3, std::move(h));

  fx.sections.emplace("X", Section(fx.alg, parse_all({"1", "0", "0"}, coords)));
  fx.sections.emplace("Y", Section(fx.alg, parse_all({"0", "1", "0"}, coords)));
  return fx;
}

Fixture make_kahler_flat() {
  Fixture fx;
  fx.name = "kahler-flat";
  const std::vector<std::string> coords = {"x", "y"};
  fx.alg = make_algebroid(2, 2, coords, identity_anchor(2), zero_structure(2),
                          DomainBox{{-2.0, -2.0}, {2.0, 2.0}});
  fx.metric = delta_metric(fx.alg);
  // J e1 = e2, J e2 = -e1
  fx.complex_structure = AlmostComplex(
      VecTensor(fx.alg, 1, parse_all({"0", "-1", "1", "0"}, coords)));
  fx.sections.emplace("X", Section(fx.alg, parse_all({"y", "0"}, coords)));
  fx.sections.emplace("Y", Section(fx.alg, parse_all({"0", "x"}, coords)));
  fx.sections.emplace("E1", Section(fx.alg, parse_all({"1", "0"}, coords)));
  fx.sections.emplace("E2", Section(fx.alg, parse_all({"0", "1"}, coords)));
  return fx;
}

Fixture make_twisted_j() {
  Fixture fx;
  fx.name = "twisted-j";
  const std::vector<std::string> coords = {"x", "y", "z", "w"};
  fx.alg = make_algebroid(4, 4, coords, identity_anchor(4), zero_structure(4),
                          DomainBox{{-1.0, -1.0, -1.0, -1.0}, {1.0, 1.0, 1.0, 1.0}});
  fx.metric = delta_metric(fx.alg);

  // R(theta) J0 R(theta)^T for a rotation by theta(x) = 0.7 x in the (e2,e3)
  // plane; skew and orthogonal for the delta metric, non-integrable at
  // generic points.
  const std::vector<std::string> j_rows = {
      "0",            "-cos(0.7*x)", "-sin(0.7*x)", "0",
      "cos(0.7*x)",   "0",           "0",           "sin(0.7*x)",
      "sin(0.7*x)",   "0",           "0",           "-cos(0.7*x)",
      "0",            "-sin(0.7*x)", "cos(0.7*x)",  "0"};
  fx.complex_structure = AlmostComplex(VecTensor(fx.alg, 1, parse_all(j_rows, coords)));

  // bundled alternating 3-form with a polynomial coefficient
  std::vector<ScalarField> h(64, ScalarField::constant(0.0));
  const ScalarField phi = parse("1 + 0.5*x^2", coords);
  const int perms[6][4] = {{0, 1, 2, +1}, {1, 2, 0, +1}, {2, 0, 1, +1},
                           {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
  for (const auto& p : perms)
    h[(static_cast<std::size_t>(p[0]) * 4 + p[1]) * 4 + p[2]] =
        static_cast<double>(p[3]) * phi;
  fx.torsion_form = CoTensor(fx.alg, 3, std::move(h));

  fx.sections.emplace("X", Section(fx.alg, parse_all({"1", "0", "0", "0"}, coords)));
  fx.sections.emplace("Y", Section(fx.alg, parse_all({"0", "0", "1", "0"}, coords)));
  return fx;
}

Fixture make_tmj_twisted(const Fixture& twisted) {
  Fixture fx;
  fx.name = "tmj-twisted";
  fx.alg = tmj_algebroid(*twisted.complex_structure);
  fx.metric = twisted.metric->with_algebroid(fx.alg);
  if (twisted.torsion_form) fx.torsion_form = twisted.torsion_form->with_algebroid(fx.alg);
  for (const auto& [name, sec] : twisted.sections)
    fx.sections.emplace(name, sec.with_algebroid(fx.alg));
  fx.lie = false;
  return fx;
}

}  // namespace

std::vector<Fixture> fixture_registry() {
  std::vector<Fixture> out;
  out.push_back(make_euclid2());
  out.push_back(make_hyperbolic());
  out.push_back(make_so3());
  out.push_back(make_kahler_flat());
  out.push_back(make_twisted_j());
  out.push_back(make_tmj_twisted(out.back()));
  return out;
}

Fixture find_fixture(const std::string& name) {
  for (auto& fx : fixture_registry())
    if (fx.name == name) return fx;
  throw Error("unknown fixture '" + name + "'");
}

}  // namespace algc
