// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exits non-zero if any fails.
//
// Criterion 9 drives the CLI binary; point ALGC_BIN at it and ALGC_FIXTURES
// at the bundled fixture directory (ctest sets both).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "algc/fixture_io.hpp"
#include "algc/verify.hpp"
#include "test_util.hpp"

using namespace algc;
using algc::testutil::run_command;

namespace {

struct Outcome {
  bool ok = true;
  double worst = 0.0;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void track(double residual, double tol, const std::string& what) {
    worst = std::max(worst, residual);
    if (!(residual < tol)) require(false, what + " residual " + std::to_string(residual));
  }
};

double sup_at(const std::vector<ScalarField>& comps, const std::vector<double>& p) {
  EvalCache cache(p);
  double m = 0.0;
  for (const auto& f : comps) m = std::max(m, std::fabs(cache.value(f)));
  return m;
}

double sup_sampled(const std::vector<ScalarField>& comps, const DomainBox& box, int count,
                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double m = 0.0;
  for (int i = 0; i < count; ++i) m = std::max(m, sup_at(comps, box.sample(rng)));
  return m;
}

bool field_primitive(const FieldNode* n) {
  if (!n) return true;
  if (n->op == FieldOp::kPartial || n->op == FieldOp::kInvEntry) return false;
  return field_primitive(n->lhs.get()) && field_primitive(n->rhs.get());
}

// --- criterion 1: jets match central finite differences ---------------------

Outcome criterion_ad() {
  Outcome out;
  for (const Fixture& fx : fixture_registry()) {
    std::vector<ScalarField> fields;
    const Algebroid& alg = *fx.alg;
    for (int a = 0; a < alg.base_dim(); ++a)
      for (int i = 0; i < alg.rank(); ++i) fields.push_back(alg.rho(a, i));
    for (int k = 0; k < alg.rank(); ++k)
      for (int i = 0; i < alg.rank(); ++i)
        for (int j = 0; j < alg.rank(); ++j) fields.push_back(alg.c(k, i, j));
    if (fx.metric)
      for (const auto& f : fx.metric->tensor().comps()) fields.push_back(f);
    if (fx.complex_structure)
      for (const auto& f : fx.complex_structure->endo().comps()) fields.push_back(f);
    if (fx.torsion_form)
      for (const auto& f : fx.torsion_form->comps()) fields.push_back(f);

    const double h = 1e-4;
    std::mt19937_64 rng(42);
    for (int t = 0; t < 20; ++t) {
      const std::vector<double> p = alg.box().sample(rng, 10 * h);
      for (const auto& f : fields) {
        if (f.is_constant() || !field_primitive(f.node().get())) continue;
        const FdReport r = fd_check(f, p, h, &alg.box());
        out.track(r.grad_residual, 1e-5, fx.name + " gradient");
        out.track(r.hess_residual, 1e-3, fx.name + " hessian");
      }
    }
  }
  return out;
}

// --- criterion 2: Cartan and Leibniz lemmas ---------------------------------

Outcome criterion_cartan() {
  Outcome out;
  const double tol = 1e-8;
  for (const char* name : {"euclid2", "hyperbolic", "so3", "twisted-j"}) {
    const Fixture fx = find_fixture(name);
    std::mt19937_64 rng(mix_seed(42, std::string("acceptance.cartan.") + name));
    std::vector<std::vector<double>> pts(20);
    for (auto& p : pts) p = fx.alg->box().sample(rng);

    for (int tuple = 0; tuple < 3; ++tuple) {
      for (int k = 1; k <= 3; ++k) {
        const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
        const SymBracket sb = random_sym_bracket(rng, fx.alg);
        const CoTensor eta = random_alternating(rng, fx.alg, k);
        const CoTensor ten = random_cotensor(rng, fx.alg, k);

        const CoTensor alt_a = lie_derivative(x, eta) -
                               interior(x, exterior_derivative(eta)) -
                               exterior_derivative(interior(x, eta));
        const CoTensor alt_b = lie_derivative(x, interior(y, ten)) -
                               interior(y, lie_derivative(x, ten)) -
                               interior(bracket(x, y), ten);

        std::vector<Section> args;
        for (int i = 0; i < k; ++i) args.push_back(random_section(rng, fx.alg));
        std::vector<Section> x_args = args;
        x_args.insert(x_args.begin(), x);
        const ScalarField sym_a = sym_lie_derivative(sb, x, ten)(args) -
                                  sym_derivative_on(sb, ten, x_args) +
                                  sym_derivative_on(sb, interior(x, ten), args);
        const CoTensor sym_b = sym_lie_derivative(sb, x, interior(y, ten)) -
                               interior(y, sym_lie_derivative(sb, x, ten)) -
                               interior(sb.apply(x, y), ten);

        for (const auto& p : pts) {
          out.track(sup_at(alt_a.comps(), p), tol, std::string(name) + " cartan.alt.a");
          out.track(sup_at(alt_b.comps(), p), tol, std::string(name) + " cartan.alt.b");
          out.track(sup_at({sym_a}, p), tol, std::string(name) + " cartan.sym.a");
          out.track(sup_at(sym_b.comps(), p), tol, std::string(name) + " cartan.sym.b");
        }
      }

      // Leibniz lemmas on covector fields
      const Section x = random_section(rng, fx.alg);
      const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
      const CoTensor omega = random_cotensor(rng, fx.alg, 1);
      const SymBracket sb = random_sym_bracket(rng, fx.alg);
      const CoTensor daf = exterior_derivative(CoTensor::scalar(fx.alg, f));
      const ScalarField ixo = interior(x, omega).comp_flat(0);

      const CoTensor la_fx =
          lie_derivative(f * x, omega) - f * lie_derivative(x, omega) - ixo * daf;
      const CoTensor la_fo = lie_derivative(x, f * omega) - f * lie_derivative(x, omega) -
                             anchor_apply(x, f) * omega;
      const CoTensor ls_fx = sym_lie_derivative(sb, f * x, omega) -
                             f * sym_lie_derivative(sb, x, omega) + ixo * daf;
      const CoTensor ls_fo = sym_lie_derivative(sb, x, f * omega) -
                             f * sym_lie_derivative(sb, x, omega) -
                             anchor_apply(x, f) * omega;
      for (const auto& p : pts) {
        out.track(sup_at(la_fx.comps(), p), tol, std::string(name) + " leibniz.lie_a.fx");
        out.track(sup_at(la_fo.comps(), p), tol, std::string(name) + " leibniz.lie_a.fomega");
        out.track(sup_at(ls_fx.comps(), p), tol, std::string(name) + " leibniz.lie_s.fx");
        out.track(sup_at(ls_fo.comps(), p), tol, std::string(name) + " leibniz.lie_s.fomega");
      }
    }
  }
  return out;
}

// --- criterion 3: Levi-Civita oracle equivalence -----------------------------

Outcome criterion_levi_civita() {
  Outcome out;
  for (const char* name : {"euclid2", "hyperbolic", "so3"}) {
    const Fixture fx = find_fixture(name);
    const Connection lc = levi_civita(*fx.metric);
    const Connection oracle = koszul_oracle(*fx.metric);
    const int r = fx.alg->rank();
    std::vector<ScalarField> diff;
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) diff.push_back(lc.gamma(k, i, j) - oracle.gamma(k, i, j));
    out.track(sup_sampled(diff, fx.alg->box(), 20, 42), 1e-9,
              std::string(name) + " lc-vs-oracle");
    out.track(sup_sampled(torsion(lc).comps(), fx.alg->box(), 20, 43), 1e-10,
              std::string(name) + " lc torsion");
    out.track(sup_sampled(covariant_differential(lc, fx.metric->tensor()).comps(),
                          fx.alg->box(), 20, 44),
              1e-9, std::string(name) + " lc metricity");
  }

  const Fixture f2 = find_fixture("hyperbolic");
  const Connection lc = levi_civita(*f2.metric);
  std::mt19937_64 rng(45);
  for (int t = 0; t < 10; ++t) {
    const auto p = f2.alg->box().sample(rng);
    EvalCache cache(p);
    const double y = p[1];
    out.track(std::fabs(cache.value(lc.gamma(1, 0, 0)) - 1.0 / y), 1e-8, "Gamma^y_xx");
    out.track(std::fabs(cache.value(lc.gamma(0, 0, 1)) + 1.0 / y), 1e-8, "Gamma^x_xy");
    out.track(std::fabs(cache.value(lc.gamma(1, 1, 1)) + 1.0 / y), 1e-8, "Gamma^y_yy");
  }
  return out;
}

// --- criterion 4: skew-torsion theory ----------------------------------------

Outcome criterion_skew_torsion() {
  Outcome out;
  // bundled 3-forms
  for (const char* name : {"so3", "twisted-j"}) {
    const Fixture fx = find_fixture(name);
    const Connection conn = skew_torsion_connection(*fx.metric, *fx.torsion_form);
    const CoTensor tg = torsion_3form(*fx.metric, conn);
    out.track(sup_sampled((tg - *fx.torsion_form).comps(), fx.alg->box(), 20, 46), 1e-9,
              std::string(name) + " torsion3 == H");
    out.track(sup_sampled(covariant_differential(conn, fx.metric->tensor()).comps(),
                          fx.alg->box(), 20, 47),
              1e-9, std::string(name) + " H-connection metricity");
  }

  // unconditional identities for random connections
  for (const char* name : {"euclid2", "hyperbolic", "so3"}) {
    const Fixture fx = find_fixture(name);
    std::mt19937_64 rng(mix_seed(48, name));
    for (int t = 0; t < 3; ++t) {
      const Connection conn = random_connection(rng, fx.alg);
      const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg),
                    z = random_section(rng, fx.alg);
      for (int s = 0; s < 5; ++s) {
        const auto p = fx.alg->box().sample(rng);
        const auto [r1, r2] = thm4_residuals(*fx.metric, conn, x, y, z, p);
        out.track(r1, 1e-7, std::string(name) + " identity (diagonal)");
        out.track(r2, 1e-7, std::string(name) + " identity (polarized)");
      }
    }
  }
  return out;
}

// --- criterion 5: compatibility criterion is two-sided -----------------------

Outcome criterion_compat() {
  Outcome out;
  const Fixture f2 = find_fixture("hyperbolic");
  const Metric& m = *f2.metric;
  const SymBracket sbs = sym_bracket_s(m);
  std::mt19937_64 rng(49);
  for (int t = 0; t < 10; ++t) {
    const Section x = random_section(rng, f2.alg);
    const CoTensor sum = lie_derivative(x, m.tensor()) + sym_lie_derivative(sbs, x, m.tensor());
    out.track(sup_sampled(sum.comps(), f2.alg->box(), 20, 50 + t), 1e-8, "positive side");
  }

  const int r = f2.alg->rank();
  std::vector<ScalarField> s(static_cast<std::size_t>(r) * r * r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        s[(static_cast<std::size_t>(k) * r + i) * r + j] = sbs.s(k, i, j);
  s[0] = s[0] + ScalarField::constant(1e-2);
  const SymBracket perturbed(f2.alg, std::move(s));
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Section x = random_section(rng, f2.alg);
    const CoTensor sum =
        lie_derivative(x, m.tensor()) + sym_lie_derivative(perturbed, x, m.tensor());
    worst = std::max(worst, sup_sampled(sum.comps(), f2.alg->box(), 20, 60 + t));
  }
  out.require(worst > 1e-3, "negative control stayed below 1e-3");
  return out;
}

// --- criterion 6: curly bracket relation --------------------------------------

Outcome criterion_curly() {
  Outcome out;
  const Fixture f2 = find_fixture("hyperbolic");
  const SymBracket sbs = sym_bracket_s(*f2.metric);
  const SymBracket curly = curly_bracket_s(*f2.metric, sbs);
  const SymBracket lc_sp = symmetric_product(levi_civita(*f2.metric));
  std::mt19937_64 rng(51);
  for (int t = 0; t < 3; ++t) {
    const Section x = random_section(rng, f2.alg), y = random_section(rng, f2.alg);
    const Section lhs = curly.apply(x, y);
    const Section rhs = 2.0 * lc_sp.apply(x, y) - sbs.apply(x, y);
    out.track(sup_sampled((lhs - rhs).comps(), f2.alg->box(), 20, 52 + t), 1e-8,
              "curly relation");
  }
  return out;
}

// --- criterion 7: Hermitian suite ---------------------------------------------

Outcome criterion_hermitian() {
  Outcome out;
  for (const char* name : {"kahler-flat", "twisted-j"}) {
    const Fixture fx = find_fixture(name);
    const Report rep = run_suite(fx, Suite::kHermitian, SuiteParams{20, 42, 1e-7});
    for (const auto& c : rep.checks) {
      if (c.status == CheckStatus::kFail)
        out.require(false, std::string(name) + " " + c.id);
      if (c.status == CheckStatus::kPass) out.worst = std::max(out.worst, c.max_residual);
    }
  }

  // the Kahler fixture additionally has bar-nabla = nabla, and the nearly
  // Kahler formula bar-nabla = nabla - 1/8 N_J holds trivially (N_J = 0)
  const Fixture f4 = find_fixture("kahler-flat");
  const Connection lc = levi_civita(*f4.metric);
  const Connection bar = first_canonical(lc, nabla_j(lc, *f4.complex_structure));
  const VecTensor nj = nijenhuis(*f4.complex_structure);
  const int r = f4.alg->rank();
  std::vector<ScalarField> diff, diff8;
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const int ij[2] = {i, j};
        diff.push_back(bar.gamma(k, i, j) - lc.gamma(k, i, j));
        diff8.push_back(bar.gamma(k, i, j) - lc.gamma(k, i, j) + 0.125 * nj.comp(k, ij));
      }
  out.track(sup_sampled(diff, f4.alg->box(), 20, 53), 1e-7, "kahler bar == nabla");
  out.track(sup_sampled(diff8, f4.alg->box(), 20, 54), 1e-7, "kahler 1/8-N_J formula");
  return out;
}

// --- criterion 8: anchor-J integrability ---------------------------------------

Outcome criterion_tmj() {
  Outcome out;
  const Fixture f4 = find_fixture("kahler-flat");
  const AlgebroidPtr tmj4 = tmj_algebroid(*f4.complex_structure);
  std::mt19937_64 rng(55);
  for (int t = 0; t < 3; ++t) {
    const Section x = random_section(rng, tmj4), y = random_section(rng, tmj4),
                  z = random_section(rng, tmj4);
    out.track(sup_sampled(jacobiator(x, y, z).comps(), tmj4->box(), 20, 56 + t), 1e-8,
              "integrable-J Jacobiator");
  }

  const Fixture f6 = find_fixture("tmj-twisted");
  double worst = 0.0;
  std::mt19937_64 prng(57);
  for (int t = 0; t < 3; ++t) {
    const Section x = random_section(prng, f6.alg), y = random_section(prng, f6.alg);
    for (int s = 0; s < 20; ++s)
      worst = std::max(worst, almost_lie_residual(x, y, f6.alg->box().sample(prng)));
  }
  out.require(worst > 1e-3, "twisted anchor-J algebroid looked almost Lie");
  return out;
}

// --- criterion 9: CLI contract ---------------------------------------------------

Outcome criterion_cli() {
  Outcome out;
  const std::string bin = algc::testutil::algc_binary();
  const std::string dir = algc::testutil::fixtures_dir();
  if (bin.empty()) {
    out.require(false, "ALGC_BIN not set");
    return out;
  }

  for (const char* name : {"euclid2", "hyperbolic", "so3", "kahler-flat", "twisted-j"}) {
    const auto r = run_command(bin + " check " + dir + "/" + name + ".json --suite all");
    out.require(r.exit_code == 0, std::string(name) + " exited " +
                                      std::to_string(r.exit_code));
  }

  const auto corrupted = run_command(bin + " check " + dir + "/corrupted-gamma.json");
  out.require(corrupted.exit_code == 1,
              "corrupted fixture exited " + std::to_string(corrupted.exit_code));

  const std::string bad_path = algc::testutil::temp_path(".json");
  {
    std::ofstream f(bad_path);
    f << "{\"name\": 3}";
  }
  const auto malformed = run_command(bin + " check " + bad_path);
  out.require(malformed.exit_code == 2,
              "malformed fixture exited " + std::to_string(malformed.exit_code));
  std::remove(bad_path.c_str());

  const std::string ja = algc::testutil::temp_path(".json");
  const std::string jb = algc::testutil::temp_path(".json");
  const std::string cmd =
      bin + " check " + dir + "/hyperbolic.json --suite metric --points 5 --json ";
  run_command(cmd + ja);
  run_command(cmd + jb);
  std::ifstream ia(ja), ib(jb);
  std::ostringstream ba, bb;
  ba << ia.rdbuf();
  bb << ib.rdbuf();
  out.require(!ba.str().empty() && ba.str() == bb.str(), "reports are not deterministic");
  std::remove(ja.c_str());
  std::remove(jb.c_str());
  return out;
}

struct Entry {
  const char* label;
  Outcome (*run)();
  double budget_seconds;  // 0 = no stated budget
};

}  // namespace

int main() {
  const Entry entries[] = {
      {"C1 jet derivatives match central finite differences", criterion_ad, 5.0},
      {"C2 Cartan and Leibniz lemma identities", criterion_cartan, 30.0},
      {"C3 Levi-Civita formula matches the Koszul oracle", criterion_levi_civita, 0.0},
      {"C4 skew-torsion construction and unconditional identities", criterion_skew_torsion,
       0.0},
      {"C5 metric-compatibility criterion is two-sided", criterion_compat, 0.0},
      {"C6 curly-bracket relation", criterion_curly, 0.0},
      {"C7 Hermitian suite", criterion_hermitian, 60.0},
      {"C8 anchor-J integrability and its failure", criterion_tmj, 0.0},
      {"C9 CLI contract", criterion_cli, 0.0},
  };

  bool all_ok = true;
  for (const Entry& entry : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = entry.run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (entry.budget_seconds > 0 && dt > entry.budget_seconds) {
      out.ok = false;
      out.detail += (out.detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    all_ok = all_ok && out.ok;
    std::printf("[%s] %s (worst residual %.3e, %.2f s)%s%s\n", out.ok ? "PASS" : "FAIL",
                entry.label, out.worst, dt, out.detail.empty() ? "" : " — ",
                out.detail.c_str());
  }
  return all_ok ? 0 : 1;
}
