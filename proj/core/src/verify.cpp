// SPDX-License-Identifier: Apache-2.0
#include "algc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace algc {

Suite parse_suite(const std::string& name) {
  if (name == "core") return Suite::kCore;
  if (name == "metric") return Suite::kMetric;
  if (name == "hermitian") return Suite::kHermitian;
  if (name == "all") return Suite::kAll;
  throw Error("unknown suite '" + name + "' (expected core|metric|hermitian|all)");
}

std::string suite_name(Suite suite) {
  switch (suite) {
    case Suite::kCore: return "core";
    case Suite::kMetric: return "metric";
    case Suite::kHermitian: return "hermitian";
    case Suite::kAll: return "all";
  }
  return "all";
}

std::string status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
    case CheckStatus::kHypothesisNotMet: return "hypothesis-not-met";
  }
  return "skipped";
}

bool Report::all_passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::kFail) return false;
  return true;
}

std::string Report::to_json() const {
  nlohmann::json doc;
  doc["fixture"] = fixture;
  doc["suite"] = suite;
  doc["seed"] = seed;
  doc["points"] = points;
  doc["tol"] = tol;
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json jc;
    jc["id"] = c.id;
    jc["anchor"] = c.anchor;
    jc["max_residual"] = c.max_residual;
    jc["at_point"] = c.at_point;
    jc["status"] = status_name(c.status);
    arr.push_back(std::move(jc));
  }
  doc["checks"] = std::move(arr);
  return doc.dump(2) + "\n";
}

namespace {

using Points = std::vector<std::vector<double>>;

Points sample_points(const Fixture& fx, const SuiteParams& pr, std::mt19937_64& rng) {
  Points pts(static_cast<std::size_t>(std::max(1, pr.points)));
  for (auto& p : pts) p = fx.alg->box().sample(rng);
  return pts;
}

struct Scan {
  double max = -1.0;
  std::vector<double> at;
  void add(double v, const std::vector<double>& p) {
    if (v > max) {
      max = v;
      at = p;
    }
  }
};

void finish(CheckResult& res, const Scan& scan, double tol) {
  res.max_residual = scan.max < 0.0 ? 0.0 : scan.max;
  res.at_point = scan.at;
  res.status = res.max_residual < tol ? CheckStatus::kPass : CheckStatus::kFail;
}

double sup_fields(EvalCache& cache, const std::vector<ScalarField>& comps) {
  double m = 0.0;
  for (const auto& f : comps) m = std::max(m, std::fabs(cache.value(f)));
  return m;
}

std::vector<ScalarField> comps_of(const Section& s) { return s.comps(); }
std::vector<ScalarField> comps_of(const CoTensor& t) { return t.comps(); }
std::vector<ScalarField> comps_of(const VecTensor& t) { return t.comps(); }

/// Run `build` for three random tuples, evaluating the residual component
/// fields it returns at every sampled point.
template <typename BuildFn>
void scan_tuples(const Fixture& fx, const SuiteParams& pr, const std::string& id,
                 CheckResult& res, BuildFn&& build) {
  std::mt19937_64 rng(mix_seed(pr.seed, id));
  const Points pts = sample_points(fx, pr, rng);
  Scan scan;
  for (int t = 0; t < 3; ++t) {
    const std::vector<ScalarField> comps = build(rng, t);
    for (const auto& p : pts) {
      EvalCache cache(p);
      scan.add(sup_fields(cache, comps), p);
    }
  }
  finish(res, scan, pr.tol);
}

ScalarField g_of(const Metric& m, const Section& x, const Section& y) {
  const Section args[2] = {x, y};
  return m.tensor()(std::span<const Section>(args));
}

CoTensor d_a_scalar(const AlgebroidPtr& alg, const ScalarField& f) {
  return exterior_derivative(CoTensor::scalar(alg, f));
}

/// <X:Y>^s by the defining formula, not through coefficients.
Section sym_bracket_s_direct(const Metric& m, const Section& x, const Section& y) {
  const CoTensor arg = lie_derivative(x, flat(m, y)) + lie_derivative(y, flat(m, x)) -
                       d_a_scalar(m.algebroid(), g_of(m, x, y));
  return sharp(m, arg);
}

/// {X,Y}^s by the defining formula (d^s f = d^a f on functions).
Section curly_direct(const Metric& m, const SymBracket& sb, const Section& x,
                     const Section& y) {
  const CoTensor arg = sym_lie_derivative(sb, x, flat(m, y)) +
                       sym_lie_derivative(sb, y, flat(m, x)) +
                       d_a_scalar(m.algebroid(), g_of(m, x, y));
  return sharp(m, arg);
}

CoTensor bundled_or_random_3form(const Fixture& fx, std::mt19937_64& rng) {
  if (fx.torsion_form) return *fx.torsion_form;
  return random_alternating(rng, fx.alg, 3);
}

const Connection& lc_or_declared(const Fixture& fx, const Connection& computed) {
  return fx.declared_connection ? *fx.declared_connection : computed;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

void add(std::vector<IdentityCheck>& reg, std::string id, std::string anchor, Suite suite,
         std::function<void(const Fixture&, const SuiteParams&, CheckResult&)> run) {
  IdentityCheck c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.suite = suite;
  c.run = std::move(run);
  reg.push_back(std::move(c));
}

std::vector<IdentityCheck> build_registry() {
  std::vector<IdentityCheck> reg;

  // ---- core -----------------------------------------------------------------

  add(reg, "core.bracket.skew", "[X,Y] + [Y,X] = 0", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          return comps_of(bracket(x, y) + bracket(y, x));
        });
      });

  add(reg, "core.bracket.bilinear", "[aX + bX', Y] = a[X,Y] + b[X',Y]", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          std::uniform_real_distribution<double> coeff(-2.0, 2.0);
          const double a = coeff(rng), b = coeff(rng);
          const Section x = random_section(rng, fx.alg), x2 = random_section(rng, fx.alg),
                        y = random_section(rng, fx.alg);
          const Section lhs = bracket(a * x + b * x2, y);
          const Section rhs = a * bracket(x, y) + b * bracket(x2, y);
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.bracket.leibniz", "[X, fY] = f[X,Y] + rho(X)(f) Y", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const Section lhs = bracket(x, f * y);
          const Section rhs = f * bracket(x, y) + anchor_apply(x, f) * y;
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.conn.tensorial", "nabla_{fX} Y = f nabla_X Y", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Connection conn = random_connection(rng, fx.alg);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const Section lhs = covariant_derivative(conn, f * x, y);
          const Section rhs = f * covariant_derivative(conn, x, y);
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.conn.leibniz", "nabla_X (fY) = f nabla_X Y + rho(X)(f) Y", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Connection conn = random_connection(rng, fx.alg);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const Section lhs = covariant_derivative(conn, x, f * y);
          const Section rhs =
              f * covariant_derivative(conn, x, y) + anchor_apply(x, f) * y;
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.conn.tensor_leibniz", "nabla_X (fT) = f nabla_X T + rho(X)(f) T",
      Suite::kCore, [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const Connection conn = random_connection(rng, fx.alg);
          const Section x = random_section(rng, fx.alg);
          const CoTensor ten = random_cotensor(rng, fx.alg, 1 + t % 2);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const CoTensor lhs = covariant_derivative(conn, x, f * ten);
          const CoTensor rhs =
              f * covariant_derivative(conn, x, ten) + anchor_apply(x, f) * ten;
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.torsion.def", "T(X,Y) = nabla_X Y - nabla_Y X - [X,Y], skew", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Connection conn = random_connection(rng, fx.alg);
          const VecTensor tors = torsion(conn);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const Section lhs = vec2_apply(tors, x, y);
          const Section rhs = covariant_derivative(conn, x, y) -
                              covariant_derivative(conn, y, x) - bracket(x, y);
          auto comps = comps_of(lhs - rhs);
          const auto skew = comps_of(vec2_apply(tors, x, y) + vec2_apply(tors, y, x));
          comps.insert(comps.end(), skew.begin(), skew.end());
          return comps;
        });
      });

  add(reg, "core.symprod.def", "<X:Y> = nabla_X Y + nabla_Y X", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Connection conn = random_connection(rng, fx.alg);
          const SymBracket sp = symmetric_product(conn);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const Section lhs = sp.apply(x, y);
          const Section rhs =
              covariant_derivative(conn, x, y) + covariant_derivative(conn, y, x);
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.symprod.leibniz", "<X:fY> = f<X:Y> + rho(X)(f) Y", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Connection conn = random_connection(rng, fx.alg);
          const SymBracket sp = symmetric_product(conn);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const Section lhs = sp.apply(x, f * y);
          const Section rhs = f * sp.apply(x, y) + anchor_apply(x, f) * y;
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.conn.decomposition",
      "nabla_X Y = 1/2([X,Y] + <X:Y>) + 1/2 T(X,Y)", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Connection conn = random_connection(rng, fx.alg);
          const SymBracket sp = symmetric_product(conn);
          const VecTensor tors = torsion(conn);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const Section lhs = covariant_derivative(conn, x, y);
          const Section rhs =
              0.5 * (bracket(x, y) + sp.apply(x, y)) + 0.5 * vec2_apply(tors, x, y);
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.interior.tensorial", "i_{fX} zeta = f i_X zeta", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const Section x = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const CoTensor ten = random_cotensor(rng, fx.alg, 1 + t);
          const CoTensor lhs = interior(f * x, ten);
          const CoTensor rhs = f * interior(x, ten);
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.alt.projection", "Alt(Alt(zeta)) = Alt(zeta); Alt kills symmetric input",
      Suite::kCore, [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const CoTensor ten = random_cotensor(rng, fx.alg, 2 + t % 2);
          const CoTensor once = alternate(ten);
          auto comps = comps_of(alternate(once) - once);
          const auto killed = comps_of(alternate(symmetrize(ten)));
          comps.insert(comps.end(), killed.begin(), killed.end());
          return comps;
        });
      });

  add(reg, "core.sym.projection", "Sym(Sym(zeta)) = Sym(zeta)", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const CoTensor ten = random_cotensor(rng, fx.alg, 2 + t % 2);
          const CoTensor once = symmetrize(ten);
          return comps_of(symmetrize(once) - once);
        });
      });

  add(reg, "core.d_a.alt_nabla",
      "torsion-free nabla: d^a eta = (k+1) Alt(nabla eta)", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          // torsion-free connection: gamma = 1/2 c + symmetric part
          const SymBracket sp = random_sym_bracket(rng, fx.alg);
          const Connection conn = from_decomposition(sp, VecTensor::zero(fx.alg, 2));
          const int k = 1 + t % 2;
          const CoTensor eta = random_alternating(rng, fx.alg, k);
          const CoTensor lhs = exterior_derivative(eta);
          const CoTensor rhs =
              static_cast<double>(k + 1) * alternate(covariant_differential(conn, eta));
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.d_s.sym_nabla",
      "d^s eta = (k+1) Sym(nabla eta) for the symmetric product of nabla", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const Connection conn = random_connection(rng, fx.alg);
          const SymBracket sp = symmetric_product(conn);
          const int k = 1 + t % 2;
          const CoTensor eta = random_symmetric(rng, fx.alg, k);
          const CoTensor lhs = sym_derivative(sp, eta);
          const CoTensor rhs =
              static_cast<double>(k + 1) * symmetrize(covariant_differential(conn, eta));
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.d_a.square_zero", "Jac = 0 implies d^a(d^a eta) = 0", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        std::mt19937_64 rng(mix_seed(pr.seed, res.id));
        const Points pts = sample_points(fx, pr, rng);
        Scan hypothesis;
        for (int t = 0; t < 3; ++t) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg),
                        z = random_section(rng, fx.alg);
          const auto comps = comps_of(jacobiator(x, y, z));
          for (const auto& p : pts) {
            EvalCache cache(p);
            hypothesis.add(sup_fields(cache, comps), p);
          }
        }
        if (hypothesis.max > pr.tol) {
          res.status = CheckStatus::kHypothesisNotMet;
          res.max_residual = hypothesis.max;
          res.at_point = hypothesis.at;
          res.note = "bracket does not satisfy the Jacobi identity here";
          return;
        }
        Scan scan;
        for (int t = 0; t < 3; ++t) {
          const CoTensor eta = random_alternating(rng, fx.alg, 1);
          const auto comps = comps_of(exterior_derivative(exterior_derivative(eta)));
          for (const auto& p : pts) {
            EvalCache cache(p);
            scan.add(sup_fields(cache, comps), p);
          }
        }
        finish(res, scan, pr.tol);
      });

  add(reg, "cartan.alt.a", "L^a_X = i_X d^a + d^a i_X", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const int k = 1 + t;  // degrees 1..3
          const Section x = random_section(rng, fx.alg);
          const CoTensor eta = random_alternating(rng, fx.alg, k);
          const CoTensor lhs = lie_derivative(x, eta);
          const CoTensor rhs =
              interior(x, exterior_derivative(eta)) + exterior_derivative(interior(x, eta));
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "cartan.alt.b", "L^a_X i_Y - i_Y L^a_X = i_{[X,Y]}", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const int k = 1 + t;
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const CoTensor ten = random_cotensor(rng, fx.alg, k);
          const CoTensor lhs =
              lie_derivative(x, interior(y, ten)) - interior(y, lie_derivative(x, ten));
          const CoTensor rhs = interior(bracket(x, y), ten);
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "cartan.sym.a", "L^s_X = i_X d^s - d^s i_X", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        // The two-sum formula for d^s is not function-linear in its slots on
        // non-symmetric tensors, so both sides are evaluated on explicit
        // section tuples, which is the form the identity is stated in.
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const int k = 1 + t;
          const SymBracket sb = random_sym_bracket(rng, fx.alg);
          const Section x = random_section(rng, fx.alg);
          const CoTensor ten = random_cotensor(rng, fx.alg, k);
          std::vector<Section> args;
          for (int i = 0; i < k; ++i) args.push_back(random_section(rng, fx.alg));
          const ScalarField lhs = sym_lie_derivative(sb, x, ten)(args);
          std::vector<Section> x_args = args;
          x_args.insert(x_args.begin(), x);
          const ScalarField rhs = sym_derivative_on(sb, ten, x_args) -
                                  sym_derivative_on(sb, interior(x, ten), args);
          std::vector<ScalarField> comps = {lhs - rhs};
          return comps;
        });
      });

  add(reg, "cartan.sym.b", "L^s_X i_Y - i_Y L^s_X = i_{<X:Y>}", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const int k = 1 + t;
          const SymBracket sb = random_sym_bracket(rng, fx.alg);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const CoTensor ten = random_cotensor(rng, fx.alg, k);
          const CoTensor lhs = sym_lie_derivative(sb, x, interior(y, ten)) -
                               interior(y, sym_lie_derivative(sb, x, ten));
          const CoTensor rhs = interior(sb.apply(x, y), ten);
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "leibniz.lie_a.fx", "L^a_{fX} omega = f L^a_X omega + (i_X omega) d^a f",
      Suite::kCore, [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const CoTensor omega = random_cotensor(rng, fx.alg, 1);
          const CoTensor lhs = lie_derivative(f * x, omega);
          const CoTensor rhs = f * lie_derivative(x, omega) +
                               interior(x, omega).comp_flat(0) * d_a_scalar(fx.alg, f);
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "leibniz.lie_a.fomega", "L^a_X (f omega) = f L^a_X omega + rho(X)(f) omega",
      Suite::kCore, [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const CoTensor omega = random_cotensor(rng, fx.alg, 1);
          const CoTensor lhs = lie_derivative(x, f * omega);
          const CoTensor rhs = f * lie_derivative(x, omega) + anchor_apply(x, f) * omega;
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "leibniz.lie_s.fx", "L^s_{fX} omega = f L^s_X omega - (i_X omega) d^s f",
      Suite::kCore, [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const SymBracket sb = random_sym_bracket(rng, fx.alg);
          const Section x = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const CoTensor omega = random_cotensor(rng, fx.alg, 1);
          const CoTensor lhs = sym_lie_derivative(sb, f * x, omega);
          // d^s f = d^a f on functions
          const CoTensor rhs = f * sym_lie_derivative(sb, x, omega) -
                               interior(x, omega).comp_flat(0) * d_a_scalar(fx.alg, f);
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "leibniz.lie_s.fomega", "L^s_X (f omega) = f L^s_X omega + rho(X)(f) omega",
      Suite::kCore, [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const SymBracket sb = random_sym_bracket(rng, fx.alg);
          const Section x = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const CoTensor omega = random_cotensor(rng, fx.alg, 1);
          const CoTensor lhs = sym_lie_derivative(sb, x, f * omega);
          const CoTensor rhs =
              f * sym_lie_derivative(sb, x, omega) + anchor_apply(x, f) * omega;
          return comps_of(lhs - rhs);
        });
      });

  add(reg, "core.lie_a.alt_preserved", "L^a_X preserves alternating tensors", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const int k = 2 + t % 2;
          const Section x = random_section(rng, fx.alg);
          const CoTensor out = lie_derivative(x, random_alternating(rng, fx.alg, k));
          return comps_of(out - alternate(out));
        });
      });

  add(reg, "core.lie_s.sym_preserved", "L^s_X preserves symmetric tensors", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int t) {
          const int k = 2 + t % 2;
          const SymBracket sb = random_sym_bracket(rng, fx.alg);
          const Section x = random_section(rng, fx.alg);
          const CoTensor out = sym_lie_derivative(sb, x, random_symmetric(rng, fx.alg, k));
          return comps_of(out - symmetrize(out));
        });
      });

  add(reg, "core.d.function_agree", "d^s f = d^a f on functions", Suite::kCore,
      [](const Fixture& fx, const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const SymBracket sb = random_sym_bracket(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const CoTensor lhs = sym_derivative(sb, CoTensor::scalar(fx.alg, f));
          return comps_of(lhs - d_a_scalar(fx.alg, f));
        });
      });

  // ---- metric ----------------------------------------------------------------

  auto with_metric =
      [](std::function<void(const Fixture&, const Metric&, const SuiteParams&, CheckResult&)>
             body) {
        return [body = std::move(body)](const Fixture& fx, const SuiteParams& pr,
                                        CheckResult& res) {
          if (!fx.metric) {
            res.status = CheckStatus::kSkipped;
            res.note = "fixture has no metric";
            return;
          }
          body(fx, *fx.metric, pr, res);
        };
      };

  add(reg, "metric.musical.inverse", "sharp(flat(X)) = X", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg);
          return comps_of(sharp(m, flat(m, x)) - x);
        });
      }));

  add(reg, "metric.torsion3.roundtrip",
      "the H-connection's torsion 3-form equals H", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const CoTensor h = bundled_or_random_3form(fx, rng);
          const Connection conn = skew_torsion_connection(m, h);
          return comps_of(torsion_3form(m, conn) - h);
        });
      }));

  add(reg, "metric.torsion3.skew",
      "the H-connection's torsion is totally skew-symmetric", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const CoTensor h = bundled_or_random_3form(fx, rng);
          const Connection conn = skew_torsion_connection(m, h);
          const CoTensor tg = torsion_3form(m, conn);
          return comps_of(tg - alternate(tg));
        });
      }));

  add(reg, "metric.skewconn.metric",
      "the H-connection built from <X:Y>^s is metric (nabla g = 0)", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const CoTensor h = bundled_or_random_3form(fx, rng);
          const Connection conn = skew_torsion_connection(m, h);
          return comps_of(covariant_differential(conn, m.tensor()));
        });
      }));

  add(reg, "metric.sym_from_lie.diag",
      "g(nabla_X X, Z) = g(sharp(L^a_X Xb - 1/2 d^a g(X,X)), Z) - g(T(X,Z),X)"
      " + (nabla g)(Z,X,X) - 1/2 (d^s g)(X,X,Z)",
      Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        std::mt19937_64 rng(mix_seed(pr.seed, res.id));
        const Points pts = sample_points(fx, pr, rng);
        Scan scan;
        for (int t = 0; t < 3; ++t) {
          const Connection conn = random_connection(rng, fx.alg);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg),
                        z = random_section(rng, fx.alg);
          for (const auto& p : pts)
            scan.add(thm4_residuals(m, conn, x, y, z, p).first, p);
        }
        finish(res, scan, pr.tol);
      }));

  add(reg, "metric.sym_from_lie.full",
      "g(<X:Y>, Z) = g(sharp(L^a_X Yb + L^a_Y Xb - d^a g(X,Y)), Z) - g(T(X,Z),Y)"
      " - g(T(Y,Z),X) + 2(nabla g)(Z,X,Y) - (d^s g)(X,Y,Z)",
      Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        std::mt19937_64 rng(mix_seed(pr.seed, res.id));
        const Points pts = sample_points(fx, pr, rng);
        Scan scan;
        for (int t = 0; t < 3; ++t) {
          const Connection conn = random_connection(rng, fx.alg);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg),
                        z = random_section(rng, fx.alg);
          for (const auto& p : pts)
            scan.add(thm4_residuals(m, conn, x, y, z, p).second, p);
        }
        finish(res, scan, pr.tol);
      }));

  add(reg, "metric.sym_from_lie.skew_corollary",
      "metric + totally skew torsion: <X:Y> = sharp(L^a_X Yb + L^a_Y Xb - d^a g(X,Y))",
      Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        std::mt19937_64 rng(mix_seed(pr.seed, res.id));
        const Points pts = sample_points(fx, pr, rng);
        Scan scan;
        for (int t = 0; t < 3; ++t) {
          const CoTensor h = bundled_or_random_3form(fx, rng);
          const Connection conn = skew_torsion_connection(m, h);
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          for (const auto& p : pts) scan.add(corollary4_residual(m, conn, x, y, p), p);
        }
        finish(res, scan, pr.tol);
      }));

  add(reg, "metric.compat.theorem",
      "(i_X nabla) g = 1/2 (L^a_X + L^s_X) g for decomposition connections",
      Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const SymBracket sb = random_sym_bracket(rng, fx.alg);
          const VecTensor tors = sharp_last(m, random_alternating(rng, fx.alg, 3));
          const Connection conn = from_decomposition(sb, tors);
          const Section x = random_section(rng, fx.alg);
          const CoTensor lhs = interior(x, covariant_differential(conn, m.tensor()));
          const CoTensor rhs = 0.5 * (lie_derivative(x, m.tensor()) +
                                      sym_lie_derivative(sb, x, m.tensor()));
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "metric.symbracket_s.leibniz",
      "<X:fY>^s = f<X:Y>^s + rho(X)(f) Y by the defining formula", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const Section lhs = sym_bracket_s_direct(m, x, f * y);
          const Section rhs = f * sym_bracket_s_direct(m, x, y) + anchor_apply(x, f) * y;
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "metric.symbracket_s.lie_opposite",
      "L^s g = -L^a g for the metric symmetric bracket <.:.>^s", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        const SymBracket sb = sym_bracket_s(m);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg);
          const CoTensor lhs = sym_lie_derivative(sb, x, m.tensor());
          const CoTensor rhs = lie_derivative(x, m.tensor());
          return comps_of(lhs + rhs);
        });
      }));

  add(reg, "lc.oracle", "the bracket-formula Levi-Civita connection equals the Koszul one",
      Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        const Connection a = levi_civita(m);
        const Connection b = koszul_oracle(m);
        std::vector<ScalarField> comps;
        const int r = m.rank();
        for (int k = 0; k < r; ++k)
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
              comps.push_back(a.gamma(k, i, j) - b.gamma(k, i, j));
        scan_tuples(fx, pr, res.id, res,
                    [&](std::mt19937_64&, int) { return comps; });
      }));

  add(reg, "lc.torsion_free", "the Levi-Civita connection is torsion-free", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection& conn = lc_or_declared(fx, lc);
        const auto comps = comps_of(torsion(conn));
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64&, int) { return comps; });
        if (fx.declared_connection) res.note = "checked the declared connection";
      }));

  add(reg, "lc.metric", "the Levi-Civita connection is metric (nabla g = 0)", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection& conn = lc_or_declared(fx, lc);
        const auto comps = comps_of(covariant_differential(conn, m.tensor()));
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64&, int) { return comps; });
        if (fx.declared_connection) res.note = "checked the declared connection";
      }));

  add(reg, "metric.curly.leibniz",
      "{X, fY}^s = f {X,Y}^s + rho(X)(f) Y by the defining formula", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        const SymBracket sb = sym_bracket_s(m);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const Section lhs = curly_direct(m, sb, x, f * y);
          const Section rhs = f * curly_direct(m, sb, x, y) + anchor_apply(x, f) * y;
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "metric.curly.relation",
      "{X,Y}^s = 2<X:Y> - <X:Y>^s for the Levi-Civita symmetric product", Suite::kMetric,
      with_metric([](const Fixture& fx, const Metric& m, const SuiteParams& pr,
                     CheckResult& res) {
        const SymBracket sbs = sym_bracket_s(m);
        const SymBracket curly = curly_bracket_s(m, sbs);
        const SymBracket lc_product = symmetric_product(levi_civita(m));
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const Section lhs = curly.apply(x, y);
          const Section rhs = 2.0 * lc_product.apply(x, y) - sbs.apply(x, y);
          return comps_of(lhs - rhs);
        });
      }));

  // ---- hermitian --------------------------------------------------------------

  auto with_hermitian =
      [](std::function<void(const Fixture&, const Metric&, const AlmostComplex&,
                            const SuiteParams&, CheckResult&)>
             body) {
        return [body = std::move(body)](const Fixture& fx, const SuiteParams& pr,
                                        CheckResult& res) {
          if (!fx.metric || !fx.complex_structure) {
            res.status = CheckStatus::kSkipped;
            res.note = "fixture has no almost complex structure";
            return;
          }
          body(fx, *fx.metric, *fx.complex_structure, pr, res);
        };
      };

  add(reg, "hermitian.j.square", "J∘J = -id", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric&, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const VecTensor jj = endo_compose(ac.endo(), ac.endo()) +
                             VecTensor::identity_endo(fx.alg);
        const auto comps = comps_of(jj);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64&, int) { return comps; });
      }));

  add(reg, "hermitian.j.orthogonal", "g(JX, JY) = g(X, Y)", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          std::vector<ScalarField> comps = {g_of(m, ac.apply(x), ac.apply(y)) -
                                            g_of(m, x, y)};
          return comps;
        });
      }));

  add(reg, "hermitian.kahler.alternating", "Omega(X,Y) = g(JX,Y) is a 2-form",
      Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const CoTensor omega = kahler_form(m, ac);
        const auto comps = comps_of(omega - alternate(omega));
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64&, int) { return comps; });
      }));

  add(reg, "hermitian.nijenhuis.skew", "N_J(X,Y) = -N_J(Y,X)", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric&, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const VecTensor nj = nijenhuis(ac);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          return comps_of(vec2_apply(nj, x, y) + vec2_apply(nj, y, x));
        });
      }));

  add(reg, "hermitian.nijenhuis.tmj", "N_J(X,Y) = J[[X,Y]]^J - [JX,JY]", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric&, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const VecTensor nj = nijenhuis(ac);
        const AlgebroidPtr alg_j = tmj_algebroid(ac);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const Section br_j = bracket(x.with_algebroid(alg_j), y.with_algebroid(alg_j))
                                   .with_algebroid(fx.alg);
          const Section rhs =
              ac.apply(br_j) - bracket(ac.apply(x), ac.apply(y));
          return comps_of(vec2_apply(nj, x, y) - rhs);
        });
      }));

  add(reg, "hermitian.tmj.leibniz", "[[X, fY]]^J = f [[X,Y]]^J + (JX)(f) Y",
      Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric&, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const AlgebroidPtr alg_j = tmj_algebroid(ac);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const Section xj = x.with_algebroid(alg_j), yj = y.with_algebroid(alg_j);
          const Section lhs = bracket(xj, f * yj);
          const Section rhs = f * bracket(xj, yj) +
                              anchor_apply(ac.apply(x), f) * yj;
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.tmj.lie_when_integrable",
      "N_J = 0 implies the Jacobiator of [[.,.]]^J vanishes", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric&, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        std::mt19937_64 rng(mix_seed(pr.seed, res.id));
        const Points pts = sample_points(fx, pr, rng);
        const VecTensor nj = nijenhuis(ac);
        Scan hypothesis;
        for (const auto& p : pts) {
          EvalCache cache(p);
          hypothesis.add(sup_fields(cache, nj.comps()), p);
        }
        if (hypothesis.max > pr.tol) {
          res.status = CheckStatus::kHypothesisNotMet;
          res.max_residual = hypothesis.max;
          res.at_point = hypothesis.at;
          res.note = "J is not integrable here";
          return;
        }
        const AlgebroidPtr alg_j = tmj_algebroid(ac);
        Scan scan;
        for (int t = 0; t < 3; ++t) {
          const Section x = random_section(rng, alg_j), y = random_section(rng, alg_j),
                        z = random_section(rng, alg_j);
          const auto comps = comps_of(jacobiator(x, y, z));
          for (const auto& p : pts) {
            EvalCache cache(p);
            scan.add(sup_fields(cache, comps), p);
          }
        }
        finish(res, scan, pr.tol);
      }));

  add(reg, "hermitian.d_j.function", "d^J f = (d^a f) ∘ J", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric&, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const AlgebroidPtr alg_j = tmj_algebroid(ac);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const CoTensor lhs = d_a_scalar(alg_j, f).with_algebroid(fx.alg);
          const CoTensor rhs = compose_endo(d_a_scalar(fx.alg, f), ac);
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.lie_j.expansion",
      "L^J_X Yb = L^a_{JX} Yb + L^a_X (JY)b + (L^a_X Yb) ∘ J", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const TmjContext ctx = make_tmj_context(m, ac);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const CoTensor yb = flat(m, y);
          const CoTensor lhs =
              lie_derivative(x.with_algebroid(ctx.alg_j), yb.with_algebroid(ctx.alg_j))
                  .with_algebroid(fx.alg);
          const CoTensor rhs = lie_derivative(ac.apply(x), yb) +
                               lie_derivative(x, flat(m, ac.apply(y))) +
                               compose_endo(lie_derivative(x, yb), ac);
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.pairing.skew", "d^a(g(JX,Y)) + d^a(g(X,JY)) = 0", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const CoTensor lhs = d_a_scalar(fx.alg, g_of(m, ac.apply(x), y)) +
                               d_a_scalar(fx.alg, g_of(m, x, ac.apply(y)));
          return lhs.comps();
        });
      }));

  add(reg, "hermitian.symbracket_j.relation",
      "<X:Y>^J = <JX:Y> + <X:JY> + sharp((<X:Y>)b ∘ J)", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const TmjContext ctx = make_tmj_context(m, ac);
        std::mt19937_64 rng(mix_seed(pr.seed, res.id));
        const Points pts = sample_points(fx, pr, rng);
        Scan scan;
        for (int t = 0; t < 3; ++t) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          for (const auto& p : pts)
            scan.add(sym_bracket_J_relation(ctx, m, ac, x, y, p), p);
        }
        finish(res, scan, pr.tol);
      }));

  add(reg, "hermitian.p.leibniz",
      "P(X, fY) = f P(X,Y) + rho(X)(f) Y + rho(JX)(f) JY", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric&, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        auto p_op = p_operator(fx.alg, ac);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const Section lhs = p_op(x, f * y);
          const Section rhs = f * p_op(x, y) + anchor_apply(x, f) * y +
                              anchor_apply(ac.apply(x), f) * ac.apply(y);
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.q.leibniz",
      "Q(X, fY) = f Q(X,Y) + rho(X)(f) Y - rho(JX)(f) JY", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const SymBracket sb = sym_bracket_s(m);
        auto q_op = q_operator(sb, ac);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          const Section lhs = q_op(x, f * y);
          const Section rhs = f * q_op(x, y) + anchor_apply(x, f) * y -
                              anchor_apply(ac.apply(x), f) * ac.apply(y);
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.pq.bracket",
      "(P+Q)/2 satisfies the symmetric-bracket Leibniz rule", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const SymBracket sb = sym_bracket_s(m);
        auto p_op = p_operator(fx.alg, ac);
        auto q_op = q_operator(sb, ac);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const ScalarField f = random_polynomial(rng, fx.alg->base_dim());
          auto half_pq = [&](const Section& a, const Section& b) {
            return 0.5 * (p_op(a, b) + q_op(a, b));
          };
          const Section lhs = half_pq(x, f * y);
          const Section rhs = f * half_pq(x, y) + anchor_apply(x, f) * y;
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.pq.corollary",
      "(P+Q)/2 for rho = id and the Levi-Civita product equals"
      " -1/2 J([X,JY] + [Y,JX] + sharp(L^a_X (JY)b + L^a_Y (JX)b + L^a_{JX} Yb + L^a_{JY} Xb))",
      Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const SymBracket sb = sym_bracket_s(m);
        auto p_op = p_operator(fx.alg, ac);
        auto q_op = q_operator(sb, ac);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const Section jx = ac.apply(x), jy = ac.apply(y);
          const Section lhs = 0.5 * (p_op(x, y) + q_op(x, y));
          const CoTensor arg = lie_derivative(x, flat(m, jy)) +
                               lie_derivative(y, flat(m, jx)) +
                               lie_derivative(jx, flat(m, y)) +
                               lie_derivative(jy, flat(m, x));
          const Section rhs =
              -0.5 * ac.apply(bracket(x, jy) + bracket(y, jx) + sharp(m, arg));
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.nabla_j.via_bracket",
      "nabla^J_X Y = -1/2 J([X,JY] + <X:JY>)", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection nj = nabla_j(lc, ac);
        const SymBracket sp = symmetric_product(lc);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const Section jy = ac.apply(y);
          const Section lhs = covariant_derivative(nj, x, y);
          const Section rhs = -0.5 * ac.apply(bracket(x, jy) + sp.apply(x, jy));
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.nabla_j.metric", "(nabla^J g)(X,Y,Z) = (nabla g)(X,JY,JZ)",
      Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection nj = nabla_j(lc, ac);
        const CoTensor dg = covariant_differential(lc, m.tensor());
        const CoTensor dgj = covariant_differential(nj, m.tensor());
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg),
                        z = random_section(rng, fx.alg);
          const Section lhs_args[3] = {x, y, z};
          const Section rhs_args[3] = {x, ac.apply(y), ac.apply(z)};
          std::vector<ScalarField> comps = {dgj(std::span<const Section>(lhs_args)) -
                                            dg(std::span<const Section>(rhs_args))};
          return comps;
        });
      }));

  add(reg, "hermitian.nabla_j.j", "nabla^J J = -nabla J", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection nj = nabla_j(lc, ac);
        std::vector<ScalarField> comps;
        for (int i = 0; i < fx.alg->rank(); ++i) {
          const VecTensor a = endo_covariant_derivative(nj, i, ac.endo());
          const VecTensor b = endo_covariant_derivative(lc, i, ac.endo());
          const auto d = comps_of(a + b);
          comps.insert(comps.end(), d.begin(), d.end());
        }
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64&, int) { return comps; });
      }));

  add(reg, "hermitian.nabla_bar.metric", "bar-nabla g = 0", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection bar = first_canonical(lc, nabla_j(lc, ac));
        const auto comps = comps_of(covariant_differential(bar, m.tensor()));
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64&, int) { return comps; });
      }));

  add(reg, "hermitian.nabla_bar.j", "bar-nabla J = 0", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection bar = first_canonical(lc, nabla_j(lc, ac));
        std::vector<ScalarField> comps;
        for (int i = 0; i < fx.alg->rank(); ++i) {
          const auto d = comps_of(endo_covariant_derivative(bar, i, ac.endo()));
          comps.insert(comps.end(), d.begin(), d.end());
        }
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64&, int) { return comps; });
      }));

  add(reg, "hermitian.nabla_bar.torsion", "T^{bar-nabla} = 1/2 T^{nabla^J}",
      Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection nj = nabla_j(lc, ac);
        const Connection bar = first_canonical(lc, nj);
        const auto comps = comps_of(torsion(bar) - 0.5 * torsion(nj));
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64&, int) { return comps; });
      }));

  add(reg, "hermitian.dsj.brackets",
      "J((d^s_nabla J)(X,Y)) = <X:Y>^nabla - <X:Y>^{nabla^J}", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection nj = nabla_j(lc, ac);
        const VecTensor dsj = d_nabla_sym(lc, ac.endo());
        const SymBracket sp_lc = symmetric_product(lc);
        const SymBracket sp_nj = symmetric_product(nj);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const Section lhs = ac.apply(vec2_apply(dsj, x, y));
          const Section rhs = sp_lc.apply(x, y) - sp_nj.apply(x, y);
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.nabla_bar.bracket",
      "<X:Y>^{bar-nabla} = <X:Y>^nabla - 1/2 J((d^s_nabla J)(X,Y))", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection bar = first_canonical(lc, nabla_j(lc, ac));
        const VecTensor dsj = d_nabla_sym(lc, ac.endo());
        const SymBracket sp_lc = symmetric_product(lc);
        const SymBracket sp_bar = symmetric_product(bar);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64& rng, int) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          const Section lhs = sp_bar.apply(x, y);
          const Section rhs =
              sp_lc.apply(x, y) - 0.5 * ac.apply(vec2_apply(dsj, x, y));
          return comps_of(lhs - rhs);
        });
      }));

  add(reg, "hermitian.torsion1", "T^{nabla^J} = -J ∘ (d^a_nabla J)", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        const Connection nj = nabla_j(lc, ac);
        const VecTensor lhs = torsion(nj);
        const VecTensor rhs = endo_compose_vec2(ac.endo(), d_nabla_alt(lc, ac.endo()));
        const auto comps = comps_of(lhs + rhs);
        scan_tuples(fx, pr, res.id, res, [&](std::mt19937_64&, int) { return comps; });
      }));

  add(reg, "hermitian.torsion2",
      "2 T^{nabla^J}(X,Y) = -N_J(X,Y) + (d^s_nabla J)(X,JY) - (d^s_nabla J)(JX,Y)",
      Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        std::mt19937_64 rng(mix_seed(pr.seed, res.id));
        const Points pts = sample_points(fx, pr, rng);
        Scan scan;
        for (int t = 0; t < 3; ++t) {
          const Section x = random_section(rng, fx.alg), y = random_section(rng, fx.alg);
          for (const auto& p : pts)
            scan.add(torsion_identity_residual(lc, ac, x, y, p), p);
        }
        finish(res, scan, pr.tol);
      }));

  add(reg, "hermitian.nearly_kahler.bar_formula",
      "d^s_nabla J = 0 implies bar-nabla = nabla - 1/8 N_J", Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        std::mt19937_64 rng(mix_seed(pr.seed, res.id));
        const Points pts = sample_points(fx, pr, rng);
        const double nk = nearly_kahler_residual(lc, ac, pts);
        if (nk > pr.tol) {
          res.status = CheckStatus::kHypothesisNotMet;
          res.max_residual = nk;
          res.note = "structure is not nearly Kahler here";
          return;
        }
        const Connection bar = first_canonical(lc, nabla_j(lc, ac));
        const VecTensor nj_tensor = nijenhuis(ac);
        std::vector<ScalarField> comps;
        const int r = fx.alg->rank();
        for (int k = 0; k < r; ++k)
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
              const int ij[2] = {i, j};
              comps.push_back(bar.gamma(k, i, j) -
                              (lc.gamma(k, i, j) - 0.125 * nj_tensor.comp(k, ij)));
            }
        Scan scan;
        for (const auto& p : pts) {
          EvalCache cache(p);
          scan.add(sup_fields(cache, comps), p);
        }
        finish(res, scan, pr.tol);
      }));

  add(reg, "hermitian.nearly_kahler.bar_skew_torsion",
      "d^s_nabla J = 0 implies the bar-nabla torsion is totally skew-symmetric",
      Suite::kHermitian,
      with_hermitian([](const Fixture& fx, const Metric& m, const AlmostComplex& ac,
                        const SuiteParams& pr, CheckResult& res) {
        const Connection lc = levi_civita(m);
        std::mt19937_64 rng(mix_seed(pr.seed, res.id));
        const Points pts = sample_points(fx, pr, rng);
        const double nk = nearly_kahler_residual(lc, ac, pts);
        if (nk > pr.tol) {
          res.status = CheckStatus::kHypothesisNotMet;
          res.max_residual = nk;
          res.note = "structure is not nearly Kahler here";
          return;
        }
        const Connection bar = first_canonical(lc, nabla_j(lc, ac));
        const CoTensor tg = torsion_3form(m, bar);
        const auto comps = comps_of(tg - alternate(tg));
        Scan scan;
        for (const auto& p : pts) {
          EvalCache cache(p);
          scan.add(sup_fields(cache, comps), p);
        }
        finish(res, scan, pr.tol);
      }));

  std::sort(reg.begin(), reg.end(),
            [](const IdentityCheck& a, const IdentityCheck& b) { return a.id < b.id; });
  return reg;
}

}  // namespace

const std::vector<IdentityCheck>& check_registry() {
  static const std::vector<IdentityCheck> registry = build_registry();
  return registry;
}

Report run_suite(const Fixture& fx, Suite suite, const SuiteParams& params) {
  Report report;
  report.fixture = fx.name;
  report.suite = suite_name(suite);
  report.seed = params.seed;
  report.points = params.points;
  report.tol = params.tol;

  for (const IdentityCheck& check : check_registry()) {
    if (suite != Suite::kAll && check.suite != suite) continue;
    CheckResult res;
    res.id = check.id;
    res.anchor = check.anchor;
    SuiteParams effective = params;
    if (!(effective.tol > 0.0)) effective.tol = check.default_tol;
    try {
      check.run(fx, effective, res);
    } catch (const Error& e) {
      res.status = CheckStatus::kFail;
      res.max_residual = std::numeric_limits<double>::infinity();
      res.note = e.what();
    }
    report.checks.push_back(std::move(res));
  }
  return report;
}

}  // namespace algc
