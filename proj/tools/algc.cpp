// SPDX-License-Identifier: Apache-2.0
//
// algc — operator calculus and identity suites for skew-symmetric algebroids
// described by JSON fixture files.
//
//   algc check FILE [--suite core|metric|hermitian|all] [--points N]
//                   [--seed S] [--tol T] [--json PATH]
//   algc lc FILE --point CSV
//   algc eval FILE --op NAME --args "X,Y" --point CSV
//
// Exit codes: 0 all checks pass, 1 at least one check fails, 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "algc/fixture_io.hpp"
#include "algc/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

std::vector<double> parse_point_csv(const std::string& csv, int dim) {
  std::vector<double> p;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      p.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw algc::Error("invalid point component '" + item + "'");
    }
  }
  if (static_cast<int>(p.size()) != dim)
    throw algc::Error("point has " + std::to_string(p.size()) + " components, expected " +
                      std::to_string(dim));
  return p;
}

/// Frame-slot label: coordinate names when the frame is the coordinate
/// frame, 1-based numbers otherwise.
std::string frame_label(const algc::Algebroid& alg, int i) {
  if (alg.rank() == alg.base_dim()) return alg.coords()[i];
  return std::to_string(i + 1);
}

int run_check(const std::string& file, const std::string& suite_str, int points,
              std::uint64_t seed, double tol, const std::string& json_path) {
  const algc::Fixture fixture = algc::load_fixture_file(file);
  const algc::Suite suite = algc::parse_suite(suite_str);
  algc::SuiteParams params;
  params.points = points;
  params.seed = seed;
  params.tol = tol;

  const algc::Report report = algc::run_suite(fixture, suite, params);

  std::printf("fixture %s | suite %s | points %d | seed %llu | tol %g\n",
              report.fixture.c_str(), report.suite.c_str(), report.points,
              static_cast<unsigned long long>(report.seed), report.tol);
  for (const auto& c : report.checks) {
    std::printf("%-19s %-42s %12.3e  %s\n", algc::status_name(c.status).c_str(),
                c.id.c_str(), c.max_residual, c.anchor.c_str());
    if (!c.note.empty()) std::printf("%19s   note: %s\n", "", c.note.c_str());
  }
  int passed = 0, failed = 0, skipped = 0, gated = 0;
  for (const auto& c : report.checks) {
    switch (c.status) {
      case algc::CheckStatus::kPass: ++passed; break;
      case algc::CheckStatus::kFail: ++failed; break;
      case algc::CheckStatus::kSkipped: ++skipped; break;
      case algc::CheckStatus::kHypothesisNotMet: ++gated; break;
    }
  }
  std::printf("summary: %d passed, %d failed, %d skipped, %d hypothesis-not-met\n", passed,
              failed, skipped, gated);

  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw algc::Error("cannot write report to '" + json_path + "'");
    out << report.to_json();
  }
  return report.all_passed() ? kExitPass : kExitFail;
}

int run_lc(const std::string& file, const std::string& point_csv) {
  const algc::Fixture fx = algc::load_fixture_file(file);
  if (!fx.metric) throw algc::Error("fixture '" + fx.name + "' has no metric");
  const algc::Algebroid& alg = *fx.alg;
  const std::vector<double> p = parse_point_csv(point_csv, alg.base_dim());
  if (!alg.box().contains(p)) throw algc::Error("point is outside the fixture's domain box");

  const algc::Connection lc = algc::levi_civita(*fx.metric);
  const algc::Connection oracle = algc::koszul_oracle(*fx.metric);

  algc::EvalCache cache(p);
  double discrepancy = 0.0;
  std::printf("Levi-Civita coefficients at the requested point (formula | oracle):\n");
  for (int k = 0; k < alg.rank(); ++k)
    for (int i = 0; i < alg.rank(); ++i)
      for (int j = 0; j < alg.rank(); ++j) {
        const double a = cache.value(lc.gamma(k, i, j));
        const double b = cache.value(oracle.gamma(k, i, j));
        discrepancy = std::max(discrepancy, std::fabs(a - b));
        if (std::fabs(a) < 1e-13 && std::fabs(b) < 1e-13) continue;
        std::printf("  Gamma^%s_{%s%s} = %.12g | %.12g\n", frame_label(alg, k).c_str(),
                    frame_label(alg, i).c_str(), frame_label(alg, j).c_str(), a, b);
      }
  std::printf("max coefficient discrepancy: %.3e\n", discrepancy);
  return kExitPass;
}

int run_eval(const std::string& file, const std::string& op, const std::string& args_csv,
             const std::string& point_csv) {
  const algc::Fixture fx = algc::load_fixture_file(file);
  const algc::Algebroid& alg = *fx.alg;
  const std::vector<double> p = parse_point_csv(point_csv, alg.base_dim());
  if (!alg.box().contains(p)) throw algc::Error("point is outside the fixture's domain box");

  std::vector<algc::Section> args;
  {
    std::stringstream ss(args_csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
      auto it = fx.sections.find(name);
      if (it == fx.sections.end())
        throw algc::Error("unknown section '" + name + "' in fixture '" + fx.name + "'");
      args.push_back(it->second);
    }
  }
  auto need_args = [&](std::size_t count) {
    if (args.size() != count)
      throw algc::Error("operation '" + op + "' needs " + std::to_string(count) +
                        " section arguments");
  };
  auto need_metric = [&]() -> const algc::Metric& {
    if (!fx.metric) throw algc::Error("operation '" + op + "' needs a metric");
    return *fx.metric;
  };
  auto need_complex = [&]() -> const algc::AlmostComplex& {
    if (!fx.complex_structure)
      throw algc::Error("operation '" + op + "' needs an almost complex structure");
    return *fx.complex_structure;
  };

  algc::EvalCache cache(p);
  auto print_section = [&](const algc::Section& s) {
    std::printf("(");
    for (int i = 0; i < s.rank(); ++i)
      std::printf("%s%.12g", i ? ", " : "", cache.value(s.comp(i)));
    std::printf(")\n");
  };

  if (op == "bracket") {
    need_args(2);
    print_section(algc::bracket(args[0], args[1]));
  } else if (op == "symbracket_s") {
    need_args(2);
    print_section(algc::sym_bracket_s(need_metric()).apply(args[0], args[1]));
  } else if (op == "curly_s") {
    need_args(2);
    const algc::Metric& m = need_metric();
    const algc::SymBracket sb = algc::sym_bracket_s(m);
    print_section(algc::curly_bracket_s(m, sb).apply(args[0], args[1]));
  } else if (op == "torsion") {
    need_args(2);
    const algc::Metric& m = need_metric();
    const algc::Connection conn = fx.torsion_form
                                      ? algc::skew_torsion_connection(m, *fx.torsion_form)
                                      : algc::levi_civita(m);
    print_section(algc::vec2_apply(algc::torsion(conn), args[0], args[1]));
  } else if (op == "nijenhuis") {
    need_args(2);
    print_section(algc::vec2_apply(algc::nijenhuis(need_complex()), args[0], args[1]));
  } else if (op == "kahler_form") {
    need_args(2);
    const algc::CoTensor omega = algc::kahler_form(need_metric(), need_complex());
    const algc::Section slots[2] = {args[0], args[1]};
    std::printf("%.12g\n", cache.value(omega(std::span<const algc::Section>(slots))));
  } else if (op == "danabla_s_J") {
    need_args(2);
    const algc::Connection lc = algc::levi_civita(need_metric());
    const algc::VecTensor d = algc::d_nabla_sym(lc, need_complex().endo());
    print_section(algc::vec2_apply(d, args[0], args[1]));
  } else if (op == "nabla_bar") {
    need_args(2);
    const algc::Connection lc = algc::levi_civita(need_metric());
    const algc::Connection bar =
        algc::first_canonical(lc, algc::nabla_j(lc, need_complex()));
    print_section(algc::covariant_derivative(bar, args[0], args[1]));
  } else {
    throw algc::Error("unknown operation '" + op + "'");
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator calculus on skew-symmetric algebroids"};
  app.require_subcommand(1);

  std::string file, suite = "all", json_path, point_csv, op, args_csv;
  int points = 20;
  std::uint64_t seed = 42;
  double tol = 1e-7;

  CLI::App* check = app.add_subcommand("check", "run identity suites against a fixture");
  check->add_option("file", file, "fixture JSON file")->required();
  check->add_option("--suite", suite, "core|metric|hermitian|all")->capture_default_str();
  check->add_option("--points", points, "sample points per check")->capture_default_str();
  check->add_option("--seed", seed, "sampling seed")->capture_default_str();
  check->add_option("--tol", tol, "residual tolerance")->capture_default_str();
  check->add_option("--json", json_path, "write the JSON report to this path");

  CLI::App* lc = app.add_subcommand("lc", "print Levi-Civita coefficients at a point");
  lc->add_option("file", file, "fixture JSON file")->required();
  lc->add_option("--point", point_csv, "comma-separated coordinates")->required();

  CLI::App* ev = app.add_subcommand("eval", "evaluate an operator on named sections");
  ev->add_option("file", file, "fixture JSON file")->required();
  ev->add_option("--op", op,
                 "bracket|symbracket_s|curly_s|torsion|nijenhuis|kahler_form|"
                 "danabla_s_J|nabla_bar")
      ->required();
  ev->add_option("--args", args_csv, "comma-separated section names")->required();
  ev->add_option("--point", point_csv, "comma-separated coordinates")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (check->parsed()) return run_check(file, suite, points, seed, tol, json_path);
    if (lc->parsed()) return run_lc(file, point_csv);
    if (ev->parsed()) return run_eval(file, op, args_csv, point_csv);
  } catch (const algc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
