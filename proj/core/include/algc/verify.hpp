// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

#include "algc/fixtures.hpp"
#include "algc/sampling.hpp"

namespace algc {

enum class Suite { kCore, kMetric, kHermitian, kAll };

Suite parse_suite(const std::string& name);
std::string suite_name(Suite suite);

enum class CheckStatus { kPass, kFail, kSkipped, kHypothesisNotMet };
std::string status_name(CheckStatus status);

struct CheckResult {
  std::string id;
  std::string anchor;
  double max_residual = 0.0;
  std::vector<double> at_point;
  CheckStatus status = CheckStatus::kSkipped;
  std::string note;  // console diagnostics; not part of the report schema
};

struct SuiteParams {
  int points = 20;
  std::uint64_t seed = 42;
  double tol = 1e-7;
};

struct Report {
  std::string fixture;
  std::string suite;
  std::uint64_t seed = 42;
  int points = 20;
  double tol = 1e-7;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::string to_json() const;
};

/// A named residual check for one identity. `run` samples its own points
/// and random data from a stream derived from (params.seed, id), so results
/// do not depend on execution order and checks can run concurrently.
struct IdentityCheck {
  std::string id;
  std::string anchor;  // plain-notation statement of the identity
  Suite suite;
  double default_tol = 1e-8;
  std::function<void(const Fixture&, const SuiteParams&, CheckResult&)> run;
};

/// All registered checks, ordered by id.
const std::vector<IdentityCheck>& check_registry();

/// Run every check of the suite against the fixture. Checks whose required
/// structure is absent report "skipped"; gated checks whose hypothesis fails
/// report "hypothesis-not-met". Deterministic for fixed inputs.
Report run_suite(const Fixture& fx, Suite suite, const SuiteParams& params = {});

}  // namespace algc
