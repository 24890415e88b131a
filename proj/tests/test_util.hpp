// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "algc/fixtures.hpp"

namespace algc::testutil {

inline double value_at(const ScalarField& f, const std::vector<double>& p) {
  EvalCache cache(p);
  return cache.value(f);
}

inline double sup_comps_at(const std::vector<ScalarField>& comps,
                           const std::vector<double>& p) {
  EvalCache cache(p);
  double m = 0.0;
  for (const auto& f : comps) m = std::max(m, std::fabs(cache.value(f)));
  return m;
}

/// Largest component magnitude over `count` seeded samples of the box.
inline double sup_comps_sampled(const std::vector<ScalarField>& comps, const DomainBox& box,
                                int count = 20, std::uint64_t seed = 42) {
  std::mt19937_64 rng(seed);
  double m = 0.0;
  for (int i = 0; i < count; ++i)
    m = std::max(m, sup_comps_at(comps, box.sample(rng)));
  return m;
}

inline std::string fixtures_dir() {
  const char* env = std::getenv("ALGC_FIXTURES");
  return env ? env : "fixtures";
}

inline std::string algc_binary() {
  const char* env = std::getenv("ALGC_BIN");
  return env ? env : "";
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // combined stdout + stderr
};

/// Run a shell command, capturing combined output and the exit code.
RunResult run_command(const std::string& command);

/// Create a unique temporary file and return its path.
std::string temp_path(const std::string& suffix = "");

}  // namespace algc::testutil
