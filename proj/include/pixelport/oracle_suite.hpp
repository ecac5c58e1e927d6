#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pixelport {

/// One row of the Fock-oracle verification table. A row passes when
/// value <= tolerance.
struct OracleCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct OracleSuiteOptions {
  int dim = 0;               // 0 = per-check defaults (30 for one/two-mode checks)
  int photocurrent_dim = 0;  // 0 = 10, or `dim` when that is forced
  std::map<std::string, double> tolerance_overrides;
  std::uint64_t seed = 20240611;
  int threads = 0;
};

/// Default tolerance for every row name, before overrides.
const std::map<std::string, double>& default_oracle_tolerances();

std::vector<OracleCheck> run_oracle_suite(const OracleSuiteOptions& options = {});

bool all_passed(const std::vector<OracleCheck>& checks);

}  // namespace pixelport
