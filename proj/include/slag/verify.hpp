#pragma once

#include "slag/config.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace slag {

struct VerifyOptions {
  int res = 128;      // identity-suite resolution
  int pde_res = 256;  // constant-recovery resolution
  int probes = 10000;
  unsigned seed = 1;
  bool sabotage = false;  // perturb the group generators (negative control)
  std::vector<int> ratio_res;  // pairs for refinement tables, e.g. {64, 128}
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  nlohmann::json json;
  bool all_pass = false;
};

// Runs the full acceptance suite (criteria 1-9 twice for the determinism
// criterion 10) and builds the consolidated JSON report.
VerifyReport run_verify(const VerifyOptions& opt, const RunConfig& config);

}  // namespace slag
