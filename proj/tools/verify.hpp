#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hopsign::tools {

struct CheckResult {
  std::string check;
  bool pass = false;
  double max_error = 0.0;
  double runtime_ms = 0.0;
  std::string detail;
};

struct VerifyOptions {
  int r_max = 10;
  double tol = 1e-6;       // numeric suites (spectral distances)
  long inject_fault = 0;   // flip c~ at this index when > 0
  long p_table_rows = 1024;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt);

nlohmann::json to_json(const std::vector<CheckResult>& results);
std::string to_table(const std::vector<CheckResult>& results);

}  // namespace hopsign::tools
