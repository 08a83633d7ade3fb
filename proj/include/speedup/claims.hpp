#pragma once

#include "speedup/json_io.hpp"

#include <string>
#include <vector>

namespace speedup {

struct ClaimResult {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// Claims of the manifest whose id matches the shell-style `pattern`.
std::vector<Json> select_claims(const Json& manifest, const std::string& pattern);

/// Evaluates one manifest entry. Errors inside the check count as failures.
ClaimResult run_claim(const Json& claim, int threads = 1);

/// Default manifest path baked in at build time.
std::string default_claims_path();

}  // namespace speedup
