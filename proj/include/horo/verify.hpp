#pragma once

// The verification suite: named numerical checks with a measured value, a
// threshold and a pass flag, grouped by module.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace horo {

struct Check {
  std::string name;
  std::string anchor;  // the property being checked
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

enum class Suite { Geometry, Profiles, Operator, Dirichlet, All };

/// Throws InvalidArgument for an unknown name.
Suite parse_suite(const std::string& name);

struct VerifyOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

std::vector<Check> run_suite(Suite s, const VerifyOptions& opts = {});

/// Re-reads a profile CSV (with its metadata) and recomputes its residual.
std::vector<Check> curve_checks(const std::filesystem::path& csv);

/// { "checks": [{name, anchor, value, threshold, pass}], "pass": bool }
nlohmann::ordered_json emit_report(const std::vector<Check>& checks);

}  // namespace horo
