#pragma once

#include <cstdint>
#include <string>

#include "json_io.hpp"

namespace fermifold::cli {

/// Defaults for every scenario-overridable knob.
struct Settings {
  int oracle_ceiling = kDefaultOracleCeiling;
  double tolerance = 1e-12;
  double lie_tolerance = 1e-4;
  std::size_t rewrite_limit = kDefaultRewriteLimit;
  int quadrature_order = kDefaultQuadratureOrder;
  double flow_time = kDefaultFlowTime;
};

/// Overlays the recognized keys of `j` onto `base`; unknown keys are a schema error.
Settings merge_settings(Settings base, const json& j, const std::string& where);

struct RunOptions {
  unsigned jobs = 1;
  std::uint64_t seed = 1;
};

struct RunOutcome {
  json report;
  bool all_ok = true;
};

/// Validates the scenario structure (throws SchemaError) and executes every task.
RunOutcome run_scenario(const json& scenario, const RunOptions& options);

}  // namespace fermifold::cli
