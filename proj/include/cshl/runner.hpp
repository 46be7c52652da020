#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cshl/config.hpp"
#include "cshl/state.hpp"

namespace cshl {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double limit = 0.0;
};

struct RunReport {
  std::vector<CheckResult> checks;
  nlohmann::ordered_json summary;
  bool ok() const noexcept;
};

/// Scenario data made compatible with the constraints, optionally moved to the
/// normalized gauge frame.
GaugeState initial_state(const RunConfig& cfg);

/// Evolves the configured scenario and writes monitors.csv, summary.json and
/// config.toml into cfg.output_dir. StepUnstable propagates after summary.json
/// has recorded the failure.
RunReport run_simulation(const RunConfig& cfg, std::ostream& log);

/// thresholds.csv (b, b_prime, eps, threshold, scan_minimal_s) and
/// product_law.csv (s, b, b_prime, holds, binding_condition).
RunReport run_norm_scan(const RunConfig& cfg, std::ostream& log);

/// Constraint residuals of the initial data only; writes check.json.
RunReport run_check_data(const RunConfig& cfg, std::ostream& log);

/// Inequality ratios at the initial data and the angle estimate; writes probe.json.
RunReport run_probe(const RunConfig& cfg, std::ostream& log);

}  // namespace cshl
