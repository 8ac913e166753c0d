#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace dmojc::validate {

/// Grid sizes of the validation run. The defaults are the gate settings;
/// they can be reduced for quick smoke runs.
struct ValidationConfig {
  int nmax = 24;
  double t_max = 30.0;
  int t_steps = 3001;
  int random_trials = 200;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_error = 0.0;
  double tolerance = 0.0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  double max_state_error = 0.0;
  double max_spectral_error = 0.0;
  double invariant_drift = 0.0;

  bool pass() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs every check of the validation grid in a fixed order. Deterministic:
/// identical configs produce value-identical reports.
ValidationReport run_validation(const ValidationConfig& config = {});

/// JSON form of the report in the { config, rows, checks } envelope, plus a
/// summary object. Contains no timestamps, so consecutive runs serialize
/// byte-identically.
nlohmann::ordered_json report_to_json(const ValidationReport& report,
                                      const ValidationConfig& config);

} // namespace dmojc::validate
