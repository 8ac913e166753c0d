#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dmojc/qnums.hpp"

namespace dmojc::io {

using json = nlohmann::ordered_json;

/// Shared configuration of every CLI command; defaults match the
/// resonant-model study grid (t in [0, 30], 3001 samples, nmax 24).
struct RunConfig {
  int dim = 1;
  std::string branch = "finite";
  double j = 0.5;
  double eta = 1.0;
  double chi = 1.0;
  double mc2 = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double t_max = 30.0;
  int t_steps = 3001;
  int nmax = 24;
  int max_n = 8;
  std::string format = "csv"; // csv | json | svg
  std::string output = "-";   // "-" writes to stdout

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;

  Dimensionality dimensionality() const;
  BranchD3 branch_value() const;
  ModelSpec simple_spec() const;
  ModelSpec extended_spec() const;

  json to_json() const;
  /// Overwrites fields present in the object; unknown keys are rejected.
  void apply_json(const json& j);
};

/// Shortest 17-significant-digit representation; round-trips IEEE doubles.
std::string format_g17(double value);

/// One CSV document: header plus pre-formatted rows, '\n' line endings.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

/// The uniform JSON envelope { config, rows, checks }.
json make_envelope(json config, json rows, json checks);

/// Minimal line plot: axes, one polyline per series, labels.
struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<Series>& series);

/// Writes to the given path, or to stdout when path is "-".
void write_text(const std::string& path, const std::string& content);

} // namespace dmojc::io
